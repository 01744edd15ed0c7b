#pragma once

#include "alpharep/errors.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace alpharep {

/// Plain undirected graph with 1-based vertex labels.  Parallel edges
/// and self-loops are representable; consumers that need a restricted
/// class validate on their own.
struct Graph {
    std::size_t vertices = 0;
    std::vector<std::pair<int, int>> edges;

    void check_endpoints() const {
        for (auto [u, v] : edges)
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > vertices ||
                static_cast<std::size_t>(v) > vertices)
                throw input_error("edge endpoint out of range");
    }

    std::vector<int> degrees() const {
        std::vector<int> deg(vertices, 0);
        for (auto [u, v] : edges) {
            ++deg[u - 1];
            ++deg[v - 1];
        }
        return deg;
    }

    bool is_simple() const {
        std::vector<std::pair<int, int>> seen;
        for (auto [u, v] : edges) {
            if (u == v) return false;
            auto key = std::minmax(u, v);
            std::pair<int, int> k{key.first, key.second};
            for (auto& s : seen)
                if (s == k) return false;
            seen.push_back(k);
        }
        return true;
    }

    bool is_connected() const {
        if (vertices == 0) return true;
        std::vector<char> vis(vertices, 0);
        std::vector<int> stack{1};
        vis[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [a, b] : edges) {
                int w = -1;
                if (a == v) w = b;
                else if (b == v) w = a;
                if (w > 0 && !vis[w - 1]) {
                    vis[w - 1] = 1;
                    stack.push_back(w);
                }
            }
        }
        for (char c : vis)
            if (!c) return false;
        return true;
    }

    /// True when removing some single edge disconnects the graph.  Sized
    /// for the small instances this project works with.
    bool has_bridge() const {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (edges[e].first == edges[e].second) continue;
            Graph g{vertices, {}};
            for (std::size_t i = 0; i < edges.size(); ++i)
                if (i != e) g.edges.push_back(edges[i]);
            if (!g.is_connected()) return true;
        }
        return false;
    }
};

} // namespace alpharep

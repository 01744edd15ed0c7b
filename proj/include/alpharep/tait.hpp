#pragma once

#include "alpharep/evaluate.hpp"
#include "alpharep/graph.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace alpharep {

/// Spin assignment: one value in {+1, -1} per vertex.
using SpinVector = std::vector<int>;

/// A simple biconnected planar cubic graph together with its face
/// structure.  Faces come either from a rotation system (cyclic edge
/// order per vertex, traced here) or are supplied directly as vertex
/// cycles; both paths are checked against Euler's formula, so an input
/// that is not a planar embedding is rejected.
class CubicPlanarGraph {
public:
    /// rotation[v-1] lists the three incident edge indices (0-based into
    /// g.edges) of vertex v in cyclic order.
    static CubicPlanarGraph from_rotation(const Graph& g,
                                          const std::vector<std::vector<int>>& rotation) {
        validate_class(g);
        if (rotation.size() != g.vertices)
            throw input_error("rotation must list every vertex");
        for (std::size_t v = 0; v < g.vertices; ++v) {
            if (rotation[v].size() != 3)
                throw input_error("rotation at a cubic vertex must list 3 edges");
            for (int e : rotation[v]) {
                if (e < 0 || static_cast<std::size_t>(e) >= g.edges.size())
                    throw input_error("rotation refers to an unknown edge");
                auto [a, b] = g.edges[e];
                if (a != static_cast<int>(v + 1) && b != static_cast<int>(v + 1))
                    throw input_error("rotation lists an edge not incident to its vertex");
            }
            if (rotation[v][0] == rotation[v][1] || rotation[v][0] == rotation[v][2] ||
                rotation[v][1] == rotation[v][2])
                throw input_error("rotation repeats an edge");
        }

        // trace directed-edge orbits: a dart is (edge, direction)
        const std::size_t darts = 2 * g.edges.size();
        auto head = [&](std::size_t d) {
            return d & 1 ? g.edges[d >> 1].first : g.edges[d >> 1].second;
        };
        auto next = [&](std::size_t d) {
            int h = head(d);
            const auto& rot = rotation[h - 1];
            std::size_t pos = 0;
            while (rot[pos] != static_cast<int>(d >> 1)) ++pos;
            int e2 = rot[(pos + 1) % 3];
            return 2 * static_cast<std::size_t>(e2) + (g.edges[e2].first == h ? 0 : 1);
        };
        std::vector<int> dart_face(darts, -1);
        std::vector<std::vector<int>> faces;
        for (std::size_t d0 = 0; d0 < darts; ++d0) {
            if (dart_face[d0] != -1) continue;
            std::vector<int> cycle;
            std::size_t d = d0;
            do {
                dart_face[d] = static_cast<int>(faces.size());
                cycle.push_back(head(d));
                d = next(d);
            } while (d != d0);
            faces.push_back(std::move(cycle));
        }
        if (static_cast<long long>(g.vertices) - static_cast<long long>(g.edges.size()) +
                static_cast<long long>(faces.size()) != 2)
            throw inapplicable_error("rotation system fails Euler's formula, not a planar embedding");
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            if (dart_face[2 * e] == dart_face[2 * e + 1])
                throw inapplicable_error("an edge borders a single face");
        return CubicPlanarGraph(g, std::move(faces));
    }

    /// Faces supplied directly as vertex cycles; tracing is skipped but
    /// the cover and Euler checks still run.
    static CubicPlanarGraph from_faces(const Graph& g,
                                       const std::vector<std::vector<int>>& cycles) {
        validate_class(g);
        if (static_cast<long long>(g.vertices) - static_cast<long long>(g.edges.size()) +
                static_cast<long long>(cycles.size()) != 2)
            throw inapplicable_error("face list fails Euler's formula");
        std::vector<int> edge_cover(g.edges.size(), 0);
        for (const auto& cyc : cycles) {
            if (cyc.size() < 3) throw input_error("a face cycle needs at least 3 vertices");
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
                std::size_t e = g.edges.size();
                for (std::size_t j = 0; j < g.edges.size(); ++j)
                    if ((g.edges[j].first == u && g.edges[j].second == v) ||
                        (g.edges[j].first == v && g.edges[j].second == u)) {
                        e = j;
                        break;
                    }
                if (e == g.edges.size())
                    throw input_error("face cycle uses a non-edge");
                ++edge_cover[e];
            }
        }
        for (int c : edge_cover)
            if (c != 2) throw inapplicable_error("every edge must lie on exactly 2 faces");
        return CubicPlanarGraph(g, cycles);
    }

    const Graph& graph() const { return g_; }
    std::size_t face_count() const { return faces_.size(); }

    /// Vertex sets per face, sorted ascending (face boundaries in this
    /// graph class are simple cycles).
    const std::vector<std::vector<int>>& faces() const { return faces_; }

    const FieldCtx& f3() const { return f3_; }

    /// Face-by-vertex 0/1 incidence over F_3.
    const FqMatrix& face_incidence() const { return incidence_; }

    /// The three faces around a vertex.
    const std::array<std::size_t, 3>& faces_at(std::size_t v) const {
        return vertex_faces_[v];
    }

private:
    CubicPlanarGraph(const Graph& g, std::vector<std::vector<int>> cycles)
        : g_(g), f3_(3, 1), incidence_(f3_, 0, 0) {
        for (auto& cyc : cycles) {
            std::vector<int> sorted = cyc;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 1; i < sorted.size(); ++i)
                if (sorted[i] == sorted[i - 1])
                    throw inapplicable_error("face boundary repeats a vertex");
            faces_.push_back(std::move(sorted));
        }
        incidence_ = FqMatrix(f3_, faces_.size(), g_.vertices);
        std::vector<std::vector<std::size_t>> at(g_.vertices);
        for (std::size_t i = 0; i < faces_.size(); ++i)
            for (int v : faces_[i]) {
                incidence_.at(i, v - 1) = f3_.one();
                at[v - 1].push_back(i);
            }
        for (std::size_t v = 0; v < g_.vertices; ++v) {
            if (at[v].size() != 3)
                throw inapplicable_error("a vertex of a cubic map lies on exactly 3 faces");
            vertex_faces_.push_back({at[v][0], at[v][1], at[v][2]});
        }
    }

    static void validate_class(const Graph& g) {
        g.check_endpoints();
        if (!g.is_simple())
            throw inapplicable_error("the graph must be simple (no loops or parallel edges)");
        for (int d : g.degrees())
            if (d != 3) throw inapplicable_error("every vertex must have degree 3");
        if (g.vertices < 4 || g.vertices % 2 != 0)
            throw inapplicable_error("a cubic graph has an even vertex count >= 4");
        if (!g.is_connected()) throw inapplicable_error("the graph must be connected");
        if (g.has_bridge())
            throw inapplicable_error("the graph must be bridge-free (biconnected)");
    }

    Graph g_;
    FieldCtx f3_;
    std::vector<std::vector<int>> faces_;
    FqMatrix incidence_;
    std::vector<std::array<std::size_t, 3>> vertex_faces_;
};

inline AlphaVector spins_to_alpha(const CubicPlanarGraph& g, const SpinVector& spins) {
    if (spins.size() != g.graph().vertices)
        throw input_error("spin vector length must equal the vertex count");
    std::vector<FqElem> v;
    for (int s : spins) {
        if (s != 1 && s != -1) throw input_error("spins take values +1 or -1");
        v.push_back(g.f3().from_int(s));
    }
    return AlphaVector(g.f3(), std::move(v));
}

/// Face matrix FM(sigma): entry (i, j) sums the spins of the vertices
/// lying on both face i and face j (the diagonal sums a face's own
/// vertices).  Equals U diag(sigma) U^T for the face-vertex incidence U,
/// hence symmetric with zero row sums over F_3.
inline FqMatrix face_matrix(const CubicPlanarGraph& g, const SpinVector& spins) {
    return laplacian(g.face_incidence(), spins_to_alpha(g, spins));
}

/// Number of proper 3-edge-colorings, by backtracking over edges.
inline long long tait_count_direct(const CubicPlanarGraph& g) {
    const auto& edges = g.graph().edges;
    std::vector<unsigned> used(g.graph().vertices, 0); // bitmask of colors at a vertex
    long long count = 0;
    auto rec = [&](auto&& self, std::size_t e) -> void {
        if (e == edges.size()) {
            ++count;
            return;
        }
        auto [u, v] = edges[e];
        for (unsigned c = 0; c < 3; ++c) {
            unsigned bit = 1u << c;
            if ((used[u - 1] | used[v - 1]) & bit) continue;
            used[u - 1] |= bit;
            used[v - 1] |= bit;
            self(self, e + 1);
            used[u - 1] &= ~bit;
            used[v - 1] &= ~bit;
        }
    };
    rec(rec, 0);
    return count;
}

/// Heawood's spin form: 3 times the number of spin assignments whose sum
/// vanishes mod 3 around every face.
inline long long heawood_count(const CubicPlanarGraph& g,
                               unsigned long long budget = 100'000'000ULL) {
    const std::size_t nv = g.graph().vertices;
    unsigned long long total = saturating_pow(2, static_cast<unsigned>(nv));
    if (total > budget)
        throw budget_error("spin enumeration needs " + std::to_string(total) +
                               " assignments, budget is " + std::to_string(budget),
                           total);
    long long solutions = 0;
    for (unsigned long long bits = 0; bits < total; ++bits) {
        bool ok = true;
        for (const auto& face : g.faces()) {
            int sum = 0;
            for (int v : face) sum += (bits >> (v - 1) & 1) ? -1 : 1;
            if (sum % 3 != 0) { ok = false; break; }
        }
        if (ok) ++solutions;
    }
    return 3 * solutions;
}

struct TaitEvalResult {
    long long colorings = 0;
    Rational sum;     // the rank/sign sum before tripling
    TermTally tally;  // keyed by rank(FM) and sign, odd ranks diagnostic
};

/// Tait colorings through the face-matrix character sum: for every spin
/// assignment, tally rank and quadratic signature of FM(sigma); the
/// even-rank terms weighted by (-1/3)^{rank/2} sum to chi'_G(3)/3.
/// Spins advance in Gray-code order so each step touches one vertex and
/// updates only that vertex's 3x3 face block of FM.
inline TaitEvalResult eval_tait_alpha(const CubicPlanarGraph& g,
                                      const EvalOptions& opts = {}) {
    const std::size_t nv = g.graph().vertices;
    unsigned long long total = saturating_pow(2, static_cast<unsigned>(nv));
    if (total > opts.budget)
        throw budget_error("spin enumeration needs " + std::to_string(total) +
                               " assignments, budget is " + std::to_string(opts.budget),
                           total);
    const FieldCtx& f3 = g.f3();
    unsigned workers = std::max(1u, opts.workers);
    if (workers > total) workers = static_cast<unsigned>(total);
    unsigned long long chunk = (total + workers - 1) / workers;

    auto run_range = [&](unsigned long long lo, unsigned long long hi, TermTally& t) {
        unsigned long long code = lo ^ (lo >> 1); // Gray code of lo
        SpinVector spins(nv);
        for (std::size_t v = 0; v < nv; ++v) spins[v] = (code >> v & 1) ? -1 : 1;
        FqMatrix fm = face_matrix(g, spins);
        for (unsigned long long i = lo; i < hi; ++i) {
            auto [r, sign] = eta_rank_signature(fm);
            t.record({r, sign});
            if (i + 1 == hi) break;
            std::size_t v = std::countr_zero(i + 1); // flipped Gray bit
            FqElem delta = f3.sub(f3.from_int(-spins[v]), f3.from_int(spins[v]));
            spins[v] = -spins[v];
            for (std::size_t a : g.faces_at(v))
                for (std::size_t b : g.faces_at(v))
                    fm.at(a, b) = f3.add(fm.at(a, b), delta);
        }
    };

    TermTally tally;
    if (workers <= 1) {
        run_range(0, total, tally);
    } else {
        std::vector<TermTally> parts(workers);
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            unsigned long long lo = w * chunk, hi = std::min(total, lo + chunk);
            threads.emplace_back([&, w, lo, hi] {
                try {
                    if (lo < hi) run_range(lo, hi, parts[w]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : threads) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        for (const auto& p : parts) tally.merge(p);
    }

    TaitEvalResult res;
    res.tally = std::move(tally);
    res.sum = res.tally.evaluate(3);
    Rational tripled = res.sum * 3;
    if (tripled.denominator() != 1)
        throw std::logic_error("tripled face-matrix sum is not an integer");
    res.colorings = tripled.numerator();
    return res;
}

} // namespace alpharep

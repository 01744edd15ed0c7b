#pragma once

#include "alpharep/evaluate.hpp"
#include "alpharep/tait.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>

namespace alpharep {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

/// Matrix files: {"field": "p^d", "rows": [[entry, ...], ...]} where an
/// entry is an integer (reduced mod p) or, for extension fields, a
/// coefficient list low degree first.  `force_field` reinterprets plain
/// integer entries over another field, which lets one matroid file serve
/// several moduli.
inline FqMatrix load_matrix(const json& j, const FieldCtx& field) {
    if (!j.contains("rows") || !j["rows"].is_array())
        throw input_error("matrix file needs a \"rows\" array");
    const auto& rows = j["rows"];
    std::size_t nrows = rows.size();
    std::size_t ncols = nrows == 0 ? 0 : rows[0].size();
    FqMatrix m(field, nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
        if (!rows[i].is_array() || rows[i].size() != ncols)
            throw input_error("matrix rows must have equal length");
        for (std::size_t k = 0; k < ncols; ++k) {
            const auto& cell = rows[i][k];
            if (cell.is_number_integer()) {
                m.at(i, k) = field.from_int(cell.get<long long>());
            } else if (cell.is_array()) {
                std::vector<std::uint32_t> coeffs;
                for (const auto& c : cell) {
                    long long x = c.get<long long>() % field.p();
                    if (x < 0) x += field.p();
                    coeffs.push_back(static_cast<std::uint32_t>(x));
                }
                m.at(i, k) = field.from_coeffs(coeffs);
            } else {
                throw input_error("matrix entries are integers or coefficient lists");
            }
        }
    }
    return m;
}

inline RepresentedMatroid load_matroid(const json& j,
                                       const std::optional<FieldCtx>& force_field = {}) {
    FieldCtx field = [&] {
        if (force_field) return *force_field;
        if (!j.contains("field")) throw input_error("matrix file needs a \"field\" spec");
        return FieldCtx::from_spec(j["field"].get<std::string>());
    }();
    std::vector<std::string> labels;
    if (j.contains("labels"))
        for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
    return RepresentedMatroid::from_matrix(load_matrix(j, field), std::move(labels));
}

/// Graph files: {"vertices": n, "edges": [[u, v], ...]}, vertices 1-based.
inline Graph load_graph(const json& j) {
    if (!j.contains("vertices") || !j.contains("edges"))
        throw input_error("graph file needs \"vertices\" and \"edges\"");
    Graph g;
    g.vertices = j["vertices"].get<std::size_t>();
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2)
            throw input_error("edges are [u, v] pairs");
        g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    g.check_endpoints();
    return g;
}

/// Embedded graph files add either "rotation" — an object mapping each
/// vertex to its three incident edges (1-based indices into the edge
/// list) in cyclic order — or "faces", a list of vertex cycles that
/// skips tracing.
inline CubicPlanarGraph load_embedded_graph(const json& j) {
    Graph g = load_graph(j);
    if (j.contains("faces")) {
        std::vector<std::vector<int>> faces;
        for (const auto& f : j["faces"]) faces.push_back(f.get<std::vector<int>>());
        return CubicPlanarGraph::from_faces(g, faces);
    }
    if (!j.contains("rotation"))
        throw input_error("embedded graph needs \"rotation\" or \"faces\"");
    std::vector<std::vector<int>> rotation(g.vertices);
    for (const auto& [key, val] : j["rotation"].items()) {
        std::size_t v = std::stoul(key);
        if (v < 1 || v > g.vertices) throw input_error("rotation key out of range");
        for (const auto& e : val) {
            int idx = e.get<int>();
            if (idx < 1 || static_cast<std::size_t>(idx) > g.edges.size())
                throw input_error("rotation edge index out of range");
            rotation[v - 1].push_back(idx - 1);
        }
    }
    return CubicPlanarGraph::from_rotation(g, rotation);
}

inline bool looks_like_graph(const json& j) { return j.contains("edges"); }

/// Tally serialization: {"(r,sign)": count, ..., "skipped_odd": n}.
/// nlohmann's object keys are sorted, so the output is canonical.
inline json tally_to_json(const TermTally& t) {
    json j = json::object();
    for (const auto& [key, n] : t.counts) {
        std::string k =
            "(" + std::to_string(key.first) + "," + (key.second > 0 ? "+" : "-") + ")";
        j[k] = n;
    }
    j["skipped_odd"] = t.skipped_odd;
    return j;
}

} // namespace alpharep

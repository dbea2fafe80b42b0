#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "urykit/chain.hpp"
#include "urykit/errors.hpp"
#include "urykit/extension.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/partial_map.hpp"
#include "urykit/rat.hpp"
#include "urykit/weighted_graph.hpp"

namespace urykit {

/// All emitted documents use insertion-ordered keys so reports are
/// byte-stable across runs.
using Json = nlohmann::ordered_json;

namespace detail {

inline Json parse_document(const std::string& text, const std::string& what) {
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded())
        throw input_error(what + ": not valid JSON");
    return doc;
}

inline const Json& require_key(const Json& doc, const char* key, const std::string& what) {
    if (!doc.is_object() || !doc.contains(key))
        throw input_error(what + ": missing \"" + key + "\" key");
    return doc.at(key);
}

inline Rat rat_from_json(const Json& j, const std::string& what) {
    if (!j.is_string())
        throw input_error(what + ": rationals must be \"num/den\" strings");
    return parse_rat(j.get<std::string>());
}

} // namespace detail

// ---- space files: {"labels": [...], "d": [["0/1", ...], ...]} ----

inline Json space_to_json(const FiniteMetricSpace& s) {
    Json doc;
    doc["labels"] = s.labels;
    Json rows = Json::array();
    for (const auto& row : s.d) {
        Json r = Json::array();
        for (const Rat& v : row)
            r.push_back(rat_str(v));
        rows.push_back(std::move(r));
    }
    doc["d"] = std::move(rows);
    return doc;
}

inline FiniteMetricSpace space_from_json(const Json& doc, const std::string& what = "space") {
    FiniteMetricSpace s;
    const Json& labels = detail::require_key(doc, "labels", what);
    const Json& rows = detail::require_key(doc, "d", what);
    if (!labels.is_array() || !rows.is_array())
        throw input_error(what + ": \"labels\" and \"d\" must be arrays");
    for (const auto& l : labels) {
        if (!l.is_string())
            throw input_error(what + ": labels must be strings");
        s.labels.push_back(l.get<std::string>());
    }
    for (const auto& row : rows) {
        if (!row.is_array())
            throw input_error(what + ": matrix rows must be arrays");
        std::vector<Rat> r;
        for (const auto& v : row)
            r.push_back(detail::rat_from_json(v, what));
        s.d.push_back(std::move(r));
    }
    check_shape(s);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s.d[i][j] != s.d[j][i])
                throw input_error(what + ": matrix is asymmetric at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    return s;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw input_error("cannot write " + path);
    out << text;
}

inline FiniteMetricSpace read_space(const std::string& path) {
    return space_from_json(detail::parse_document(read_text_file(path), path), path);
}

inline void write_space(const FiniteMetricSpace& s, const std::string& path) {
    write_text_file(path, space_to_json(s).dump(2) + "\n");
}

// ---- type vectors: {"p": ["1/2", "3/2"]} ----

inline Json type_to_json(const MetricType& p) {
    Json doc;
    Json arr = Json::array();
    for (const Rat& v : p)
        arr.push_back(rat_str(v));
    doc["p"] = std::move(arr);
    return doc;
}

inline MetricType type_from_json(const Json& doc, const std::string& what = "type") {
    const Json& arr = detail::require_key(doc, "p", what);
    if (!arr.is_array())
        throw input_error(what + ": \"p\" must be an array");
    MetricType p;
    for (const auto& v : arr)
        p.push_back(detail::rat_from_json(v, what));
    return p;
}

// ---- maps: {"pairs": [[0, 0], [1, 2]]} ----

inline Json pairs_to_json(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    Json arr = Json::array();
    for (const auto& [a, b] : pairs)
        arr.push_back(Json::array({a, b}));
    return arr;
}

inline std::vector<std::pair<std::size_t, std::size_t>> pairs_from_json(
    const Json& arr, const std::string& what = "map") {
    if (!arr.is_array())
        throw input_error(what + ": \"pairs\" must be an array");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
            !e[1].is_number_unsigned())
            throw input_error(what + ": each pair must be two nonnegative indices");
        out.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return out;
}

// ---- graphs: {"vertices": [...], "edges": [["a", "b", "3/2"], ...]} ----

inline Json graph_to_json(const WeightedGraph& g) {
    Json doc;
    doc["vertices"] = g.vertices;
    Json edges = Json::array();
    for (const auto& e : g.edges)
        edges.push_back(Json::array({g.vertices[e.a], g.vertices[e.b], rat_str(e.w)}));
    doc["edges"] = std::move(edges);
    return doc;
}

inline WeightedGraph graph_from_json(const Json& doc, const std::string& what = "graph") {
    WeightedGraph g;
    const Json& vs = detail::require_key(doc, "vertices", what);
    const Json& es = detail::require_key(doc, "edges", what);
    if (!vs.is_array() || !es.is_array())
        throw input_error(what + ": \"vertices\" and \"edges\" must be arrays");
    for (const auto& v : vs) {
        if (!v.is_string())
            throw input_error(what + ": vertices must be strings");
        g.vertices.push_back(v.get<std::string>());
    }
    auto index_of = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            if (g.vertices[i] == name)
                return i;
        throw input_error(what + ": edge endpoint \"" + name + "\" is not a vertex");
    };
    for (const auto& e : es) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string())
            throw input_error(what + ": each edge must be [from, to, weight]");
        g.edges.push_back({index_of(e[0].get<std::string>()), index_of(e[1].get<std::string>()),
                           detail::rat_from_json(e[2], what)});
    }
    return g;
}

inline WeightedGraph read_graph(const std::string& path) {
    return graph_from_json(detail::parse_document(read_text_file(path), path), path);
}

// ---- chained spaces: space keys plus {"chain": [[...]], "beta": i} ----

inline Json chained_to_json(const ChainedSpace& cs) {
    Json doc = space_to_json(cs.space);
    Json chain = Json::array();
    for (const auto& stage : cs.chain)
        chain.push_back(stage);
    doc["chain"] = std::move(chain);
    doc["beta"] = cs.beta;
    return doc;
}

inline ChainedSpace chained_from_json(const Json& doc, const std::string& what = "chained space") {
    ChainedSpace cs;
    cs.space = space_from_json(doc, what);
    const Json& chain = detail::require_key(doc, "chain", what);
    const Json& beta = detail::require_key(doc, "beta", what);
    if (!chain.is_array() || !beta.is_number_unsigned())
        throw input_error(what + ": \"chain\" must be an array and \"beta\" an index");
    for (const auto& stage : chain) {
        if (!stage.is_array())
            throw input_error(what + ": chain stages must be arrays");
        std::vector<std::size_t> s;
        for (const auto& i : stage) {
            if (!i.is_number_unsigned())
                throw input_error(what + ": chain stages must hold indices");
            s.push_back(i.get<std::size_t>());
        }
        cs.chain.push_back(std::move(s));
    }
    cs.beta = beta.get<std::size_t>();
    check_chained_space(cs);
    return cs;
}

inline ChainedSpace read_chained(const std::string& path) {
    return chained_from_json(detail::parse_document(read_text_file(path), path), path);
}

} // namespace urykit

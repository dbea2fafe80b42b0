#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "urykit/errors.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/rat.hpp"

namespace urykit {

struct WeightedEdge {
    std::size_t a = 0, b = 0;
    Rat w;
};

/// Connected weighted graph with positive symmetric weights; the input of
/// shortest-path metric completion.
struct WeightedGraph {
    std::vector<std::string> vertices;
    std::vector<WeightedEdge> edges;

    std::size_t size() const { return vertices.size(); }
};

inline void check_graph(const WeightedGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    for (const auto& e : g.edges) {
        if (e.a >= n || e.b >= n)
            throw input_error("edge endpoint out of range");
        if (e.a == e.b)
            throw input_error("self-loop at vertex " + std::to_string(e.a));
        if (e.w <= 0)
            throw input_error("nonpositive weight on edge (" + std::to_string(e.a) + "," +
                              std::to_string(e.b) + ")");
        if (seen[e.a][e.b])
            throw input_error("duplicate edge (" + std::to_string(e.a) + "," +
                              std::to_string(e.b) + ")");
        seen[e.a][e.b] = seen[e.b][e.a] = true;
    }
}

/// Shortest-path metric of a connected weighted graph, computed by exact
/// all-pairs relaxation. If every edge is itself a shortest path, the output
/// restricted to the edges equals the input weights. Disconnected input is
/// an error (the metric is undefined).
inline FiniteMetricSpace path_completion(const WeightedGraph& g) {
    check_graph(g);
    const std::size_t n = g.size();
    if (n == 0)
        throw input_error("graph has no vertices");

    std::vector<std::vector<std::optional<Rat>>> dist(n, std::vector<std::optional<Rat>>(n));
    for (std::size_t i = 0; i < n; ++i)
        dist[i][i] = Rat(0);
    for (const auto& e : g.edges) {
        if (!dist[e.a][e.b] || *dist[e.a][e.b] > e.w) {
            dist[e.a][e.b] = e.w;
            dist[e.b][e.a] = e.w;
        }
    }

    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!dist[i][k])
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!dist[k][j])
                    continue;
                Rat via = *dist[i][k] + *dist[k][j];
                if (!dist[i][j] || *dist[i][j] > via)
                    dist[i][j] = via;
            }
        }

    FiniteMetricSpace out;
    out.labels = g.vertices;
    out.d.assign(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!dist[i][j])
                throw input_error("graph is disconnected: no path between " + g.vertices[i] +
                                  " and " + g.vertices[j]);
            out.d[i][j] = *dist[i][j];
        }
    return out;
}

/// Complete weighted graph of a metric space (used for idempotence checks).
inline WeightedGraph complete_graph(const FiniteMetricSpace& s) {
    WeightedGraph g;
    g.vertices = s.labels;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            g.edges.push_back({i, j, s.d[i][j]});
    return g;
}

} // namespace urykit

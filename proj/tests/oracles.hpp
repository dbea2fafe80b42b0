#pragma once

// Independent brute-force oracles used only by tests. Each one recomputes a
// library result along a different code path (plain loops, exhaustive
// enumeration) so the library and the oracle can disagree only if one of
// them is wrong.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "urykit/metric_space.hpp"
#include "urykit/partial_map.hpp"
#include "urykit/rat.hpp"
#include "urykit/rng.hpp"
#include "urykit/weighted_graph.hpp"

namespace oracles {

using urykit::FiniteMetricSpace;
using urykit::Int;
using urykit::PartialMap;
using urykit::Rat;
using urykit::SplitMix64;
using urykit::WeightedGraph;

/// Plain triple-loop axiom check, no reporting, no shared code with
/// validate_metric beyond the space struct.
inline bool metric_axioms_hold(const FiniteMetricSpace& s) {
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i)
        if (s.d[i][i] != 0)
            return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (s.d[i][j] != s.d[j][i])
                return false;
            if (i != j && s.d[i][j] <= 0)
                return false;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (s.d[i][k] > s.d[i][j] + s.d[j][k])
                    return false;
    return true;
}

/// Shortest path from a to b minimized over every simple path, by DFS.
inline void simple_path_dfs(const std::vector<std::vector<std::optional<Rat>>>& w, std::size_t at,
                            std::size_t goal, std::vector<bool>& visited, const Rat& length,
                            std::optional<Rat>& best) {
    if (at == goal) {
        if (!best || length < *best)
            best = length;
        return;
    }
    for (std::size_t next = 0; next < w.size(); ++next) {
        if (visited[next] || !w[at][next])
            continue;
        visited[next] = true;
        simple_path_dfs(w, next, goal, visited, length + *w[at][next], best);
        visited[next] = false;
    }
}

/// All-simple-paths metric completion. Returns nullopt if some pair is
/// unreachable.
inline std::optional<FiniteMetricSpace> all_simple_paths_metric(const WeightedGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::optional<Rat>>> w(n, std::vector<std::optional<Rat>>(n));
    for (const auto& e : g.edges) {
        w[e.a][e.b] = e.w;
        w[e.b][e.a] = e.w;
    }
    FiniteMetricSpace out;
    out.labels = g.vertices;
    out.d.assign(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::optional<Rat> best;
            std::vector<bool> visited(n, false);
            visited[i] = true;
            simple_path_dfs(w, i, j, visited, Rat(0), best);
            if (!best)
                return std::nullopt;
            out.d[i][j] = *best;
            out.d[j][i] = *best;
        }
    return out;
}

/// Pairwise loop over matched pairs; infinity reported as nullopt.
inline std::optional<Rat> pairwise_distortion(const PartialMap& m) {
    Rat worst(1);
    for (std::size_t i = 0; i < m.pairs.size(); ++i)
        for (std::size_t j = 0; j < m.pairs.size(); ++j) {
            if (i == j)
                continue;
            const Rat& dx = m.source.d[m.pairs[i].first][m.pairs[j].first];
            const Rat& dy = m.target.d[m.pairs[i].second][m.pairs[j].second];
            if (dx == 0 && dy == 0)
                continue;
            if (dx == 0 || dy == 0)
                return std::nullopt;
            if (dx / dy > worst)
                worst = dx / dy;
            if (dy / dx > worst)
                worst = dy / dx;
        }
    return worst;
}

/// Random connected weighted graph: a random spanning tree plus extra edges,
/// weights drawn from {1, ..., 9}.
inline WeightedGraph random_connected_graph(SplitMix64& rng, std::size_t max_vertices) {
    const std::size_t n = 2 + rng.below(max_vertices - 1);
    WeightedGraph g;
    g.vertices = urykit::default_labels(n, "v");
    std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
    for (std::size_t v = 1; v < n; ++v) {
        std::size_t u = rng.below(v);
        g.edges.push_back({u, v, Rat(1 + rng.below(9))});
        present[u][v] = present[v][u] = true;
    }
    const std::size_t extra = rng.below(n * 2);
    for (std::size_t t = 0; t < extra; ++t) {
        std::size_t a = rng.below(n), b = rng.below(n);
        if (a == b || present[a][b])
            continue;
        g.edges.push_back({a, b, Rat(1 + rng.below(9))});
        present[a][b] = present[b][a] = true;
    }
    return g;
}

/// Random valid metric space: completion of a random connected graph.
inline FiniteMetricSpace random_space(SplitMix64& rng, std::size_t max_points) {
    return urykit::path_completion(random_connected_graph(rng, max_points));
}

/// Seeded K-bi-Lipschitz perturbation of an ultrametric space: every
/// spectrum value v moves to a rational in [v/K, K*v], non-decreasingly.
/// A non-decreasing transform keeps ultrametrics ultrametric, preserves
/// stage minima, and the band makes the identity map exactly
/// K-bi-Lipschitz, so the result is a certified chain-respecting transfer.
inline FiniteMetricSpace spectrum_perturbation(const FiniteMetricSpace& s, unsigned K,
                                               SplitMix64& rng) {
    std::vector<Rat> values = urykit::spectrum(s);
    std::vector<Rat> mapped(values.size());
    Rat prev(0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        Rat lo = values[i] / K;
        if (prev > lo)
            lo = prev;
        Rat hi = values[i] * K;
        mapped[i] = lo + (hi - lo) * Rat(Int(rng.below(17)), Int(16));
        prev = mapped[i];
    }
    FiniteMetricSpace out = s;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j)
                continue;
            std::size_t at =
                std::lower_bound(values.begin(), values.end(), s.d[i][j]) - values.begin();
            out.d[i][j] = mapped[at];
        }
    return out;
}

/// Random symmetric zero-diagonal matrix with entries from {1..9}; usually
/// not a metric.
inline FiniteMetricSpace random_symmetric_matrix(SplitMix64& rng, std::size_t n) {
    FiniteMetricSpace s;
    s.labels = urykit::default_labels(n);
    s.d.assign(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rat v(1 + rng.below(9));
            s.d[i][j] = v;
            s.d[j][i] = v;
        }
    return s;
}

} // namespace oracles

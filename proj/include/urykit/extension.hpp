#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "urykit/errors.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/partial_map.hpp"
#include "urykit/rat.hpp"
#include "urykit/weighted_graph.hpp"

namespace urykit {

/// A metric type over a base space: the candidate distance vector of one new
/// point, indexed by the base points.
using MetricType = std::vector<Rat>;

/// Checks positivity and the two type conditions
///   |p(x) - p(y)| <= d(x,y)  and  d(x,y) <= p(x) + p(y)
/// exactly. Returns the first witness pair on failure.
struct TypeCheck {
    bool ok = true;
    std::size_t x = 0, y = 0;
    std::string reason;
};

inline TypeCheck check_metric_type(const FiniteMetricSpace& base, const MetricType& p) {
    if (p.size() != base.size())
        throw input_error("type vector has " + std::to_string(p.size()) + " entries for " +
                          std::to_string(base.size()) + " points");
    for (std::size_t x = 0; x < p.size(); ++x)
        if (p[x] <= 0)
            return {false, x, x, "p(" + std::to_string(x) + ") is not positive"};
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = x + 1; y < p.size(); ++y) {
            if (rat_abs(p[x] - p[y]) > base.d[x][y])
                return {false, x, y, "|p(x)-p(y)| exceeds d(x,y)"};
            if (p[x] + p[y] < base.d[x][y])
                return {false, x, y, "p(x)+p(y) is below d(x,y)"};
        }
    return {};
}

/// Adjoins one new point realizing the type: d(y,x) = p(x) for all x.
inline FiniteMetricSpace realize_type(const FiniteMetricSpace& base, const MetricType& p,
                                      const std::string& new_label = "y") {
    TypeCheck c = check_metric_type(base, p);
    if (!c.ok)
        throw input_error("type is not realizable: " + c.reason + " at pair (" +
                          std::to_string(c.x) + "," + std::to_string(c.y) + ")");
    FiniteMetricSpace out = base;
    const std::size_t n = base.size();
    out.labels.push_back(new_label);
    for (std::size_t i = 0; i < n; ++i)
        out.d[i].push_back(p[i]);
    std::vector<Rat> row(n + 1, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        row[i] = p[i];
    out.d.push_back(std::move(row));
    return out;
}

struct ExtensionResult {
    FiniteMetricSpace target; ///< original target plus the new point (last index)
    PartialMap map;           ///< extended map, distortion < theta
    Rat lambda;               ///< the rational 1 < lambda < theta actually used
};

/// One-point bi-Lipschitz extension. x_space has n+1 points, m matches its
/// first n points into the target with distortion < theta. The new target
/// point is placed at lambda * d_X(x_n, x_i) from each matched image, with
/// lambda = (distortion(m) + theta) / 2, and the distances are closed under
/// shortest paths. Old target distances are unchanged and the extended map
/// again has distortion < theta.
inline ExtensionResult extend_one_point(const FiniteMetricSpace& x_space, const PartialMap& m,
                                        const Rat& theta) {
    if (theta <= 1)
        throw input_error("theta must exceed 1");
    if (x_space.size() == 0)
        throw input_error("source space is empty");
    check_partial_map(m);
    const std::size_t n = x_space.size() - 1;
    if (m.pairs.size() != n)
        throw input_error("map must match exactly the first n of n+1 source points");
    for (std::size_t i = 0; i < n; ++i)
        if (m.pairs[i].first != i)
            throw input_error("map must be given on source points 0..n-1 in order");
    if (!spaces_equal(m.source, x_space))
        throw input_error("map source does not match x_space");

    const Distortion dist = distortion(m);
    if (dist.infinite || dist.value >= theta)
        throw precondition_error("map distortion " +
                                 (dist.infinite ? std::string("INFINITE") : rat_str(dist.value)) +
                                 " is not < theta " + rat_str(theta));
    const Rat lambda = (dist.value + theta) / 2;

    ExtensionResult res;
    res.lambda = lambda;

    if (m.pairs.empty()) {
        // Vacuous case: nothing constrains the new point.
        if (m.target.size() == 0) {
            res.target.labels.push_back("y0");
            res.target.d = {{Rat(0)}};
        } else {
            Rat r(1);
            for (std::size_t i = 0; i < m.target.size(); ++i)
                for (std::size_t j = i + 1; j < m.target.size(); ++j)
                    if (m.target.d[i][j] > r)
                        r = m.target.d[i][j];
            res.target = m.target;
            res.target.labels.push_back("y" + std::to_string(m.target.size()));
            for (std::size_t i = 0; i < m.target.size(); ++i)
                res.target.d[i].push_back(r);
            std::vector<Rat> row(m.target.size() + 1, Rat(0));
            for (std::size_t i = 0; i < m.target.size(); ++i)
                row[i] = r;
            res.target.d.push_back(std::move(row));
        }
    } else {
        // Graph: the target metric as edges, plus a star from the new point
        // to each matched image with weight lambda * d_X(x_n, x_i).
        WeightedGraph g = complete_graph(m.target);
        const std::size_t new_index = m.target.size();
        g.vertices.push_back("y" + std::to_string(new_index));
        for (const auto& [src, tgt] : m.pairs)
            g.edges.push_back({tgt, new_index, lambda * x_space.d[n][src]});
        res.target = path_completion(g);
    }

    res.map.source = x_space;
    res.map.target = res.target;
    res.map.pairs = m.pairs;
    res.map.pairs.emplace_back(n, res.target.size() - 1);
    return res;
}

/// Distances from an external point x_new to the source points of f, indexed
/// like f.source; entries at unmatched indices are ignored.
using ExternalPoint = std::vector<Rat>;

/// Exhaustive witness search: a pool point y (not in ran f) such that
/// f + (x_new -> y) has exact distortion < lambda. Among admissible
/// candidates the one minimizing the worst new-pair ratio wins, ties going
/// to the lowest index. NONE (nullopt) is a certificate: the scan is
/// exhaustive over the pool.
inline std::optional<std::size_t> check_almost_extension(const FiniteMetricSpace& space,
                                                         const std::vector<std::size_t>& pool,
                                                         const PartialMap& f,
                                                         const ExternalPoint& new_dists,
                                                         const Rat& lambda) {
    if (lambda <= 1)
        throw input_error("lambda must exceed 1");
    check_partial_map(f);
    if (new_dists.size() != f.source.size())
        throw input_error("external point has wrong arity");
    const Distortion base = distortion(f);
    if (!base.less_than(lambda))
        throw precondition_error("map distortion is not < lambda");
    for (const auto& [src, tgt] : f.pairs)
        if (new_dists[src] <= 0)
            throw input_error("external point collapses onto matched source point " +
                              std::to_string(src));

    std::set<std::size_t> used;
    for (const auto& [src, tgt] : f.pairs)
        used.insert(tgt);

    std::optional<std::size_t> best;
    Rat best_ratio;
    for (std::size_t y : pool) {
        if (y >= space.size())
            throw input_error("pool index out of range");
        if (used.count(y))
            continue;
        Rat worst(1);
        bool ok = true;
        for (const auto& [src, tgt] : f.pairs) {
            const Rat& dy = space.d[y][tgt];
            if (dy == 0) { // y coincides with a matched image in a pseudo-metric
                ok = false;
                break;
            }
            Rat r = two_sided_ratio(new_dists[src], dy);
            if (r >= lambda) {
                ok = false;
                break;
            }
            if (r > worst)
                worst = r;
        }
        if (ok && (!best || worst < best_ratio)) {
            best = y;
            best_ratio = worst;
        }
    }
    return best;
}

} // namespace urykit

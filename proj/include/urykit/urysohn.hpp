#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "urykit/errors.hpp"
#include "urykit/extension.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/rat.hpp"
#include "urykit/rng.hpp"

namespace urykit {

inline constexpr std::size_t kDefaultUrysohnBudget = 20000;

/// One level A_n of the rational Urysohn approximation. `faithful` is false
/// for levels grown in sampled mode, which realize only a seeded subset of
/// the eligible types.
struct UrysohnLevel {
    FiniteMetricSpace space;
    bool faithful = true;
};

struct UrysohnLevels {
    std::vector<UrysohnLevel> levels;

    std::size_t count() const { return levels.size(); }
    const FiniteMetricSpace& top() const { return levels.back().space; }
};

/// Level 0: a single point.
inline UrysohnLevels initial_levels() {
    UrysohnLevels ls;
    FiniteMetricSpace a0;
    a0.labels = {"u0"};
    a0.d = {{Rat(0)}};
    ls.levels.push_back({a0, true});
    return ls;
}

/// All positive rationals <= value_bound expressible with denominator
/// <= denom_bound, ascending. Lowest-terms generation makes each value
/// appear once.
inline std::vector<Rat> rational_grid(const Rat& value_bound, unsigned denom_bound) {
    std::set<Rat> values;
    for (unsigned b = 1; b <= denom_bound; ++b) {
        Int max_num = rat_num(value_bound * b) / rat_den(value_bound * b);
        for (Int a = 1; a <= max_num; ++a)
            if (boost::multiprecision::gcd(a, Int(b)) == 1)
                values.insert(Rat(a, b));
    }
    return std::vector<Rat>(values.begin(), values.end());
}

namespace detail {

/// Whether value v is admissible for coordinate `next` given the first
/// `prefix_len` chosen coordinates, i.e. passes the two type conditions
/// against every earlier point.
inline bool type_coord_admissible(const FiniteMetricSpace& level, const std::vector<Rat>& chosen,
                                  std::size_t prefix_len, std::size_t next, const Rat& v) {
    for (std::size_t j = 0; j < prefix_len; ++j) {
        const Rat& d = level.d[j][next];
        if (rat_abs(v - chosen[j]) > d || v + chosen[j] < d)
            return false;
    }
    return true;
}

} // namespace detail

/// Enumerates exactly the metric types over `level` whose values lie on the
/// (value_bound, denom_bound) rational grid, in lexicographic order by
/// ascending coordinate value. Aborts with budget_error as soon as more than
/// max_count types exist (when a cap is given), so infeasibly large
/// enumerations fail fast instead of running to completion.
inline std::vector<MetricType> enumerate_rational_types(
    const FiniteMetricSpace& level, const Rat& value_bound, unsigned denom_bound,
    std::optional<std::size_t> max_count = std::nullopt) {
    if (value_bound <= 0 || denom_bound == 0)
        throw input_error("type bounds must be positive");
    const std::vector<Rat> grid = rational_grid(value_bound, denom_bound);
    const std::size_t n = level.size();

    std::vector<MetricType> out;
    MetricType current(n);
    // iterative DFS over coordinates, values ascending
    std::vector<std::size_t> choice;
    choice.reserve(n);
    std::size_t depth = 0, next_value = 0;
    if (n == 0) {
        out.push_back({}); // the empty type
        return out;
    }
    while (true) {
        bool descended = false;
        for (std::size_t v = next_value; v < grid.size(); ++v) {
            if (detail::type_coord_admissible(level, current, depth, depth, grid[v])) {
                current[depth] = grid[v];
                choice.push_back(v);
                ++depth;
                next_value = 0;
                descended = true;
                break;
            }
        }
        if (descended) {
            if (depth == n) {
                out.push_back(current);
                if (max_count && out.size() > *max_count)
                    throw budget_error("type enumeration exceeds budget of " +
                                       std::to_string(*max_count));
                // backtrack one coordinate
                --depth;
                next_value = choice.back() + 1;
                choice.pop_back();
            }
            continue;
        }
        if (depth == 0)
            break;
        --depth;
        next_value = choice.back() + 1;
        choice.pop_back();
    }
    return out;
}

namespace detail {

/// Distance between two new points realizing types p and q:
/// min over old x of p(x) + q(x).
inline Rat new_point_distance(const MetricType& p, const MetricType& q) {
    Rat best = p[0] + q[0];
    for (std::size_t x = 1; x < p.size(); ++x) {
        Rat s = p[x] + q[x];
        if (s < best)
            best = s;
    }
    return best;
}

inline FiniteMetricSpace grow_level(const FiniteMetricSpace& old_space,
                                    const std::vector<MetricType>& types) {
    const std::size_t n = old_space.size();
    const std::size_t m = types.size();
    FiniteMetricSpace out = old_space;
    out.labels.reserve(n + m);
    for (std::size_t t = 0; t < m; ++t)
        out.labels.push_back("u" + std::to_string(n + t));
    for (std::size_t i = 0; i < n; ++i) {
        out.d[i].reserve(n + m);
        for (std::size_t t = 0; t < m; ++t)
            out.d[i].push_back(types[t][i]);
    }
    for (std::size_t t = 0; t < m; ++t) {
        std::vector<Rat> row(n + m);
        for (std::size_t i = 0; i < n; ++i)
            row[i] = types[t][i];
        for (std::size_t u = 0; u < m; ++u) {
            if (u == t)
                row[n + u] = Rat(0);
            else
                row[n + u] = new_point_distance(types[t], types[u]);
        }
        out.d.push_back(std::move(row));
    }
    return out;
}

} // namespace detail

/// Grows the sequence by one level: enumerate all types over the top level
/// with bounds (n+1, n+1), then adjoin one new point per type; distances
/// between new points use the min-sum formula. Fails with budget_error,
/// never truncates silently.
inline void build_level(UrysohnLevels& ls, std::size_t budget = kDefaultUrysohnBudget) {
    if (ls.count() == 0)
        throw input_error("no initial level; start from the singleton");
    const unsigned n = static_cast<unsigned>(ls.count() - 1);
    const FiniteMetricSpace& top = ls.top();
    if (top.size() >= budget)
        throw budget_error("level already at or above the point budget");
    std::vector<MetricType> types =
        enumerate_rational_types(top, Rat(n + 1), n + 1, budget - top.size());
    FiniteMetricSpace next = detail::grow_level(top, types);
    ls.levels.push_back({next, ls.levels.back().faithful});
}

/// Sampled (non-faithful) growth: realizes up to `samples` types found by
/// seeded random walks over the type constraints. The resulting level is
/// flagged non-faithful and check_level_property on it will generally fail.
inline void build_level_sampled(UrysohnLevels& ls, std::size_t samples, std::uint64_t seed,
                                std::size_t budget = kDefaultUrysohnBudget) {
    if (ls.count() == 0)
        throw input_error("no initial level; start from the singleton");
    const unsigned n = static_cast<unsigned>(ls.count() - 1);
    const FiniteMetricSpace& top = ls.top();
    if (top.size() + samples > budget)
        throw budget_error("sample count exceeds the point budget");
    const std::vector<Rat> grid = rational_grid(Rat(n + 1), n + 1);

    SplitMix64 rng(seed);
    std::set<MetricType> found;
    const std::size_t attempts = samples * 64 + 64;
    for (std::size_t a = 0; a < attempts && found.size() < samples; ++a) {
        MetricType p;
        p.reserve(top.size());
        bool dead = false;
        for (std::size_t x = 0; x < top.size() && !dead; ++x) {
            std::vector<Rat> options;
            for (const Rat& v : grid)
                if (detail::type_coord_admissible(top, p, p.size(), x, v))
                    options.push_back(v);
            if (options.empty())
                dead = true;
            else
                p.push_back(options[rng.below(options.size())]);
        }
        if (!dead)
            found.insert(p);
    }
    std::vector<MetricType> types(found.begin(), found.end());
    FiniteMetricSpace next = detail::grow_level(top, types);
    ls.levels.push_back({next, false});
}

struct LevelCheck {
    bool ok = true;
    MetricType counterexample; ///< an enumerated type not realized in level n+1
};

/// Verifies that every type over level n (with the level-n bounds) is
/// realized exactly by some point of level n+1.
inline LevelCheck check_level_property(const UrysohnLevels& ls, std::size_t n,
                                       std::size_t budget = kDefaultUrysohnBudget) {
    if (n + 1 >= ls.count())
        throw input_error("level " + std::to_string(n + 1) + " has not been built");
    const FiniteMetricSpace& base = ls.levels[n].space;
    const FiniteMetricSpace& next = ls.levels[n + 1].space;
    std::vector<MetricType> types =
        enumerate_rational_types(base, Rat(static_cast<unsigned>(n) + 1),
                                 static_cast<unsigned>(n) + 1, budget);
    for (const MetricType& p : types) {
        bool realized = false;
        for (std::size_t y = 0; y < next.size() && !realized; ++y) {
            bool match = true;
            for (std::size_t x = 0; x < base.size() && match; ++x)
                if (next.d[y][x] != p[x])
                    match = false;
            realized = match;
        }
        if (!realized)
            return {false, p};
    }
    return {};
}

} // namespace urykit

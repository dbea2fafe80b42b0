#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "urykit/errors.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/rat.hpp"

namespace urykit {

/// An injection between point subsets of two spaces, as index pairs
/// (source index, target index).
struct PartialMap {
    FiniteMetricSpace source;
    FiniteMetricSpace target;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

inline void check_partial_map(const PartialMap& m) {
    std::set<std::size_t> src, tgt;
    for (const auto& [a, b] : m.pairs) {
        if (a >= m.source.size() || b >= m.target.size())
            throw input_error("map pair out of range");
        if (!src.insert(a).second)
            throw input_error("map is not injective on source index " + std::to_string(a));
        if (!tgt.insert(b).second)
            throw input_error("map is not injective on target index " + std::to_string(b));
    }
}

inline PartialMap make_partial_map(FiniteMetricSpace source, FiniteMetricSpace target,
                                   std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    PartialMap m{std::move(source), std::move(target), std::move(pairs)};
    check_partial_map(m);
    return m;
}

inline PartialMap inverse_map(const PartialMap& m) {
    PartialMap inv{m.target, m.source, {}};
    inv.pairs.reserve(m.pairs.size());
    for (const auto& [a, b] : m.pairs)
        inv.pairs.emplace_back(b, a);
    return inv;
}

/// Exact distortion value; `infinite` only arises on pseudo-metric inputs
/// where a matched pair collapses on exactly one side.
struct Distortion {
    bool infinite = false;
    Rat value{1};

    bool less_than(const Rat& lambda) const { return !infinite && value < lambda; }
    bool at_most(const Rat& lambda) const { return !infinite && value <= lambda; }
};

/// Distortion plus the maximizing pair of map-pair indices (into m.pairs).
struct DistortionReport {
    Distortion d;
    bool has_witness = false;
    std::size_t pair_i = 0, pair_j = 0;
};

/// max over matched pairs i != j of max(dY/dX, dX/dY); 1 when fewer than two
/// pairs are matched (vacuous bound).
inline DistortionReport distortion_report(const PartialMap& m) {
    check_partial_map(m);
    DistortionReport rep;
    const std::size_t k = m.pairs.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const Rat& dx = m.source.d[m.pairs[i].first][m.pairs[j].first];
            const Rat& dy = m.target.d[m.pairs[i].second][m.pairs[j].second];
            if (dx == 0 && dy == 0)
                continue; // collapsed on both sides: no constraint
            if (dx == 0 || dy == 0) {
                rep.d.infinite = true;
                rep.has_witness = true;
                rep.pair_i = i;
                rep.pair_j = j;
                return rep;
            }
            Rat r = two_sided_ratio(dx, dy);
            if (r > rep.d.value) {
                rep.d.value = r;
                rep.has_witness = true;
                rep.pair_i = i;
                rep.pair_j = j;
            }
        }
    return rep;
}

inline Distortion distortion(const PartialMap& m) { return distortion_report(m).d; }

} // namespace urykit

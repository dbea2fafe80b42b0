#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "urykit/errors.hpp"
#include "urykit/extension.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/partial_map.hpp"
#include "urykit/rat.hpp"

namespace urykit {

enum class SideOrder {
    Alternate, ///< strict alternation X-side / Y-side, starting with X
    ForthOnly, ///< X-side steps only
};

/// Parameters of one matching run: the target constant, the per-step slack
/// schedule (strictly increasing with limit lambda), the number of X points
/// to cover, and the side alternation policy.
struct MatchPlan {
    Rat lambda;
    std::vector<Rat> slack;
    std::size_t max_points = 0;
    SideOrder order = SideOrder::Alternate;

    /// Geometric schedule slack[k] = 1 + (lambda-1) * (1 - 2^-(k+1)):
    /// rational, strictly increasing, always below lambda, reserving margin
    /// for every later step.
    static MatchPlan standard(const Rat& lambda, std::size_t max_points,
                              SideOrder order = SideOrder::Alternate) {
        if (lambda <= 1)
            throw input_error("lambda must exceed 1");
        MatchPlan plan;
        plan.lambda = lambda;
        plan.max_points = max_points;
        plan.order = order;
        const std::size_t steps = 2 * max_points + 4;
        Rat pow2(1);
        for (std::size_t k = 0; k < steps; ++k) {
            pow2 /= 2; // 2^-(k+1)
            plan.slack.push_back(1 + (lambda - 1) * (1 - pow2));
        }
        return plan;
    }

    void check() const {
        if (lambda <= 1)
            throw input_error("lambda must exceed 1");
        if (slack.empty() || slack.front() <= 1)
            throw input_error("slack schedule must start above 1");
        for (std::size_t k = 0; k + 1 < slack.size(); ++k)
            if (!(slack[k] < slack[k + 1]))
                throw input_error("slack schedule must be strictly increasing");
        if (!(slack.back() < lambda))
            throw input_error("slack schedule must stay below lambda");
    }

    const Rat& slack_at(std::size_t step) const {
        return step < slack.size() ? slack[step] : slack.back();
    }
};

struct MatchFailure {
    std::size_t step = 0;
    char side = 'X';          ///< side whose point could not be adjoined
    std::size_t point = 0;    ///< index of that point in its space
    Rat bound;                ///< slack bound in force at the failing step
    std::string reason;
};

struct MatchResult {
    bool success = false;
    PartialMap map;        ///< bijection from the X prefix onto a subset of Y
    Rat distortion{1};     ///< exact, re-verified
    MatchFailure failure;  ///< meaningful when !success
};

/// ok iff distortion(m) < lambda exactly; otherwise reports the maximizing
/// pair with its exact ratio. Post-hoc verifier, independent of any
/// construction bookkeeping.
struct BilipCheck {
    bool ok = false;
    Distortion d;
    bool has_pair = false;
    std::size_t source_i = 0, source_j = 0; ///< source indices of the maximizing pair
};

inline BilipCheck certify_bilip(const PartialMap& m, const Rat& lambda) {
    DistortionReport rep = distortion_report(m);
    BilipCheck out;
    out.d = rep.d;
    out.ok = rep.d.less_than(lambda);
    if (rep.has_witness) {
        out.has_pair = true;
        out.source_i = m.pairs[rep.pair_i].first;
        out.source_j = m.pairs[rep.pair_j].first;
    }
    return out;
}

namespace detail {

/// One adjunction step on the side mapping `from` into `to`: delegates the
/// exhaustive witness search to check_almost_extension with the step bound,
/// then reports the worst new-pair ratio of the chosen witness.
struct WitnessPick {
    bool found = false;
    std::size_t index = 0;
    Rat worst{1};
};

inline WitnessPick adjoin_step(const FiniteMetricSpace& from, const FiniteMetricSpace& to,
                               const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                               std::size_t point, const Rat& bound) {
    PartialMap f{from, to, pairs};
    ExternalPoint new_dists(from.size());
    for (std::size_t i = 0; i < from.size(); ++i)
        new_dists[i] = from.d[point][i];
    std::vector<std::size_t> pool(to.size());
    for (std::size_t i = 0; i < to.size(); ++i)
        pool[i] = i;

    WitnessPick pick;
    std::optional<std::size_t> witness = check_almost_extension(to, pool, f, new_dists, bound);
    if (!witness)
        return pick;
    pick.found = true;
    pick.index = *witness;
    for (const auto& [a, b] : pairs) {
        Rat r = two_sided_ratio(from.d[point][a], to.d[*witness][b]);
        if (r > pick.worst)
            pick.worst = r;
    }
    return pick;
}

} // namespace detail

/// Builds a bijective lambda-bi-Lipschitz matching between the first
/// min(max_points, |X|, |Y|) points of X and a subset of Y by alternating
/// one-point adjunctions, each bounded by the slack schedule; the result is
/// re-verified by an independent exact distortion computation. FAILURE is a
/// value reporting the first stuck step.
inline MatchResult almost_isometry(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                   const MatchPlan& plan) {
    plan.check();
    const std::size_t m = std::min({plan.max_points, X.size(), Y.size()});

    std::vector<std::pair<std::size_t, std::size_t>> pairs; // (x index, y index)
    std::vector<bool> x_matched(X.size(), false), y_matched(Y.size(), false);
    Rat running(1);

    auto next_unmatched = [m](const std::vector<bool>& matched) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < m; ++i)
            if (!matched[i])
                return i;
        return std::nullopt;
    };

    MatchResult res;
    std::size_t step = 0;
    while (true) {
        std::optional<std::size_t> x_next = next_unmatched(x_matched);
        if (!x_next)
            break; // X prefix fully matched
        const bool x_turn = plan.order == SideOrder::ForthOnly || step % 2 == 0;
        std::optional<std::size_t> y_next =
            plan.order == SideOrder::Alternate ? next_unmatched(y_matched) : std::nullopt;
        const Rat& bound = plan.slack_at(step);

        if (x_turn || !y_next) {
            detail::WitnessPick pick = detail::adjoin_step(X, Y, pairs, *x_next, bound);
            if (!pick.found) {
                res.failure = {step, 'X', *x_next, bound, "no pool point admits the X-side point"};
                return res;
            }
            pairs.emplace_back(*x_next, pick.index);
            x_matched[*x_next] = true;
            y_matched[pick.index] = true;
            if (pick.worst > running)
                running = pick.worst;
        } else {
            std::vector<std::pair<std::size_t, std::size_t>> flipped;
            flipped.reserve(pairs.size());
            for (const auto& [a, b] : pairs)
                flipped.emplace_back(b, a);
            detail::WitnessPick pick = detail::adjoin_step(Y, X, flipped, *y_next, bound);
            if (!pick.found) {
                res.failure = {step, 'Y', *y_next, bound, "no pool point admits the Y-side point"};
                return res;
            }
            pairs.emplace_back(pick.index, *y_next);
            x_matched[pick.index] = true;
            y_matched[*y_next] = true;
            if (pick.worst > running)
                running = pick.worst;
        }
        // step invariant: the partial map stays strictly inside the schedule
        if (!(running < bound))
            throw error("internal: step distortion escaped the slack bound");
        ++step;
    }

    // Restrict to the X prefix and re-verify independently.
    std::vector<std::pair<std::size_t, std::size_t>> prefix_pairs;
    for (const auto& [a, b] : pairs)
        if (a < m)
            prefix_pairs.emplace_back(a, b);
    std::sort(prefix_pairs.begin(), prefix_pairs.end());
    res.map = make_partial_map(X, Y, prefix_pairs);

    BilipCheck check = certify_bilip(res.map, plan.lambda);
    if (!check.ok)
        throw error("internal: constructed matching fails independent certification");
    res.success = true;
    res.distortion = check.d.value;
    return res;
}

} // namespace urykit

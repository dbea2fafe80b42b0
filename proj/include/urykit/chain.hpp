#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "urykit/errors.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/partial_map.hpp"
#include "urykit/rat.hpp"

namespace urykit {

inline constexpr std::size_t kDefaultChainBudget = 64;

/// A finite space with an increasing chain of point-index subsets
/// X_0 <= X_1 <= ... <= X_m and a distinguished point beta outside X_m.
struct ChainedSpace {
    FiniteMetricSpace space;
    std::vector<std::vector<std::size_t>> chain;
    std::size_t beta = 0;
};

inline void check_chained_space(const ChainedSpace& cs) {
    if (cs.beta >= cs.space.size())
        throw input_error("beta index out of range");
    if (cs.chain.empty())
        throw input_error("chain is empty");
    std::set<std::size_t> prev;
    for (std::size_t n = 0; n < cs.chain.size(); ++n) {
        if (cs.chain[n].empty())
            throw input_error("chain stage " + std::to_string(n) + " is empty");
        std::set<std::size_t> cur(cs.chain[n].begin(), cs.chain[n].end());
        for (std::size_t i : cur) {
            if (i >= cs.space.size())
                throw input_error("chain stage " + std::to_string(n) + " references point " +
                                  std::to_string(i) + " out of range");
            if (i == cs.beta)
                throw input_error("beta belongs to chain stage " + std::to_string(n));
        }
        if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()))
            throw input_error("chain stage " + std::to_string(n) +
                              " does not contain its predecessor");
        prev = std::move(cur);
    }
}

/// eps[n] = exact distance of beta from stage X_n (min over the stage).
/// Weakly decreasing and positive for every valid ChainedSpace.
inline std::vector<Rat> epsilon_sequence(const ChainedSpace& cs) {
    check_chained_space(cs);
    std::vector<Rat> eps;
    eps.reserve(cs.chain.size());
    for (const auto& stage : cs.chain) {
        Rat best = cs.space.d[cs.beta][stage.front()];
        for (std::size_t i : stage) {
            const Rat& d = cs.space.d[cs.beta][i];
            if (d < best)
                best = d;
        }
        eps.push_back(best);
    }
    return eps;
}

inline void check_eps(const std::vector<Rat>& eps) {
    for (std::size_t n = 0; n < eps.size(); ++n) {
        if (eps[n] <= 0)
            throw input_error("epsilon sequence must be positive");
        if (n + 1 < eps.size() && eps[n] < eps[n + 1])
            throw input_error("epsilon sequence must be weakly decreasing");
    }
}

/// {n : eps[n]/eps[n+1] > 2K^2}, strict, exact.
inline std::set<std::size_t> phi_set(const std::vector<Rat>& eps, unsigned K) {
    if (K == 0)
        throw input_error("K must be positive");
    check_eps(eps);
    const Rat threshold = Rat(2) * K * K;
    std::set<std::size_t> out;
    for (std::size_t n = 0; n + 1 < eps.size(); ++n)
        if (eps[n] / eps[n + 1] > threshold)
            out.insert(n);
    return out;
}

struct ThetaCheck {
    bool strict_form = false; ///< every ratio is exactly 1 or above 4K^4
    std::set<std::size_t> theta_set;
};

/// theta_set = {n : ratio > 4K^4}; strict_form reports the literal side
/// condition "every ratio is 1 or above the threshold".
inline ThetaCheck theta_check(const std::vector<Rat>& eps, unsigned K) {
    if (K == 0)
        throw input_error("K must be positive");
    check_eps(eps);
    const Rat threshold = Rat(4) * K * K * K * K;
    ThetaCheck out;
    out.strict_form = true;
    for (std::size_t n = 0; n + 1 < eps.size(); ++n) {
        Rat ratio = eps[n] / eps[n + 1];
        if (ratio > threshold)
            out.theta_set.insert(n);
        else if (ratio != 1)
            out.strict_form = false;
    }
    return out;
}

/// The full ratio profile of a chained space at constant K.
struct RatioProfile {
    std::vector<Rat> eps;
    unsigned K = 1;
    std::set<std::size_t> phi;
    std::set<std::size_t> theta;
    bool strict_form = false;
};

inline RatioProfile ratio_profile(const ChainedSpace& cs, unsigned K) {
    RatioProfile p;
    p.eps = epsilon_sequence(cs);
    p.K = K;
    p.phi = phi_set(p.eps, K);
    ThetaCheck t = theta_check(p.eps, K);
    p.theta = std::move(t.theta_set);
    p.strict_form = t.strict_form;
    return p;
}

enum class DecodeThreshold {
    Source, ///< Phi reading: ratio > 2K^2
    Image,  ///< Theta reading: ratio > 4K^4
};

inline std::set<std::size_t> decode_set(const ChainedSpace& cs, unsigned K,
                                        DecodeThreshold mode) {
    std::vector<Rat> eps = epsilon_sequence(cs);
    if (mode == DecodeThreshold::Source)
        return phi_set(eps, K);
    return theta_check(eps, K).theta_set;
}

/// One checked inequality instance with its exact sides.
struct TransferLine {
    std::size_t n = 0;
    Rat lower, value, upper;
    bool pass = false;
};

struct TransferReport {
    bool all_pass = true;
    /// per stage n: eps_n/(2K) <= eps'_n <= K*eps_n
    std::vector<TransferLine> stage_bounds;
    /// per consecutive pair: r_n/(2K^2) <= r'_n <= 2K^2*r_n for the ratios
    /// r_n = eps_n/eps_{n+1}
    std::vector<TransferLine> ratio_bounds;
};

/// Checks the transfer inequalities for a total chain-respecting map f with
/// a certified exact K-bi-Lipschitz bound (d1/K <= d2 <= K d1 on all pairs).
/// Violations of either precondition are errors; the inequalities themselves
/// are reported with exact values, pass/fail each.
inline TransferReport verify_transfer(const ChainedSpace& src, const ChainedSpace& dst,
                                      const PartialMap& f, unsigned K) {
    if (K == 0)
        throw input_error("K must be positive");
    check_chained_space(src);
    check_chained_space(dst);
    check_partial_map(f);
    if (!spaces_equal(f.source, src.space) || !spaces_equal(f.target, dst.space))
        throw input_error("map endpoints do not match the chained spaces");
    if (f.pairs.size() != src.space.size())
        throw input_error("map must be total on the source points");
    if (src.chain.size() != dst.chain.size())
        throw input_error("chains must have equal length");

    std::vector<std::size_t> image(src.space.size());
    for (const auto& [a, b] : f.pairs)
        image[a] = b;
    if (image[src.beta] != dst.beta)
        throw precondition_error("f does not send the source beta to the target beta");
    for (std::size_t n = 0; n < src.chain.size(); ++n) {
        std::set<std::size_t> stage(dst.chain[n].begin(), dst.chain[n].end());
        for (std::size_t i : src.chain[n])
            if (!stage.count(image[i]))
                throw precondition_error("f is not chain-respecting at stage " +
                                         std::to_string(n));
    }

    // exact K-bi-Lipschitz certification
    for (std::size_t i = 0; i < src.space.size(); ++i)
        for (std::size_t j = i + 1; j < src.space.size(); ++j) {
            const Rat& d1 = src.space.d[i][j];
            const Rat& d2 = dst.space.d[image[i]][image[j]];
            if (d2 * K < d1 || d2 > d1 * K)
                throw precondition_error(
                    "map is not K-bi-Lipschitz at pair (" + std::to_string(i) + "," +
                    std::to_string(j) + "): d1=" + rat_str(d1) + " d2=" + rat_str(d2));
        }

    std::vector<Rat> eps = epsilon_sequence(src);
    std::vector<Rat> eps_img = epsilon_sequence(dst);

    TransferReport rep;
    for (std::size_t n = 0; n < eps.size(); ++n) {
        TransferLine line;
        line.n = n;
        line.lower = eps[n] / (2 * K);
        line.value = eps_img[n];
        line.upper = eps[n] * K;
        line.pass = line.lower <= line.value && line.value <= line.upper;
        rep.all_pass = rep.all_pass && line.pass;
        rep.stage_bounds.push_back(line);
    }
    const Rat kk = Rat(2) * K * K;
    for (std::size_t n = 0; n + 1 < eps.size(); ++n) {
        Rat r = eps[n] / eps[n + 1];
        TransferLine line;
        line.n = n;
        line.lower = r / kk;
        line.value = eps_img[n] / eps_img[n + 1];
        line.upper = r * kk;
        line.pass = line.lower <= line.value && line.value <= line.upper;
        rep.all_pass = rep.all_pass && line.pass;
        rep.ratio_bounds.push_back(line);
    }
    return rep;
}

/// Codes a finite set A <= {0..m-1} into an ultrametric chained space whose
/// consecutive eps-ratios are >= gap exactly at the indices of A and exactly
/// 1 elsewhere, so that phi_set recovers A and the theta side condition
/// holds in its strict form. Points are the branches of a prefix tree with
/// d = 1/(common prefix length + 1); stage n contributes one point
/// diverging from the distinguished branch at depth D_n, where
/// D_0 = 0 and D_{n+1}+1 = ceil(gap * (D_n+1)) for n in A, else D_n.
inline ChainedSpace encode_set(const std::set<std::size_t>& A, std::size_t m, unsigned K,
                               const Rat& gap, std::size_t depth_budget = kDefaultChainBudget) {
    if (K == 0)
        throw input_error("K must be positive");
    Rat floor_gap = Rat(8);
    for (unsigned i = 0; i < 6; ++i)
        floor_gap *= K;
    if (gap <= floor_gap)
        throw precondition_error("gap must exceed 8K^6 = " + rat_str(floor_gap));
    if (m > depth_budget)
        throw budget_error("chain length " + std::to_string(m) + " exceeds the depth budget " +
                           std::to_string(depth_budget));
    for (std::size_t a : A)
        if (a >= m)
            throw input_error("A contains " + std::to_string(a) + " outside {0.." +
                              std::to_string(m ? m - 1 : 0) + "}");

    // depth of the stage-n divergence point; eps_n = 1/(D_n + 1)
    std::vector<Int> depth_plus_one(m + 1);
    depth_plus_one[0] = 1;
    for (std::size_t n = 0; n < m; ++n) {
        if (A.count(n))
            depth_plus_one[n + 1] = rat_ceil(gap * Rat(depth_plus_one[n]));
        else
            depth_plus_one[n + 1] = depth_plus_one[n];
    }

    ChainedSpace cs;
    const std::size_t points = m + 2; // beta plus one divergence point per stage
    cs.space.labels.push_back("beta");
    for (std::size_t n = 0; n <= m; ++n)
        cs.space.labels.push_back("s" + std::to_string(n));
    cs.space.d.assign(points, std::vector<Rat>(points, Rat(0)));
    cs.beta = 0;

    auto point_depth = [&](std::size_t idx) -> const Int& { // idx >= 1
        return depth_plus_one[idx - 1];
    };
    for (std::size_t i = 1; i < points; ++i) {
        Rat to_beta(Int(1), point_depth(i));
        cs.space.d[0][i] = to_beta;
        cs.space.d[i][0] = to_beta;
        for (std::size_t j = i + 1; j < points; ++j) {
            // common prefix of two divergence points is the shallower depth
            const Int& shallower = point_depth(i) < point_depth(j) ? point_depth(i)
                                                                   : point_depth(j);
            Rat dd(Int(1), shallower);
            cs.space.d[i][j] = dd;
            cs.space.d[j][i] = dd;
        }
    }

    cs.chain.resize(m + 1);
    for (std::size_t n = 0; n <= m; ++n) {
        for (std::size_t j = 0; j <= n; ++j)
            cs.chain[n].push_back(j + 1); // point s_j at index j+1
    }
    return cs;
}

} // namespace urykit

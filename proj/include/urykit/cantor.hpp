#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "urykit/errors.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/partial_map.hpp"
#include "urykit/rat.hpp"
#include "urykit/rng.hpp"

namespace urykit {

inline constexpr std::size_t kDefaultCantorBudget = 1u << 16;

/// The branches of the truncated tree T_A, depth N, as a finite ultrametric
/// space with d(eta, nu) = base^-(longest common prefix length).
struct BranchSpace {
    std::vector<unsigned> branching_levels; ///< A intersected with [0, N)
    unsigned depth = 0;
    unsigned base = 2;
    FiniteMetricSpace space; ///< labels are the branch bit strings
};

/// Builds D_A truncated at depth N: bit strings of length N that are 0
/// outside the branching levels, in lexicographic order.
inline BranchSpace branch_space(const std::vector<unsigned>& A, unsigned depth, unsigned base,
                                std::size_t budget = kDefaultCantorBudget) {
    if (base < 2)
        throw input_error("base must be at least 2");
    if (depth < 1)
        throw input_error("depth must be at least 1");
    BranchSpace bs;
    bs.depth = depth;
    bs.base = base;
    std::set<unsigned> levels(A.begin(), A.end());
    for (unsigned a : levels)
        if (a < depth)
            bs.branching_levels.push_back(a);

    const std::size_t free_bits = bs.branching_levels.size();
    if (free_bits >= 63 || (std::size_t(1) << free_bits) > budget)
        throw budget_error("branch space would have 2^" + std::to_string(free_bits) +
                           " points, beyond the budget of " + std::to_string(budget));
    const std::size_t count = std::size_t(1) << free_bits;

    std::vector<std::string> branches;
    branches.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::string s(depth, '0');
        for (std::size_t bit = 0; bit < free_bits; ++bit)
            if (mask & (std::size_t(1) << (free_bits - 1 - bit)))
                s[bs.branching_levels[bit]] = '1';
        branches.push_back(std::move(s));
    }
    std::sort(branches.begin(), branches.end());

    bs.space.labels = branches;
    bs.space.d.assign(count, std::vector<Rat>(count, Rat(0)));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) {
            unsigned delta = 0;
            while (branches[i][delta] == branches[j][delta])
                ++delta;
            Rat dd = neg_pow(base, delta);
            bs.space.d[i][j] = dd;
            bs.space.d[j][i] = dd;
        }
    return bs;
}

enum class GapForm {
    Ratio,      ///< a/b > n or b/a > n (the literal condition)
    Difference, ///< |a - b| > n (what squaring delivers)
};

struct GapWitness {
    bool found = false;
    Int k; ///< least threshold: all a in A, b in B above k satisfy the form
};

/// Least k <= search_bound such that every pair a in A, b in B with
/// a, b > k satisfies the chosen form. Equivalent to the exhaustive per-k
/// scan: a pair constrains exactly the thresholds below min(a, b), so the
/// least admissible k is the max of min(a, b) over failing pairs.
inline GapWitness check_gap_condition(const std::vector<Int>& A, const std::vector<Int>& B,
                                      const Int& n, GapForm form, const Int& search_bound) {
    if (n < 1)
        throw input_error("n must be at least 1");
    Int least = 0;
    for (const Int& a : A)
        for (const Int& b : B) {
            bool pass;
            if (form == GapForm::Ratio)
                pass = a > n * b || b > n * a;
            else
                pass = boost::multiprecision::abs(a - b) > n;
            if (!pass) {
                Int cut = a < b ? a : b;
                if (cut > least)
                    least = cut;
            }
        }
    if (least > search_bound)
        return {};
    return {true, least};
}

enum class GapTransformKind { Square, Factorial };

/// SQUARE maps each element to its square; FACTORIAL to its factorial.
/// Arbitrary precision, but factorial inputs are capped by magnitude_budget.
inline std::vector<Int> gap_transform(const std::vector<Int>& A, GapTransformKind kind,
                                      const Int& magnitude_budget = Int(10000)) {
    std::vector<Int> out;
    out.reserve(A.size());
    for (const Int& a : A) {
        if (a < 0)
            throw input_error("set elements must be nonnegative");
        if (kind == GapTransformKind::Square) {
            out.push_back(a * a);
        } else {
            if (a > magnitude_budget)
                throw budget_error("factorial input " + a.str() + " exceeds magnitude budget " +
                                   magnitude_budget.str());
            Int f = 1;
            for (Int i = 2; i <= a; ++i)
                f *= i;
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

enum class FamilyTag { Raw, Squared, Factorial };

/// An almost disjoint family at desk scale: finite truncations of sets with
/// pairwise finite intersection, plus the recorded intersections.
struct GapFamily {
    std::vector<std::vector<Int>> members;
    FamilyTag tag = FamilyTag::Raw;
};

/// Members are the prefix codes of distinct infinite binary branches: branch
/// bits come from the seed, the code of a length-l prefix is its standard
/// heap index 2^l + value, and members keep all codes up to element_bound.
/// Two distinct branches share exactly the codes of their common prefix, so
/// intersections are finite by construction.
inline GapFamily ad_family(std::size_t count, const Int& element_bound, std::uint64_t seed) {
    if (count < 2)
        throw input_error("family needs at least 2 members");
    if (element_bound < 3)
        throw input_error("element bound must admit at least one branch level");

    // deepest full tree level whose codes all fit: 2^(l+1) - 1 <= bound
    unsigned max_len = 0;
    while (int_pow(Int(2), max_len + 2) - 1 <= element_bound)
        ++max_len;
    if (max_len == 0)
        throw input_error("element bound admits no branch levels");
    if (max_len < 63 && count > (std::size_t(1) << max_len))
        throw input_error("not enough distinct branches below the element bound");

    GapFamily fam;
    std::set<std::vector<bool>> used;
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<bool> bits(max_len);
        std::size_t attempts = 0;
        do {
            if (++attempts > 100000)
                throw input_error("could not draw a fresh branch; family too dense for the bound");
            for (unsigned l = 0; l < max_len; ++l)
                bits[l] = rng.next() & 1;
        } while (used.count(bits));
        used.insert(bits);
        std::vector<Int> codes;
        Int value = 0;
        for (unsigned l = 1; l <= max_len; ++l) {
            value = value * 2 + (bits[l - 1] ? 1 : 0);
            Int code = int_pow(Int(2), l) + value;
            if (code <= element_bound)
                codes.push_back(code);
        }
        fam.members.push_back(std::move(codes));
    }
    return fam;
}

inline std::vector<Int> set_intersection(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::set<Int> sb(b.begin(), b.end());
    std::vector<Int> out;
    for (const Int& x : a)
        if (sb.count(x))
            out.push_back(x);
    return out;
}

/// Certificate that no injection of small-scale points of D_A into D_B can
/// be n-bi-Lipschitz at the recorded truncation depth.
struct IncompCertificate {
    bool certified = false;
    unsigned k = 0;            ///< scale cutoff: small means distance <= base^-k
    unsigned depth = 0;
    unsigned base = 2;
    Int n;
    std::size_t small_pairs = 0;  ///< D_A pairs at distance <= base^-k
    std::size_t cross_checks = 0; ///< exhaustively verified pair-against-pair ratios
    std::string reason;           ///< set when refuted
};

/// Finds the least k such that the small-scale part of spectrum(D_A) is
/// ratio-incompatible (beyond n, both ways) with all of spectrum(D_B), then
/// verifies the claim exhaustively over all point pairs at depth N. A k
/// counts only if D_A still has a distance at or below base^-k (otherwise
/// the truncation has no small scales left to certify). REFUTED when no k
/// works at this truncation.
inline IncompCertificate incomparability_certificate(const std::vector<unsigned>& A,
                                                     const std::vector<unsigned>& B, const Int& n,
                                                     unsigned base, unsigned depth,
                                                     std::size_t budget = kDefaultCantorBudget) {
    if (n < 2)
        throw input_error("n must be at least 2");
    IncompCertificate cert;
    cert.depth = depth;
    cert.base = base;
    cert.n = n;

    std::set<unsigned> sa, sb;
    for (unsigned a : A)
        if (a < depth)
            sa.insert(a);
    for (unsigned b : B)
        if (b < depth)
            sb.insert(b);
    if (sa.empty()) {
        cert.reason = "D_A has no distances at this depth";
        return cert;
    }

    // base^|a-b| > n  <=>  the two scale values are ratio-incompatible.
    auto incompatible = [&](unsigned a, unsigned b) {
        unsigned gap = a > b ? a - b : b - a;
        return int_pow(Int(base), gap) > n;
    };

    bool found = false;
    unsigned k = 0;
    for (unsigned cand = 0; cand < depth && !found; ++cand) {
        bool tail_nonempty = false;
        bool all_ok = true;
        for (unsigned a : sa) {
            if (a < cand)
                continue;
            tail_nonempty = true;
            for (unsigned b : sb)
                if (!incompatible(a, b)) {
                    all_ok = false;
                    break;
                }
            if (!all_ok)
                break;
        }
        if (tail_nonempty && all_ok) {
            found = true;
            k = cand;
        }
    }
    if (!found) {
        cert.reason = "no scale cutoff separates the two spectra at this depth";
        return cert;
    }

    // Exhaustive verification over all point pairs of both spaces.
    BranchSpace da = branch_space(A, depth, base, budget);
    BranchSpace db = branch_space(B, depth, base, budget);
    const Rat cutoff = neg_pow(base, k);
    std::size_t small_pairs = 0, checks = 0;
    for (std::size_t i = 0; i < da.space.size(); ++i)
        for (std::size_t j = i + 1; j < da.space.size(); ++j) {
            const Rat& s = da.space.d[i][j];
            if (s > cutoff)
                continue;
            ++small_pairs;
            for (std::size_t u = 0; u < db.space.size(); ++u)
                for (std::size_t v = u + 1; v < db.space.size(); ++v) {
                    ++checks;
                    if (two_sided_ratio(db.space.d[u][v], s) <= n)
                        throw error("internal: spectrum scan certified an incompatible pair");
                }
        }
    cert.certified = true;
    cert.k = k;
    cert.small_pairs = small_pairs;
    cert.cross_checks = checks;
    return cert;
}

/// The natural map of a base-3 branch space into [0, 1]: branch eta goes to
/// sum of 2*eta_i / 3^(i+1).
struct LineEmbedding {
    std::vector<Rat> coords;
    FiniteMetricSpace line;
    PartialMap map;
    Rat distortion{1};
};

inline LineEmbedding embed_cantor_into_line(const BranchSpace& bs) {
    if (bs.base != 3)
        throw input_error("line embedding is defined for base 3");
    LineEmbedding emb;
    const std::size_t n = bs.space.size();
    for (std::size_t i = 0; i < n; ++i) {
        Rat x(0);
        for (unsigned pos = 0; pos < bs.depth; ++pos)
            if (bs.space.labels[i][pos] == '1')
                x += Rat(Int(2), int_pow(Int(3), pos + 1));
        emb.coords.push_back(x);
    }
    emb.line.labels = default_labels(n, "t");
    emb.line.d.assign(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rat dd = rat_abs(emb.coords[i] - emb.coords[j]);
            emb.line.d[i][j] = dd;
            emb.line.d[j][i] = dd;
        }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        pairs.emplace_back(i, i);
    emb.map = make_partial_map(bs.space, emb.line, pairs);
    Distortion d = distortion(emb.map);
    if (d.infinite)
        throw error("internal: line embedding collapsed a pair");
    emb.distortion = d.value;
    return emb;
}

} // namespace urykit

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "urykit/errors.hpp"

namespace urykit {

/// Arbitrary-precision integer.
using Int = boost::multiprecision::cpp_int;

/// Exact rational number, kept in canonical lowest terms with positive
/// denominator by the backing type. The only numeric type used for
/// distances, Lipschitz constants and thresholds.
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

/// Build a rational from an integer pair. den must be nonzero.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0)
        throw input_error("rational with zero denominator");
    return Rat(num, den);
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

/// Canonical wire form "num/den", always with an explicit denominator.
inline std::string rat_str(const Rat& q) {
    return rat_num(q).str() + "/" + rat_den(q).str();
}

namespace detail {

inline bool is_canonical_int_token(std::string_view t, bool allow_sign) {
    if (allow_sign && !t.empty() && t.front() == '-')
        t.remove_prefix(1);
    if (t.empty())
        return false;
    for (char c : t)
        if (c < '0' || c > '9')
            return false;
    // forbid leading zeros ("03"), but "0" itself is fine
    return t.size() == 1 || t.front() != '0';
}

} // namespace detail

/// Parse the canonical wire form "num/den": lowest terms, positive
/// denominator, no leading zeros, no "-0". Anything else is rejected.
inline Rat parse_rat(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        throw input_error("rational '" + std::string(text) + "' is not in num/den form");
    const std::string_view num_tok = text.substr(0, slash);
    const std::string_view den_tok = text.substr(slash + 1);
    if (!detail::is_canonical_int_token(num_tok, true) ||
        !detail::is_canonical_int_token(den_tok, false))
        throw input_error("rational '" + std::string(text) + "' is malformed");
    if (num_tok == "-0")
        throw input_error("rational '" + std::string(text) + "' is non-canonical");
    Int num{std::string(num_tok)};
    Int den{std::string(den_tok)};
    if (den == 0)
        throw input_error("rational '" + std::string(text) + "' has zero denominator");
    if (boost::multiprecision::gcd(Int(boost::multiprecision::abs(num)), den) != 1)
        throw input_error("rational '" + std::string(text) + "' is not in lowest terms");
    return Rat(num, den);
}

/// max(a/b, b/a) for positive a, b: the two-sided ratio of a matched pair.
inline Rat two_sided_ratio(const Rat& a, const Rat& b) {
    Rat r = a / b;
    Rat s = b / a;
    return r < s ? s : r;
}

/// Exact power base^exp for integer base >= 1.
inline Int int_pow(const Int& base, unsigned exp) {
    Int r = 1;
    for (unsigned i = 0; i < exp; ++i)
        r *= base;
    return r;
}

/// base^(-exp) as an exact rational.
inline Rat neg_pow(unsigned base, unsigned exp) {
    return Rat(Int(1), int_pow(Int(base), exp));
}

/// Least integer >= q.
inline Int rat_ceil(const Rat& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int quot = n / d;
    if (quot * d != n && n > 0)
        ++quot;
    return quot;
}

} // namespace urykit

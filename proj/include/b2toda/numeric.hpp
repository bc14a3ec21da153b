#pragma once

// Exact integer and rational scalars shared by every module.

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "b2toda/error.hpp"

namespace b2toda {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Mathematical modulus: result always lies in [0, m).
inline Integer floor_mod(const Integer& value, const Integer& m)
{
    Integer r = value % m;
    if (r < 0) {
        r += m;
    }
    return r;
}

inline bool is_integral(const Rational& r)
{
    return boost::multiprecision::denominator(r) == 1;
}

inline Integer to_integer(const Rational& r)
{
    if (!is_integral(r)) {
        throw Error("non_integral", "expected an integer, got " + r.str());
    }
    return boost::multiprecision::numerator(r);
}

/// Canonical "p/q" text with q > 0, always including the denominator.
inline std::string to_fraction_string(const Rational& r)
{
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

/// Compact text: "p" when integral, otherwise "p/q".
inline std::string to_compact_string(const Rational& r)
{
    if (is_integral(r)) {
        return boost::multiprecision::numerator(r).str();
    }
    return to_fraction_string(r);
}

inline Integer parse_integer(std::string_view text)
{
    std::string s(text);
    std::size_t begin = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        begin = 1;
    }
    if (begin == s.size()) {
        throw Error("parse_error", "empty integer literal '" + s + "'");
    }
    for (std::size_t i = begin; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            throw Error("parse_error", "invalid integer literal '" + s + "'");
        }
    }
    if (s[0] == '+') {
        s.erase(0, 1);
    }
    return Integer(s);
}

/// Accepts "p" or "p/q" with q != 0.
inline Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) {
        throw Error("parse_error", "zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

inline bool fits_int64(const Integer& v)
{
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

} // namespace b2toda

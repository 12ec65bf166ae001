#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace jetvar {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// "p" or "p/q"; q is always positive in cpp_rational's canonical form.
inline std::string rational_str(const Rational& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

inline Rational rational_pow(const Rational& base, int e) {
    Rational acc(1);
    Rational b = base;
    int k = e < 0 ? -e : e;
    for (; k > 0; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    if (e < 0) acc = Rational(1) / acc;
    return acc;
}

} // namespace jetvar

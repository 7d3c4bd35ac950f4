#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace conicfib {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// x^e for integer e (e < 0 allowed when x != 0).
inline Rational rat_pow(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? x : Rational(1) / x;
    unsigned long k = e > 0 ? e : -e;
    Rational out(1);
    while (k) {
        if (k & 1) out *= base;
        base *= base;
        k >>= 1;
    }
    return out;
}

// "num/den" (or plain "num" when den == 1); exact, for JSON and golden output.
inline std::string rat_to_string(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
}

inline double rat_to_double(const Rational& x) {
    return x.convert_to<double>();
}

inline long double rat_to_ld(const Rational& x) {
    return x.convert_to<long double>();
}

}  // namespace conicfib

#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "rota/errors.hpp"

namespace rota {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Directed dyadic compression.  Exact rational arithmetic never rounds, but
// denominators snowball across long products; snapping outward to multiples
// of 2^-bits after each step keeps numbers small while every interval still
// contains the true value.
inline Rat round_dyadic_down(const Rat& x, unsigned bits) {
    Int scale = Int(1) << bits;
    Int num = numerator(x) * scale;
    Int den = denominator(x); // > 0 by cpp_rational invariant
    Int q = num / den;
    if (q * den > num) // fix toward -infinity for negatives
        --q;
    return Rat(q, scale);
}

inline Rat round_dyadic_up(const Rat& x, unsigned bits) {
    Int scale = Int(1) << bits;
    Int num = numerator(x) * scale;
    Int den = denominator(x);
    Int q = num / den;
    if (q * den < num)
        ++q;
    return Rat(q, scale);
}

// Closed interval [lo, hi] guaranteed to contain the true value.
struct Interval {
    Rat lo, hi;

    Rat width() const { return hi - lo; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

inline Interval iv_point(const Rat& v) { return {v, v}; }

inline Interval iv_round_out(const Interval& a, unsigned bits) {
    return {round_dyadic_down(a.lo, bits), round_dyadic_up(a.hi, bits)};
}

// Exact interval product with sign handling, then outward compression.
inline Interval iv_mul(const Interval& a, const Interval& b, unsigned bits) {
    Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    Rat lo = std::min(std::min(c1, c2), std::min(c3, c4));
    Rat hi = std::max(std::max(c1, c2), std::max(c3, c4));
    return iv_round_out({lo, hi}, bits);
}

inline Interval iv_one_minus(const Interval& a) { return {1 - a.hi, 1 - a.lo}; }

// Decimal rendering that never narrows the interval: lower endpoints round
// toward -inf, upper endpoints toward +inf.
inline std::string rat_to_decimal(const Rat& x, unsigned digits, bool round_up_dir) {
    Int pow10 = 1;
    for (unsigned i = 0; i < digits; ++i)
        pow10 *= 10;
    Int num = numerator(x) * pow10;
    Int den = denominator(x);
    Int q = num / den;
    if (round_up_dir) {
        if (q * den < num)
            ++q;
    } else {
        if (q * den > num)
            --q;
    }
    bool neg = q < 0;
    if (neg)
        q = -q;
    std::string body = q.str();
    if (body.size() <= digits)
        body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
    return (neg ? "-" : "") + body;
}

} // namespace rota

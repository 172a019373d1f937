#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace gnum {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

/// 2^n for integer n (n may be negative).
inline Rat pow2(const Int& n) {
    if (n >= 0) {
        Int v = Int(1) << static_cast<unsigned>(n);
        return Rat(v);
    }
    Int v = Int(1) << static_cast<unsigned>(-n);
    return Rat(1, v);
}

/// Floor of p/q for integers, q > 0.
inline Int floor_div(const Int& p, const Int& q) {
    Int d = p / q;
    if (p % q != 0 && (p < 0) != (q < 0)) --d;
    return d;
}

inline Int ceil_div(const Int& p, const Int& q) { return -floor_div(-p, q); }

inline Int rat_floor(const Rat& r) { return floor_div(rat_num(r), rat_den(r)); }
inline Int rat_ceil(const Rat& r) { return ceil_div(rat_num(r), rat_den(r)); }

/// Number of bits of |n|; bit_length(0) = 0.
inline long bit_length(const Int& n) {
    if (n == 0) return 0;
    return static_cast<long>(msb(abs(n))) + 1;
}

/// A rigorous upper bound on log2(r) for r > 0, as an integer.
inline Int log2_upper(const Rat& r) {
    if (r <= 0) throw std::invalid_argument("log2_upper: nonpositive argument");
    return Int(bit_length(rat_num(r)) - bit_length(rat_den(r)) + 1);
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

/// Parses "p" or "p/q"; throws on malformed input or zero denominator.
Rat rat_parse(const std::string& text);

}  // namespace gnum

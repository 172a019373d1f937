#pragma once

#include <vector>

#include "gnum/rational.hpp"

namespace gnum {

/// One term of a dyadic-exponential sum: the real number c * 2^(-e).
struct Exp2Term {
    Rat coeff;
    Rat exponent;
};

/// Exact sign of sum c_i * 2^(-e_i).
///
/// Zero is decided symbolically: with q the lcm of the exponent
/// denominators and t := 2^(-1/q), the sum is t^m * Q(t) for a polynomial
/// Q of degree < q, and x^q - 1/2 is the minimal polynomial of t, so the
/// sum vanishes iff Q does. A nonzero sum is then signed by interval
/// refinement with directed rounding, doubling the working precision
/// (starting at 64 bits) until the enclosure excludes zero.
int sign_exp2_sum(const std::vector<Exp2Term>& terms);

}  // namespace gnum

#pragma once

#include <string>
#include <vector>

#include "gnum/rational.hpp"
#include "gnum/sign.hpp"

namespace gnum {

/// Exact per-index value of a net: the real number sum c_i * 2^(-k*a_i)
/// at a fixed grid index k. Pairs sorted by exponent, coefficients
/// non-zero; the empty list is 0.
class PuiseuxValue {
  public:
    struct Pair {
        Rat coeff;
        Rat exponent;
        friend bool operator==(const Pair&, const Pair&) = default;
    };

    PuiseuxValue() = default;
    static PuiseuxValue make(std::vector<Pair> pairs);
    static PuiseuxValue constant(const Rat& c) { return make({{c, Rat(0)}}); }
    static PuiseuxValue monomial(const Rat& c, const Rat& a) { return make({{c, a}}); }

    const std::vector<Pair>& pairs() const { return pairs_; }
    bool is_zero_form() const { return pairs_.empty(); }

    friend PuiseuxValue operator+(const PuiseuxValue& a, const PuiseuxValue& b);
    friend PuiseuxValue operator-(const PuiseuxValue& a);
    friend PuiseuxValue operator-(const PuiseuxValue& a, const PuiseuxValue& b);
    friend PuiseuxValue operator*(const PuiseuxValue& a, const PuiseuxValue& b);
    friend bool operator==(const PuiseuxValue&, const PuiseuxValue&) = default;

    PuiseuxValue scaled(const Rat& c) const;
    /// Multiplies by 2^(-k*a), i.e. shifts every exponent by a.
    PuiseuxValue shifted(const Rat& a) const;
    /// Same real value read at index k2 instead of k1 (exponents scale by k1/k2).
    PuiseuxValue rebased(long k1, long k2) const;

    std::string str() const;

  private:
    std::vector<Pair> pairs_;
};

/// Exact sign of the value of u at grid index k.
int sign_at(const PuiseuxValue& u, long k);

/// Exact sign of (value of u at k) - (value of v at k).
int compare_at(const PuiseuxValue& u, const PuiseuxValue& v, long k);

/// Exact sign of (value of u at ku) - (value of v at kv).
int compare_values(const PuiseuxValue& u, long ku, const PuiseuxValue& v, long kv);

/// |u| at k, decided exactly.
PuiseuxValue abs_at(const PuiseuxValue& u, long k);

}  // namespace gnum

#pragma once

#include <string>

#include "gnum/rational.hpp"

namespace gnum {

/// Element of the sharp-norm value set: 0 or e^(-rho), rho rational,
/// stored exactly as rho. Ordered by 0 < e^(-rho) and
/// e^(-r1) < e^(-r2) iff r1 > r2.
class ValueNorm {
  public:
    static ValueNorm zero() { return ValueNorm(); }
    static ValueNorm exp_neg(Rat rho) {
        ValueNorm v;
        v.zero_ = false;
        v.rho_ = std::move(rho);
        return v;
    }

    bool is_zero() const { return zero_; }
    const Rat& rho() const {
        if (zero_) throw std::logic_error("ValueNorm::rho on zero");
        return rho_;
    }

    friend bool operator==(const ValueNorm&, const ValueNorm&) = default;
    friend bool operator<(const ValueNorm& a, const ValueNorm& b) {
        if (a.zero_) return !b.zero_;
        if (b.zero_) return false;
        return a.rho_ > b.rho_;
    }
    friend bool operator<=(const ValueNorm& a, const ValueNorm& b) { return a < b || a == b; }
    friend bool operator>(const ValueNorm& a, const ValueNorm& b) { return b < a; }
    friend bool operator>=(const ValueNorm& a, const ValueNorm& b) { return b <= a; }

    friend ValueNorm operator*(const ValueNorm& a, const ValueNorm& b) {
        if (a.zero_ || b.zero_) return zero();
        return exp_neg(a.rho_ + b.rho_);
    }

    friend ValueNorm max(const ValueNorm& a, const ValueNorm& b) { return a < b ? b : a; }
    friend ValueNorm min(const ValueNorm& a, const ValueNorm& b) { return a < b ? a : b; }

    /// "0" or "e^-rho".
    std::string str() const { return zero_ ? "0" : "e^-" + rat_str(rho_); }

  private:
    ValueNorm() : zero_(true) {}
    bool zero_;
    Rat rho_;
};

}  // namespace gnum

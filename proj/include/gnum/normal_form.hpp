#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "gnum/mask.hpp"
#include "gnum/rational.hpp"
#include "gnum/value_norm.hpp"

namespace gnum {

/// Gaussian rational coefficient. Geometry operates on the real case
/// only; arithmetic and valuation accept the full type.
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussRat&, const GaussRat&) = default;
    friend std::strong_ordering operator<=>(const GaussRat& a, const GaussRat& b) {
        if (auto c = a.re.compare(b.re); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        auto c = a.im.compare(b.im);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
};

/// coeff * eps^exponent, active on the indices selected by mask.
struct Term {
    GaussRat coeff;
    Rat exponent;
    Mask mask;

    Term() = default;
    Term(GaussRat c, Rat a, Mask m = Mask::all())
        : coeff(std::move(c)), exponent(std::move(a)), mask(std::move(m)) {}

    friend bool operator==(const Term&, const Term&) = default;
};

/// Canonical finite asymptotic expansion: an element of the representable
/// subring of the generalized numbers. The empty term list is zero.
/// Structural equality of canonical forms is equality in the ring.
class NormalForm {
  public:
    NormalForm() = default;  // zero
    static NormalForm from_terms(const std::vector<Term>& terms);
    static NormalForm constant(const Rat& q) { return from_terms({Term(q, 0)}); }
    static NormalForm monomial(const GaussRat& c, const Rat& a, const Mask& m = Mask::all()) {
        return from_terms({Term(c, a, m)});
    }
    /// eps itself, i.e. the class of (eps_k)_k.
    static NormalForm eps() { return monomial(Rat(1), Rat(1)); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_real() const;

    friend NormalForm operator+(const NormalForm& a, const NormalForm& b);
    friend NormalForm operator-(const NormalForm& a, const NormalForm& b);
    friend NormalForm operator-(const NormalForm& a);
    friend NormalForm operator*(const NormalForm& a, const NormalForm& b);
    friend bool operator==(const NormalForm&, const NormalForm&) = default;

    /// nullopt encodes +infinity (only for zero).
    std::optional<Rat> valuation() const;
    ValueNorm sharp_norm() const;

    /// Union of the term masks: indices where the net can be non-zero.
    Mask support() const;

    /// Non-zero y with x*y == 0, when some residue branch of x vanishes.
    std::optional<NormalForm> annihilator_witness() const;

  private:
    std::vector<Term> terms_;
};

inline ValueNorm distance(const NormalForm& x, const NormalForm& y) {
    return (x - y).sharp_norm();
}

enum class RingOpKind { add, sub, mul, neg };

NormalForm ring_op(RingOpKind kind, const NormalForm& x, const NormalForm& y = NormalForm());

}  // namespace gnum

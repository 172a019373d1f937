#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gnum/errors.hpp"
#include "gnum/normal_form.hpp"

namespace gnum {

/// Element of the exact subfield L = Q(alpha), alpha the class of eps:
/// a fraction of mask-free normal forms. On L the sharp norm is
/// multiplicative, so fractions have the well-defined norm
/// e^-(v(num) - v(den)).
class GenFrac {
  public:
    GenFrac() : num_(), den_(NormalForm::constant(Rat(1))) {}  // zero
    GenFrac(NormalForm num, NormalForm den = NormalForm::constant(Rat(1)));
    static GenFrac from_rat(const Rat& q) { return GenFrac(NormalForm::constant(q)); }
    static GenFrac alpha() { return GenFrac(NormalForm::eps()); }

    const NormalForm& num() const { return num_; }
    const NormalForm& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend GenFrac operator+(const GenFrac& a, const GenFrac& b);
    friend GenFrac operator-(const GenFrac& a, const GenFrac& b);
    friend GenFrac operator-(const GenFrac& a);
    friend GenFrac operator*(const GenFrac& a, const GenFrac& b);
    /// Equality by cross-multiplication (exact).
    friend bool operator==(const GenFrac& a, const GenFrac& b);

    GenFrac inv() const;  // throws precondition_error on zero

    ValueNorm norm() const;

  private:
    NormalForm num_, den_;
};

inline ValueNorm frac_distance(const GenFrac& a, const GenFrac& b) { return (a - b).norm(); }

/// Coordinate vector over L with the max norm.
struct LVector {
    std::vector<GenFrac> coords;

    std::size_t dim() const { return coords.size(); }
    ValueNorm norm() const;

    friend LVector operator+(const LVector& a, const LVector& b);
    friend LVector operator-(const LVector& a, const LVector& b);
    friend LVector operator*(const GenFrac& lambda, const LVector& x);
};

/// L-linear functional by coefficients: phi(x) = sum lambda_i x_i.
struct LFunctional {
    std::vector<GenFrac> coeffs;

    GenFrac apply(const LVector& x) const;
};

/// Dressed ball B_{<= r_x}(phi(x)) with r_x = bound * ||x - a||.
struct HBBall {
    GenFrac center;
    ValueNorm radius;

    bool contains(const GenFrac& p) const { return frac_distance(p, center) <= radius; }
};

struct HBFamily {
    std::vector<HBBall> balls;
    /// Sample indices sorted by radius (stable): order.front() names a
    /// minimal ball, which lies inside every other.
    std::vector<std::size_t> order;
};

/// Ball family of the single-step extension: one ball per sample, checked
/// for consistency of the asserted functional bound and for pairwise
/// comparability (the nestedness dichotomy).
HBFamily hb_ball_family(const LFunctional& phi, const ValueNorm& norm_bound, const LVector& a,
                        const std::vector<LVector>& samples);

struct HBExtension {
    GenFrac alpha;        // value assigned to the new direction a
    HBFamily family;
    std::size_t checked;  // test vectors verified
};

/// Single-step norm-preserving extension: alpha is the minimal ball's
/// center (first among equals); psi(z + lambda*a) := phi(z) + lambda*alpha.
/// Each test vector (z, lambda) is verified exactly against
/// |psi(z - lambda*a)|_e <= norm_bound * ||z - lambda*a||.
HBExtension hb_extend(const LFunctional& phi, const ValueNorm& norm_bound, const LVector& a,
                      const std::vector<LVector>& samples,
                      const std::vector<std::pair<LVector, GenFrac>>& test_vectors);

}  // namespace gnum

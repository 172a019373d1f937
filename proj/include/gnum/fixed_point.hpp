#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gnum/errors.hpp"
#include "gnum/normal_form.hpp"

namespace gnum {

/// Affine self-map f(x) = a*x + b. Any |a|_e < 1 map is a strict
/// contraction for the sharp distance, uniformly over all pairs.
struct AffineMap {
    NormalForm a, b;

    NormalForm operator()(const NormalForm& x) const { return a * x + b; }
    bool is_contraction() const {
        return a.sharp_norm() < ValueNorm::exp_neg(Rat(0));
    }
};

/// Iterates x0, f(x0), ... with the exact residual norm |f(x_n) - x_n|_e
/// at each step. Accepted traces have strictly decreasing residual norms
/// until (possibly) reaching zero.
struct IterationTrace {
    std::vector<NormalForm> iterates;   // n+1 entries
    std::vector<ValueNorm> residuals;   // one per iterate
};

/// n steps of fixed-point iteration. The affine overload requires the
/// contraction certificate |a|_e < 1 up front (precondition_error); the
/// general overload certifies contraction per run by checking strict
/// residual decrease, reporting the violating step (verification_error).
IterationTrace banach_iterate(const AffineMap& f, const NormalForm& x0, long n);
IterationTrace banach_iterate(const std::function<NormalForm(const NormalForm&)>& f,
                              const NormalForm& x0, long n);

/// Pointwise sharp distances between two traces; for two seeds under one
/// contraction f(x) = a*x + b this equals |a|_e^n * d(x0, y0) exactly.
std::vector<ValueNorm> trace_distances(const IterationTrace& t, const IterationTrace& u);

/// Truncated Neumann series for the unique fixed point of f(x) = a*x + b:
/// xstar = sum_{j<order} a^j * b, with the exact residual norm
/// |f(xstar) - xstar|_e = |a^order * b|_e. Requires |a|_e < 1.
std::pair<NormalForm, ValueNorm> affine_fixed_point(const AffineMap& f, long order);

}  // namespace gnum

#include "gnum/fixed_point.hpp"

#include <string>

namespace gnum {

namespace {

IterationTrace iterate_checked(const std::function<NormalForm(const NormalForm&)>& f,
                               const NormalForm& x0, long n, bool certified_contraction) {
    if (n < 0) throw precondition_error("banach_iterate: negative step count");
    IterationTrace trace;
    NormalForm x = x0;
    for (long i = 0; i <= n; ++i) {
        NormalForm fx = f(x);
        ValueNorm r = distance(fx, x);
        if (!trace.residuals.empty()) {
            const ValueNorm& prev = trace.residuals.back();
            bool decreasing = r < prev || (r.is_zero() && prev.is_zero());
            if (!decreasing) {
                std::string msg = "banach_iterate: residual did not decrease at step " +
                                  std::to_string(i);
                // A certified affine contraction cannot reach this branch;
                // for general maps it is the per-run contraction check.
                if (certified_contraction) throw std::logic_error(msg);
                throw verification_error(msg, 0, i);
            }
        }
        trace.iterates.push_back(x);
        trace.residuals.push_back(std::move(r));
        if (i < n) x = std::move(fx);
    }
    return trace;
}

}  // namespace

IterationTrace banach_iterate(const AffineMap& f, const NormalForm& x0, long n) {
    if (!f.is_contraction())
        throw precondition_error("banach_iterate: |a|_e < 1 fails, norm " +
                                 f.a.sharp_norm().str());
    return iterate_checked([&f](const NormalForm& x) { return f(x); }, x0, n, true);
}

IterationTrace banach_iterate(const std::function<NormalForm(const NormalForm&)>& f,
                              const NormalForm& x0, long n) {
    return iterate_checked(f, x0, n, false);
}

std::vector<ValueNorm> trace_distances(const IterationTrace& t, const IterationTrace& u) {
    std::size_t m = std::min(t.iterates.size(), u.iterates.size());
    std::vector<ValueNorm> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(distance(t.iterates[i], u.iterates[i]));
    return out;
}

std::pair<NormalForm, ValueNorm> affine_fixed_point(const AffineMap& f, long order) {
    if (!f.is_contraction())
        throw precondition_error("affine_fixed_point: |a|_e < 1 fails, norm " +
                                 f.a.sharp_norm().str());
    if (order < 0) throw precondition_error("affine_fixed_point: negative order");
    NormalForm xstar;
    NormalForm apow = NormalForm::constant(Rat(1));
    for (long j = 0; j < order; ++j) {
        xstar = xstar + apow * f.b;
        apow = apow * f.a;
    }
    ValueNorm residual = distance(f(xstar), xstar);
    return {std::move(xstar), std::move(residual)};
}

}  // namespace gnum

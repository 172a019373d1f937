#include "gnum/hahn_banach.hpp"

#include <algorithm>
#include <numeric>

namespace gnum {

namespace {

void require_mask_free(const NormalForm& x, const char* who) {
    for (const auto& t : x.terms())
        if (!t.mask.is_all())
            throw std::invalid_argument(std::string(who) + ": masked terms are outside L");
}

}  // namespace

GenFrac::GenFrac(NormalForm num, NormalForm den) : num_(std::move(num)), den_(std::move(den)) {
    require_mask_free(num_, "GenFrac");
    require_mask_free(den_, "GenFrac");
    if (den_.is_zero()) throw std::invalid_argument("GenFrac: zero denominator");
}

GenFrac operator+(const GenFrac& a, const GenFrac& b) {
    return GenFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

GenFrac operator-(const GenFrac& a, const GenFrac& b) {
    return GenFrac(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

GenFrac operator-(const GenFrac& a) { return GenFrac(-a.num_, a.den_); }

GenFrac operator*(const GenFrac& a, const GenFrac& b) {
    return GenFrac(a.num_ * b.num_, a.den_ * b.den_);
}

bool operator==(const GenFrac& a, const GenFrac& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
}

GenFrac GenFrac::inv() const {
    if (is_zero()) throw precondition_error("GenFrac::inv: zero has no inverse");
    return GenFrac(den_, num_);
}

ValueNorm GenFrac::norm() const {
    if (is_zero()) return ValueNorm::zero();
    // Mask-free forms have one branch, so valuations subtract exactly.
    return ValueNorm::exp_neg(*num_.valuation() - *den_.valuation());
}

ValueNorm LVector::norm() const {
    ValueNorm n = ValueNorm::zero();
    for (const auto& c : coords) n = max(n, c.norm());
    return n;
}

LVector operator+(const LVector& a, const LVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("LVector: dimension mismatch");
    LVector out;
    for (std::size_t i = 0; i < a.dim(); ++i) out.coords.push_back(a.coords[i] + b.coords[i]);
    return out;
}

LVector operator-(const LVector& a, const LVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("LVector: dimension mismatch");
    LVector out;
    for (std::size_t i = 0; i < a.dim(); ++i) out.coords.push_back(a.coords[i] - b.coords[i]);
    return out;
}

LVector operator*(const GenFrac& lambda, const LVector& x) {
    LVector out;
    for (const auto& c : x.coords) out.coords.push_back(lambda * c);
    return out;
}

GenFrac LFunctional::apply(const LVector& x) const {
    if (coeffs.size() != x.dim()) throw std::invalid_argument("LFunctional: dimension mismatch");
    GenFrac acc;
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc = acc + coeffs[i] * x.coords[i];
    return acc;
}

HBFamily hb_ball_family(const LFunctional& phi, const ValueNorm& norm_bound, const LVector& a,
                        const std::vector<LVector>& samples) {
    HBFamily fam;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        // Consistency of the asserted operator bound on this sample.
        if (!(phi.apply(samples[i]).norm() <= norm_bound * samples[i].norm()))
            throw precondition_error("hb_ball_family: bound violated by sample " +
                                     std::to_string(i));
        fam.balls.push_back(
            {phi.apply(samples[i]), norm_bound * (samples[i] - a).norm()});
    }
    // Ultrametric dichotomy: |phi(x) - phi(y)|_e <= max(r_x, r_y) forces
    // every pair of balls from one (phi, a) to be comparable.
    for (std::size_t i = 0; i < fam.balls.size(); ++i)
        for (std::size_t j = i + 1; j < fam.balls.size(); ++j) {
            const HBBall &x = fam.balls[i], &y = fam.balls[j];
            ValueNorm d = frac_distance(x.center, y.center);
            if (!(d <= max(x.radius, y.radius)))
                throw verification_error("hb_ball_family: centers too far apart for samples " +
                                             std::to_string(i) + "," + std::to_string(j),
                                         static_cast<long>(i), static_cast<long>(j));
            bool x_in_y = x.radius <= y.radius && d <= y.radius;
            bool y_in_x = y.radius <= x.radius && d <= x.radius;
            if (!x_in_y && !y_in_x)
                throw verification_error("hb_ball_family: incomparable balls " +
                                             std::to_string(i) + "," + std::to_string(j),
                                         static_cast<long>(i), static_cast<long>(j));
        }
    fam.order.resize(fam.balls.size());
    std::iota(fam.order.begin(), fam.order.end(), std::size_t{0});
    std::stable_sort(fam.order.begin(), fam.order.end(), [&](std::size_t i, std::size_t j) {
        return fam.balls[i].radius < fam.balls[j].radius;
    });
    return fam;
}

HBExtension hb_extend(const LFunctional& phi, const ValueNorm& norm_bound, const LVector& a,
                      const std::vector<LVector>& samples,
                      const std::vector<std::pair<LVector, GenFrac>>& test_vectors) {
    if (samples.empty()) throw precondition_error("hb_extend: no samples");
    HBFamily fam = hb_ball_family(phi, norm_bound, a, samples);

    // alpha: the minimal ball's center, first among radius ties. For a
    // nested family the minimal ball lies inside all others, so alpha is
    // a common point of the sampled balls.
    GenFrac alpha = fam.balls[fam.order.front()].center;
    for (std::size_t i = 0; i < fam.balls.size(); ++i)
        if (!fam.balls[i].contains(alpha))
            throw verification_error("hb_extend: alpha escapes ball " + std::to_string(i),
                                     static_cast<long>(i), 0);

    // psi(z - lambda*a) = phi(z) - lambda*alpha must respect the bound.
    for (std::size_t t = 0; t < test_vectors.size(); ++t) {
        const auto& [z, lambda] = test_vectors[t];
        GenFrac val = phi.apply(z) - lambda * alpha;
        ValueNorm rhs = norm_bound * (z - lambda * a).norm();
        if (!(val.norm() <= rhs))
            throw verification_error("hb_extend: extension bound violated by test vector " +
                                         std::to_string(t),
                                     static_cast<long>(t), 0);
    }
    return {std::move(alpha), std::move(fam), test_vectors.size()};
}

}  // namespace gnum

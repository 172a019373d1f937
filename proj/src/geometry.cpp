#include "gnum/geometry.hpp"

#include <algorithm>

namespace gnum {

BallRelation ball_relation(const DressedBall& b1, const DressedBall& b2) {
    ValueNorm d = distance(b1.center, b2.center);
    bool two_in_one = b2.rho >= b1.rho && d <= ValueNorm::exp_neg(b1.rho);
    bool one_in_two = b1.rho >= b2.rho && d <= ValueNorm::exp_neg(b2.rho);
    if (two_in_one && one_in_two) return BallRelation::equal;
    if (two_in_one) return BallRelation::b2_inside_b1;
    if (one_in_two) return BallRelation::b1_inside_b2;
    return BallRelation::disjoint;
}

CNetPtr monotone_envelope(const CNetPtr& c) {
    return CNet::envelope(CNet::max_of(CNet::constant(Rat(1)), c));
}

EuclideanModel default_model(const DressedBall& b, Representative rep) {
    if (rep.class_of() != b.center)
        throw precondition_error("default_model: representative is not in the center class");
    return {std::move(rep), b.rho, CNet::constant(Rat(1))};
}

EuclideanModel default_model(const DressedBall& b) {
    return default_model(b, Representative(b.center));
}

bool model_member_at(const EuclideanModel& m, const Representative& r, long k) {
    PuiseuxValue diff = r.eval_at(k) - m.center.eval_at(k);
    return compare_at(abs_at(diff, k), m.cnet->eval(k).shifted(m.rho), k) <= 0;
}

Representative capture_representative(const EuclideanModel& m, const NormalForm& y,
                                      long check_window) {
    const NormalForm x = m.center.class_of();
    NormalForm d = y - x;
    if (!(distance(y, x) < ValueNorm::exp_neg(m.rho)))
        throw precondition_error("capture_representative: point is not strictly interior");

    auto lb = m.cnet->eventual_lower_bound();
    if (!lb)
        throw unsupported_shape_error(
            "capture_representative: no eventual lower bound for the scaling net");
    auto [l, Kl] = *lb;

    // Past the threshold, |y_k - x_k| <= S * 2^(-k*rho') <= l * 2^(-k*rho)
    // <= C_k * 2^(-k*rho), with rho' = v(y - x) > rho.
    long k0 = std::max(Kl, m.center.max_override_index() + 1);
    if (!d.is_zero()) {
        Rat rhop = *d.valuation();
        Rat S = 0;
        for (const auto& t : d.terms()) S += rat_abs(t.coeff.re);
        Int need = rat_ceil(Rat(log2_upper(S / l)) / (rhop - m.rho)) + 1;
        if (need > (1L << 22))
            throw unsupported_shape_error("capture_representative: threshold out of range");
        if (need > k0) k0 = static_cast<long>(need);
    }

    Representative rep(y);
    constexpr long kExactScanCap = 4096;
    if (k0 <= kExactScanCap) {
        // Patch exactly the violating prefix indices to the center's values.
        for (long k = 1; k < k0; ++k)
            if (!model_member_at(m, rep, k)) rep = rep.patched(k, m.center.eval_at(k));
    } else {
        // Whole-prefix redirect: y_k := x_k for every early index.
        rep = rep.with_prefix(std::make_shared<Representative>(m.center), k0);
    }

    for (long k = 1; k <= check_window; ++k)
        if (!model_member_at(m, rep, k))
            throw verification_error("capture_representative: membership failed", 0, k);
    return rep;
}

NormalForm escaping_sphere_point(const EuclideanModel& m) {
    auto f = m.cnet->eventual_form();
    if (!f)
        throw unsupported_shape_error(
            "escaping_sphere_point: scaling net has no piecewise description");

    // y := x + 2*C*eps^rho, built from the net's piecewise branches.
    std::vector<Term> add;
    for (long r = 0; r < f->modulus; ++r)
        for (const auto& p : f->branch[r].pairs())
            add.emplace_back(GaussRat(2 * p.coeff), p.exponent + m.rho, Mask(f->modulus, {r}));
    NormalForm offset = NormalForm::from_terms(add);
    if (offset.valuation() != m.rho)
        throw unsupported_shape_error("escaping_sphere_point: scaling net valuation is not 0");
    NormalForm y = m.center.class_of() + offset;

    // The canonical representative must escape at every index. Beyond the
    // description threshold and the center's overrides this is structural
    // (2*C_k > C_k); verify the finite prefix exactly.
    Representative canon(y);
    long prefix = std::max(f->from_k, m.center.max_override_index() + 1);
    for (long k = 1; k < prefix; ++k)
        if (model_member_at(m, canon, k))
            throw unsupported_shape_error(
                "escaping_sphere_point: prefix index fails the strict escape");
    return y;
}

EuclideanModel blow_up_model(const EuclideanModel& m, const Representative& y,
                             long check_window) {
    if (!(distance(y.class_of(), m.center.class_of()) <= ValueNorm::exp_neg(m.rho)))
        throw precondition_error("blow_up_model: point is outside the dressed ball");

    // Chat = 2*(Envelope(max(1, |y - x| / eps^rho)) + C); the first summand
    // dominates |y_k - x_k| * 2^(k*rho), so y is held with half margin.
    CNetPtr scaled_dist =
        CNet::prod(CNet::abs_diff(y, m.center), CNet::power(-m.rho));
    CNetPtr chat = CNet::scale(Rat(2), CNet::sum(monotone_envelope(scaled_dist), m.cnet));
    EuclideanModel out{m.center, m.rho, chat};

    for (long k = 1; k <= check_window; ++k) {
        // Margin: |y_k - x_k| <= (Chat_k / 2) * 2^(-k*rho).
        PuiseuxValue diff = y.eval_at(k) - m.center.eval_at(k);
        PuiseuxValue half = chat->eval(k).scaled(Rat(1, 2)).shifted(m.rho);
        if (compare_at(abs_at(diff, k), half, k) > 0)
            throw verification_error("blow_up_model: margin failed", 0, k);
        // New model contains the old pointwise: Chat_k >= C_k.
        if (compare_at(chat->eval(k), m.cnet->eval(k), k) < 0)
            throw verification_error("blow_up_model: containment failed", 0, k);
    }
    return out;
}

}  // namespace gnum

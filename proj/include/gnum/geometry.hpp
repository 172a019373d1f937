#pragma once

#include "gnum/cnet.hpp"
#include "gnum/errors.hpp"
#include "gnum/normal_form.hpp"
#include "gnum/representative.hpp"

namespace gnum {

/// Closed sharp ball B_{<=r}(center) with r = e^(-rho).
struct DressedBall {
    NormalForm center;
    Rat rho;

    /// |x - center|_e <= e^(-rho).
    bool contains(const NormalForm& x) const {
        return distance(x, center) <= ValueNorm::exp_neg(rho);
    }
    /// Strict (stripped-ball) membership.
    bool contains_strictly(const NormalForm& x) const {
        return distance(x, center) < ValueNorm::exp_neg(rho);
    }
    /// Sphere membership: distance exactly e^(-rho).
    bool on_sphere(const NormalForm& x) const {
        return distance(x, center) == ValueNorm::exp_neg(rho);
    }
};

enum class BallRelation { disjoint, b2_inside_b1, b1_inside_b2, equal };

/// Ultrametric dichotomy: two dressed balls are nested or disjoint.
BallRelation ball_relation(const DressedBall& b1, const DressedBall& b2);

/// Pointwise family of closed real balls B_k = B_{<= C_k * 2^(-k*rho)}(x_k)
/// modeling the dressed ball B_{<=e^(-rho)}(class of center); the scaling
/// net is expected to satisfy condition (E).
struct EuclideanModel {
    Representative center;
    Rat rho;
    CNetPtr cnet;
};

/// Envelope(Max(1, c)): >= 1, >= c pointwise, non-decreasing in k.
CNetPtr monotone_envelope(const CNetPtr& c);

/// Model with scaling net identically 1. Requires class_of(rep) == b.center.
EuclideanModel default_model(const DressedBall& b, Representative rep);
EuclideanModel default_model(const DressedBall& b);

/// |r_k - x_k| <= C_k * 2^(-k*rho), decided exactly.
bool model_member_at(const EuclideanModel& m, const Representative& r, long k);

/// Representative of a strictly interior class y that is a pointwise
/// member at every index: early violating indices are redirected to the
/// center's values (a negligible change of representative).
/// Membership is verified exactly for k <= check_window and holds beyond
/// the computed threshold by leading-exponent comparison.
Representative capture_representative(const EuclideanModel& m, const NormalForm& y,
                                      long check_window = 256);

/// A class on the sphere of the modeled ball whose canonical
/// representative escapes every pointwise ball: y = 2*C*eps^rho + x.
/// Requires the scaling net to admit an exact piecewise description
/// whose strict escape can be verified at every index.
NormalForm escaping_sphere_point(const EuclideanModel& m);

/// Blown-up model (same center and rho) containing the old one pointwise
/// and holding y with boundary margin >= (Chat_k/2) * 2^(-k*rho):
/// Chat = 2*(Envelope(max(1, |y - x|/eps^rho)) + C).
EuclideanModel blow_up_model(const EuclideanModel& m, const Representative& y,
                             long check_window = 256);

}  // namespace gnum

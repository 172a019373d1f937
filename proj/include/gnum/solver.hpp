#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gnum/geometry.hpp"

namespace gnum {

/// Rational-valued index rule: affine p + q*i or harmonic p - q/i.
struct RhoRule {
    enum class Kind { affine, harmonic };
    Kind kind = Kind::affine;
    Rat p, q;

    Rat at(long i) const {
        if (kind == Kind::affine) return Rat(p + q * i);
        return Rat(p - q / i);
    }
};

/// Nested sequence of dressed balls: an explicit finite list, or an
/// unbounded rule (center_i = sum_{j<=i} coeff * eps^{a_j} with a_j and
/// rho_i given by index rules). Ball access memoizes the partial sums and
/// is safe for concurrent use.
class NestedBallSequence {
  public:
    static NestedBallSequence from_list(std::vector<DressedBall> balls);
    static NestedBallSequence from_rule(RhoRule rho, Rat coeff, RhoRule exponent);

    bool rule_backed() const;
    /// List size, or a very large bound for rule-backed sequences.
    long max_depth() const;
    DressedBall ball(long i) const;  // 1-based

  private:
    struct State;
    std::shared_ptr<State> state_;
};

struct NestedCheck {
    bool ok = true;
    long fail_index = 0;  // first i with B_{i+1} not nested in B_i / radii out of order
    std::string reason;
};

/// Validates radii monotone and consecutive containment up to depth n.
NestedCheck check_nested(const NestedBallSequence& seq, long n);

struct Alignment {
    CNetPtr cnet;        // certifies condition (E)
    Representative rep2; // class x2, |rep2_k - x1_k| <= (cnet_k/2)*2^(-k*rho1) for all k
};

/// Center alignment into the ball modeled by m1 (only m1's center and rho
/// are read). Sphere case (distance exactly e^(-rho1)) builds the scaled
/// distance envelope; interior case keeps the net at 1 and redirects the
/// violating prefix of x2's representative to the center's values.
Alignment align_center(const EuclideanModel& m1, const NormalForm& x2, const Rat& rho2,
                       long check_window = 256);

/// Minimal k0 (over the exactly-checked range) with
/// C2_k * 2^(-k*rho2) <= (C1_k/2) * 2^(-k*rho1) for all k >= k0.
/// Beyond the structural bound the inequality holds by leading-exponent
/// comparison; if the structural bound exceeds exact_window the bound
/// itself is returned (conservative).
long containment_threshold(const EuclideanModel& m1, const EuclideanModel& m2,
                           long exact_window = 4096);

struct ResetResult {
    EuclideanModel model2;
    std::optional<Representative> rep3;
};

/// The reset rule: for k < k0 the next center's representative reads the
/// current center's values and the scaling net is clamped by the parent's
/// half radius; unchanged for k >= k0. Verifies componentwise nesting of
/// model2 in m1, half-radius containment of rep3 in model2, and condition
/// (E) of the clamped net; throws verification_error with the violating
/// index otherwise. m2's cnet must be the candidate net from alignment.
ResetResult apply_reset(const EuclideanModel& m1, const EuclideanModel& m2,
                        std::optional<Representative> rep3, long k0, long check_window = 256);

/// Proper chain of euclidean models for the first n balls (duplicate
/// radii skipped after asserting ball equality). models[i-1] corresponds
/// to the i-th retained ball; stage_of maps original index to position.
struct ProperModelChain {
    std::vector<EuclideanModel> models;
    std::vector<long> retained;  // original 1-based ball indices
    long stage_of(long i) const; // 0-based position of the stage covering ball i
};

ProperModelChain build_proper_models(const NestedBallSequence& seq, long n,
                                     long check_window = 256);

/// Intersection witness for the first n balls: the class of the deepest
/// model's center. Verifies v(x - x_i) >= rho_i exactly for every i <= n.
NormalForm intersect_prefix(const NestedBallSequence& seq, long n, long check_window = 256);

struct CertifyResult {
    bool ok = true;
    long i = 0;
    long checked_from = 0, checked_to = 0;
    long fail_k = 0;
};

/// Diagonal intersection witness for a rule-backed (infinite) sequence:
/// x_k := (center of model k) at index k. Violations of membership in
/// model i are confined to k < i, a negligible prefix.
class LazyWitness {
  public:
    PuiseuxValue value_at(long k);
    /// Exact pointwise membership of the diagonal in model i for k in [i, K].
    CertifyResult certify(long i, long K);
    EuclideanModel model(long i);

  private:
    friend LazyWitness intersect_diagonal(const NestedBallSequence& seq, long check_window);
    struct State;
    std::shared_ptr<State> state_;
};

LazyWitness intersect_diagonal(const NestedBallSequence& seq, long check_window = 256);

}  // namespace gnum

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gnum/puiseux.hpp"
#include "gnum/representative.hpp"

namespace gnum {

class CNet;
using CNetPtr = std::shared_ptr<const CNet>;

/// Scaling net for euclidean-model radii: an expression tree of positive
/// reals, exactly evaluable at every grid index. Values are immutable;
/// per-index evaluation is memoized behind a lock, so sharing nodes
/// across threads is safe.
class CNet {
  public:
    enum class Kind { Const, Power, AbsDiff, Sum, Prod, Scale, Min, Max, Envelope, Switch };

    static CNetPtr constant(Rat q);
    static CNetPtr power(Rat a);
    static CNetPtr abs_diff(Representative r1, Representative r2);
    static CNetPtr sum(CNetPtr a, CNetPtr b);
    static CNetPtr prod(CNetPtr a, CNetPtr b);
    static CNetPtr scale(Rat q, CNetPtr c);
    static CNetPtr min_of(CNetPtr a, CNetPtr b);
    static CNetPtr max_of(CNetPtr a, CNetPtr b);
    /// Running maximum: Env(C)_k = max_{j <= k} C_j.
    static CNetPtr envelope(CNetPtr c);
    static CNetPtr switch_at(long k0, CNetPtr before, CNetPtr after);

    Kind kind() const { return kind_; }
    const Rat& param() const { return q_; }
    long switch_index() const { return k0_; }
    const std::vector<CNetPtr>& children() const { return kids_; }

    /// Exact value at grid index k, as a PuiseuxValue read at k.
    PuiseuxValue eval(long k) const;

    /// True when monotonicity C_{k+1} >= C_k holds by shape (Envelope
    /// roots, constants, non-positive powers, and closures thereof).
    bool monotone_structural() const;

    /// Evidence that C_k > 0 for all sufficiently large k.
    bool eventually_positive() const;

    /// Two-sided evidence on the valuation of the net. `lo_plus_inf`
    /// marks a net that is eventually zero.
    struct ValBounds {
        std::optional<Rat> lo;  // v >= lo
        std::optional<Rat> hi;  // v <= hi
        bool lo_plus_inf = false;
        bool hi_plus_inf = false;
    };
    ValBounds val_bounds() const;

    /// (B, b) with C_k <= B * 2^(-k*b) for every k >= 1.
    struct UpperBound {
        Rat factor;
        Rat exponent;
    };
    std::optional<UpperBound> bound_above() const;

    /// Rational l > 0 with C_1 >= l, when C_1 > 0.
    std::optional<Rat> lower_bound_at_1() const;

    /// (l, K) with C_k >= l > 0 for every k >= K.
    std::optional<std::pair<Rat, long>> eventual_lower_bound() const;

    /// Piecewise description valid beyond a threshold: for k >= from_k the
    /// value on residue branch (k mod modulus) equals the branch
    /// PuiseuxValue read at k. Nets admitting one with from_k == 1 are the
    /// "eventually piecewise monomial" class in its polynomial closure.
    struct EventualForm {
        long modulus = 1;
        long from_k = 1;
        std::vector<PuiseuxValue> branch;
        bool exact_everywhere() const { return from_k == 1; }
    };
    std::optional<EventualForm> eventual_form() const;

    std::string str() const;

  private:
    explicit CNet(Kind k) : kind_(k) {}

    Kind kind_;
    Rat q_;  // Const value, Scale factor, or Power exponent
    long k0_ = 0;
    std::vector<CNetPtr> kids_;
    std::optional<Representative> r1_, r2_;

    PuiseuxValue eval_uncached(long k) const;

    mutable std::mutex memo_mu_;
    mutable std::map<long, PuiseuxValue> eval_memo_;
    // Envelope only: running max as (value, index where it was read).
    mutable std::vector<std::pair<PuiseuxValue, long>> env_state_;
};

struct ConditionECertificate {
    long checked_prefix = 0;        // positivity/monotonicity verified exactly up to here
    bool structural_monotone = false;
    bool prefix_only_monotone = false;
    Rat val_lo, val_hi;             // leading-exponent evidence; both 0 on success
};

enum class CondEClause { positivity, monotonicity, valuation };

struct CondEFailure {
    CondEClause clause;
    long k = 0;  // witness index; 0 means "no eventual evidence"
    std::optional<Rat> rho;
    std::string message() const;
};

using CondEResult = std::variant<ConditionECertificate, CondEFailure>;

/// Certifies condition (E) for c: positivity, monotone growth as eps -> 0
/// (C_{k+1} >= C_k on the grid), and sharp norm 1 (valuation 0).
CondEResult check_condition_E(const CNetPtr& c, long K);

}  // namespace gnum

#include "gnum/cnet.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gnum {

namespace {

// Conservative index beyond which R * 2^(-k*g) <= 1, for R > 0, g > 0.
long dominance_threshold(const Rat& R, const Rat& g) {
    if (R <= 0) return 1;
    Int bound = rat_ceil(Rat(log2_upper(R)) / g) + 1;
    if (bound < 1) return 1;
    if (bound > (std::numeric_limits<long>::max)() / 2)
        throw std::overflow_error("dominance_threshold: unreasonable bound");
    return static_cast<long>(bound);
}

// Branch polynomials of a class difference, per residue mod the lcm of
// the term masks. Index r holds the poly active on indices k == r (mod m).
std::pair<long, std::vector<PuiseuxValue>> branch_polys(const NormalForm& d) {
    long m = 1;
    for (const auto& t : d.terms()) m = std::lcm(m, t.mask.modulus());
    std::vector<PuiseuxValue> out(m);
    for (long r = 0; r < m; ++r) {
        std::vector<PuiseuxValue::Pair> ps;
        for (const auto& t : d.terms())
            if (t.mask.selects(r + m)) ps.push_back({t.coeff.re, t.exponent});
        out[r] = PuiseuxValue::make(std::move(ps));
    }
    return {m, std::move(out)};
}

// Smallest (conservative) k beyond which the leading term of p decides
// its sign; 1 for single-term or empty polys.
long sign_stable_from(const PuiseuxValue& p) {
    const auto& ps = p.pairs();
    if (ps.size() <= 1) return 1;
    Rat lead_c = rat_abs(ps.front().coeff);
    Rat lead_a = ps.front().exponent;
    Rat R = 0;
    Rat g;
    bool have_g = false;
    for (std::size_t i = 1; i < ps.size(); ++i) {
        R += rat_abs(ps[i].coeff) / lead_c;
        Rat gap = ps[i].exponent - lead_a;
        if (!have_g || gap < g) {
            g = gap;
            have_g = true;
        }
    }
    return dominance_threshold(R, g);
}

int eventual_sign(const PuiseuxValue& p) {
    if (p.pairs().empty()) return 0;
    return p.pairs().front().coeff > 0 ? 1 : -1;
}

}  // namespace

CNetPtr CNet::constant(Rat q) {
    if (q <= 0) throw std::invalid_argument("CNet::constant: value must be positive");
    auto n = std::shared_ptr<CNet>(new CNet(Kind::Const));
    n->q_ = std::move(q);
    return n;
}

CNetPtr CNet::power(Rat a) {
    auto n = std::shared_ptr<CNet>(new CNet(Kind::Power));
    n->q_ = std::move(a);
    return n;
}

CNetPtr CNet::abs_diff(Representative r1, Representative r2) {
    auto n = std::shared_ptr<CNet>(new CNet(Kind::AbsDiff));
    n->r1_ = std::move(r1);
    n->r2_ = std::move(r2);
    return n;
}

CNetPtr CNet::sum(CNetPtr a, CNetPtr b) {
    auto n = std::shared_ptr<CNet>(new CNet(Kind::Sum));
    n->kids_ = {std::move(a), std::move(b)};
    return n;
}

CNetPtr CNet::prod(CNetPtr a, CNetPtr b) {
    auto n = std::shared_ptr<CNet>(new CNet(Kind::Prod));
    n->kids_ = {std::move(a), std::move(b)};
    return n;
}

CNetPtr CNet::scale(Rat q, CNetPtr c) {
    if (q <= 0) throw std::invalid_argument("CNet::scale: factor must be positive");
    auto n = std::shared_ptr<CNet>(new CNet(Kind::Scale));
    n->q_ = std::move(q);
    n->kids_ = {std::move(c)};
    return n;
}

CNetPtr CNet::min_of(CNetPtr a, CNetPtr b) {
    auto n = std::shared_ptr<CNet>(new CNet(Kind::Min));
    n->kids_ = {std::move(a), std::move(b)};
    return n;
}

CNetPtr CNet::max_of(CNetPtr a, CNetPtr b) {
    auto n = std::shared_ptr<CNet>(new CNet(Kind::Max));
    n->kids_ = {std::move(a), std::move(b)};
    return n;
}

CNetPtr CNet::envelope(CNetPtr c) {
    auto n = std::shared_ptr<CNet>(new CNet(Kind::Envelope));
    n->kids_ = {std::move(c)};
    return n;
}

CNetPtr CNet::switch_at(long k0, CNetPtr before, CNetPtr after) {
    if (k0 < 1) throw std::invalid_argument("CNet::switch_at: k0 must be >= 1");
    auto n = std::shared_ptr<CNet>(new CNet(Kind::Switch));
    n->k0_ = k0;
    n->kids_ = {std::move(before), std::move(after)};
    return n;
}

PuiseuxValue CNet::eval(long k) const {
    if (k < 1) throw std::invalid_argument("CNet::eval: index must be >= 1");
    {
        std::lock_guard<std::mutex> g(memo_mu_);
        if (auto it = eval_memo_.find(k); it != eval_memo_.end()) return it->second;
    }
    PuiseuxValue v = eval_uncached(k);
    std::lock_guard<std::mutex> g(memo_mu_);
    return eval_memo_.emplace(k, std::move(v)).first->second;
}

PuiseuxValue CNet::eval_uncached(long k) const {
    switch (kind_) {
        case Kind::Const:
            return PuiseuxValue::constant(q_);
        case Kind::Power:
            return PuiseuxValue::monomial(Rat(1), q_);
        case Kind::AbsDiff:
            return abs_at(r1_->eval_at(k) - r2_->eval_at(k), k);
        case Kind::Sum:
            return kids_[0]->eval(k) + kids_[1]->eval(k);
        case Kind::Prod:
            return kids_[0]->eval(k) * kids_[1]->eval(k);
        case Kind::Scale:
            return kids_[0]->eval(k).scaled(q_);
        case Kind::Min: {
            PuiseuxValue a = kids_[0]->eval(k), b = kids_[1]->eval(k);
            return compare_at(a, b, k) <= 0 ? a : b;
        }
        case Kind::Max: {
            PuiseuxValue a = kids_[0]->eval(k), b = kids_[1]->eval(k);
            return compare_at(a, b, k) >= 0 ? a : b;
        }
        case Kind::Envelope: {
            std::lock_guard<std::mutex> g(memo_mu_);
            while (static_cast<long>(env_state_.size()) < k) {
                long j = static_cast<long>(env_state_.size()) + 1;
                PuiseuxValue cj = kids_[0]->eval(j);
                if (j == 1 ||
                    compare_values(cj, j, env_state_.back().first, env_state_.back().second) >= 0)
                    env_state_.emplace_back(std::move(cj), j);
                else
                    env_state_.push_back(env_state_.back());
            }
            const auto& [val, idx] = env_state_[static_cast<std::size_t>(k) - 1];
            return val.rebased(idx, k);
        }
        case Kind::Switch:
            return (k < k0_ ? kids_[0] : kids_[1])->eval(k);
    }
    throw std::logic_error("unreachable");
}

bool CNet::monotone_structural() const {
    switch (kind_) {
        case Kind::Const:
            return true;
        case Kind::Power:
            return q_ <= 0;
        case Kind::AbsDiff:
            return false;
        case Kind::Scale:
        case Kind::Envelope:
            return kids_[0]->monotone_structural();
        case Kind::Sum:
        case Kind::Prod:
        case Kind::Min:
        case Kind::Max:
            return kids_[0]->monotone_structural() && kids_[1]->monotone_structural();
        case Kind::Switch:
            // Parts monotone plus an exact check across the seam.
            if (!kids_[0]->monotone_structural() || !kids_[1]->monotone_structural()) return false;
            if (k0_ == 1) return true;
            return compare_values(kids_[0]->eval(k0_ - 1), k0_ - 1, kids_[1]->eval(k0_), k0_) <= 0;
    }
    return false;
}

bool CNet::eventually_positive() const {
    switch (kind_) {
        case Kind::Const:
        case Kind::Power:
            return true;
        case Kind::AbsDiff:
            // Positive beyond the overrides iff no residue branch of the
            // class difference vanishes.
            return (r1_->class_of() - r2_->class_of()).support().is_all();
        case Kind::Scale:
        case Kind::Envelope:
            return kids_[0]->eventually_positive();
        case Kind::Sum:
        case Kind::Max:
            return kids_[0]->eventually_positive() || kids_[1]->eventually_positive();
        case Kind::Prod:
        case Kind::Min:
            return kids_[0]->eventually_positive() && kids_[1]->eventually_positive();
        case Kind::Switch:
            return kids_[1]->eventually_positive();
    }
    return false;
}

CNet::ValBounds CNet::val_bounds() const {
    ValBounds out;
    switch (kind_) {
        case Kind::Const:
            out.lo = out.hi = Rat(0);
            return out;
        case Kind::Power:
            out.lo = out.hi = q_;
            return out;
        case Kind::AbsDiff: {
            NormalForm d = r1_->class_of() - r2_->class_of();
            if (d.is_zero()) {
                out.lo_plus_inf = out.hi_plus_inf = true;
                return out;
            }
            out.lo = out.hi = *d.valuation();
            return out;
        }
        case Kind::Scale:
            return kids_[0]->val_bounds();
        case Kind::Sum: {
            ValBounds a = kids_[0]->val_bounds(), b = kids_[1]->val_bounds();
            if (a.lo_plus_inf) {
                out = b;
                return out;
            }
            if (b.lo_plus_inf) {
                out = a;
                return out;
            }
            // Nonnegative values: sum is squeezed between max and twice it.
            if (a.lo && b.lo) out.lo = std::min(*a.lo, *b.lo);
            if (a.hi && b.hi) out.hi = std::min(*a.hi, *b.hi);
            else if (a.hi) out.hi = a.hi;
            else if (b.hi) out.hi = b.hi;
            return out;
        }
        case Kind::Prod: {
            ValBounds a = kids_[0]->val_bounds(), b = kids_[1]->val_bounds();
            if (a.lo_plus_inf || b.lo_plus_inf) {
                out.lo_plus_inf = out.hi_plus_inf = true;
                return out;
            }
            if (a.lo && b.lo) out.lo = *a.lo + *b.lo;
            // An upper bound needs aligned witnesses; a pointwise-exact
            // monomial factor provides that.
            auto exact_upper = [](const CNetPtr& c) -> std::optional<Rat> {
                if (c->kind() == Kind::Power) return c->param();
                if (c->kind() == Kind::Const) return Rat(0);
                return std::nullopt;
            };
            if (auto ea = exact_upper(kids_[0]); ea && b.hi) out.hi = *ea + *b.hi;
            else if (auto eb = exact_upper(kids_[1]); eb && a.hi) out.hi = *eb + *a.hi;
            return out;
        }
        case Kind::Min: {
            ValBounds a = kids_[0]->val_bounds(), b = kids_[1]->val_bounds();
            if (a.lo_plus_inf || b.lo_plus_inf) {
                out.lo_plus_inf = out.hi_plus_inf = true;
                return out;
            }
            if (a.lo && b.lo) out.lo = std::max(*a.lo, *b.lo);
            else if (a.lo) out.lo = a.lo;
            else if (b.lo) out.lo = b.lo;
            // No sound upper evidence: branches can alternate.
            return out;
        }
        case Kind::Max: {
            ValBounds a = kids_[0]->val_bounds(), b = kids_[1]->val_bounds();
            if (a.lo_plus_inf) return b;
            if (b.lo_plus_inf) return a;
            if (a.lo && b.lo) out.lo = std::min(*a.lo, *b.lo);
            if (a.hi && b.hi) out.hi = std::min(*a.hi, *b.hi);
            else if (a.hi) out.hi = a.hi;
            else if (b.hi) out.hi = b.hi;
            return out;
        }
        case Kind::Envelope: {
            ValBounds c = kids_[0]->val_bounds();
            // Env_k <= max_{j<=k} B*2^(-j*b) <= B*2^(-k*min(b,0)).
            if (auto ub = kids_[0]->bound_above()) out.lo = std::min(Rat(0), ub->exponent);
            // Env_k >= max(c_1, c_k): a positive first value caps the
            // valuation at 0, and upper evidence on the child transfers.
            if (c.hi) out.hi = c.hi;
            if (sign_at(kids_[0]->eval(1), 1) > 0)
                out.hi = out.hi ? std::min(*out.hi, Rat(0)) : Rat(0);
            return out;
        }
        case Kind::Switch:
            return kids_[1]->val_bounds();
    }
    return out;
}

std::optional<CNet::UpperBound> CNet::bound_above() const {
    switch (kind_) {
        case Kind::Const:
            return UpperBound{q_, Rat(0)};
        case Kind::Power:
            return UpperBound{Rat(1), q_};
        case Kind::Scale: {
            auto c = kids_[0]->bound_above();
            if (!c) return std::nullopt;
            return UpperBound{c->factor * q_, c->exponent};
        }
        case Kind::Sum: {
            auto a = kids_[0]->bound_above(), b = kids_[1]->bound_above();
            if (!a || !b) return std::nullopt;
            return UpperBound{a->factor + b->factor, std::min(a->exponent, b->exponent)};
        }
        case Kind::Prod: {
            auto a = kids_[0]->bound_above(), b = kids_[1]->bound_above();
            if (!a || !b) return std::nullopt;
            return UpperBound{a->factor * b->factor, a->exponent + b->exponent};
        }
        case Kind::Min:
        case Kind::Max:
        case Kind::Switch: {
            auto a = kids_[0]->bound_above(), b = kids_[1]->bound_above();
            if (!a || !b) return std::nullopt;
            return UpperBound{std::max(a->factor, b->factor), std::min(a->exponent, b->exponent)};
        }
        case Kind::Envelope: {
            auto c = kids_[0]->bound_above();
            if (!c) return std::nullopt;
            if (c->exponent >= 0) return UpperBound{c->factor, Rat(0)};
            return *c;
        }
        case Kind::AbsDiff: {
            NormalForm d = r1_->class_of() - r2_->class_of();
            Rat b = d.is_zero() ? Rat(0) : *d.valuation();
            Rat B = 0;
            for (const auto& t : d.terms()) B += rat_abs(t.coeff.re);
            // Fold in the overridden prefix: bound each override value by
            // a dyadic majorant at its index.
            long m1 = r1_->max_override_index(), m2 = r2_->max_override_index();
            for (long k = 1; k <= std::max(m1, m2); ++k) {
                Rat vb = 0;
                for (const auto& p : (r1_->eval_at(k) - r2_->eval_at(k)).pairs())
                    vb += rat_abs(p.coeff) * pow2(-rat_floor(p.exponent * k));
                // need vb <= B' * 2^(-k*b)
                Rat needed = vb * pow2(rat_ceil(Rat(k) * b));
                B = std::max(B, needed);
            }
            if (B == 0) return UpperBound{Rat(0), Rat(0)};
            return UpperBound{B, b};
        }
    }
    return std::nullopt;
}

std::optional<Rat> CNet::lower_bound_at_1() const {
    PuiseuxValue v = eval(1);
    if (sign_at(v, 1) <= 0) return std::nullopt;
    for (long m = 0; m <= (1L << 20); m = m == 0 ? 1 : m * 2) {
        Rat cand = pow2(Int(-m));
        if (compare_at(v, PuiseuxValue::constant(cand), 1) >= 0) return cand;
    }
    return std::nullopt;
}

std::optional<std::pair<Rat, long>> CNet::eventual_lower_bound() const {
    if (monotone_structural()) {
        if (auto l = lower_bound_at_1()) return std::pair{*l, 1L};
        return std::nullopt;
    }
    auto f = eventual_form();
    if (!f) return std::nullopt;
    // Each branch must have non-negative exponents and a positive limit;
    // then the branch value is >= limit/2 beyond a dominance threshold.
    Rat l;
    bool l_set = false;
    long K = f->from_k;
    for (const auto& b : f->branch) {
        Rat limit = 0, R = 0;
        Rat g;
        bool has_pos = false;
        for (const auto& p : b.pairs()) {
            if (p.exponent < 0) return std::nullopt;
            if (p.exponent == 0) {
                limit = p.coeff;
            } else {
                R += rat_abs(p.coeff);
                if (!has_pos || p.exponent < g) {
                    g = p.exponent;
                    has_pos = true;
                }
            }
        }
        if (limit <= 0) return std::nullopt;
        if (has_pos) K = std::max(K, dominance_threshold(2 * R / limit, g));
        Rat half = limit / 2;
        if (!l_set || half < l) {
            l = half;
            l_set = true;
        }
    }
    if (!l_set) return std::nullopt;
    return std::pair{l, K};
}

std::optional<CNet::EventualForm> CNet::eventual_form() const {
    auto combine = [](const EventualForm& a, const EventualForm& b, auto op) {
        EventualForm out;
        out.modulus = std::lcm(a.modulus, b.modulus);
        out.from_k = std::max(a.from_k, b.from_k);
        out.branch.resize(out.modulus);
        for (long r = 0; r < out.modulus; ++r)
            out.branch[r] = op(a.branch[r % a.modulus], b.branch[r % b.modulus], out);
        return out;
    };
    switch (kind_) {
        case Kind::Const: {
            EventualForm f;
            f.branch = {PuiseuxValue::constant(q_)};
            return f;
        }
        case Kind::Power: {
            EventualForm f;
            f.branch = {PuiseuxValue::monomial(Rat(1), q_)};
            return f;
        }
        case Kind::Scale: {
            auto c = kids_[0]->eventual_form();
            if (!c) return std::nullopt;
            for (auto& b : c->branch) b = b.scaled(q_);
            return c;
        }
        case Kind::Sum: {
            auto a = kids_[0]->eventual_form(), b = kids_[1]->eventual_form();
            if (!a || !b) return std::nullopt;
            return combine(*a, *b,
                           [](const PuiseuxValue& x, const PuiseuxValue& y, EventualForm&) {
                               return x + y;
                           });
        }
        case Kind::Prod: {
            auto a = kids_[0]->eventual_form(), b = kids_[1]->eventual_form();
            if (!a || !b) return std::nullopt;
            return combine(*a, *b,
                           [](const PuiseuxValue& x, const PuiseuxValue& y, EventualForm&) {
                               return x * y;
                           });
        }
        case Kind::Min:
        case Kind::Max: {
            auto a = kids_[0]->eventual_form(), b = kids_[1]->eventual_form();
            if (!a || !b) return std::nullopt;
            bool want_min = kind_ == Kind::Min;
            return combine(*a, *b,
                           [want_min](const PuiseuxValue& x, const PuiseuxValue& y,
                                      EventualForm& out) {
                               PuiseuxValue d = x - y;
                               out.from_k = std::max(out.from_k, sign_stable_from(d));
                               int s = eventual_sign(d);
                               return (want_min == (s <= 0)) ? x : y;
                           });
        }
        case Kind::Switch: {
            auto a = kids_[1]->eventual_form();
            if (!a) return std::nullopt;
            a->from_k = std::max(a->from_k, k0_);
            return a;
        }
        case Kind::AbsDiff: {
            NormalForm d = r1_->class_of() - r2_->class_of();
            auto [m, polys] = branch_polys(d);
            EventualForm f;
            f.modulus = m;
            f.from_k = std::max(r1_->max_override_index(), r2_->max_override_index()) + 1;
            f.branch.resize(m);
            for (long r = 0; r < m; ++r) {
                f.from_k = std::max(f.from_k, sign_stable_from(polys[r]));
                f.branch[r] = eventual_sign(polys[r]) < 0 ? -polys[r] : polys[r];
            }
            return f;
        }
        case Kind::Envelope: {
            auto c = kids_[0]->eventual_form();
            if (!c) return std::nullopt;
            // Only bounded children are handled: every branch exponent
            // must be >= 0, so each branch tends to its constant term and
            // the envelope is eventually constant (when the sup is
            // attained) or escapes this representation.
            Rat limit = 0;
            bool limit_set = false;
            Rat min_pos_exp;  // g: branch values sit within R*2^(-k*g) of their limit
            bool has_pos = false;
            Rat R_all = 0;
            std::vector<Rat> branch_limits(c->branch.size());
            long stable = 1;  // beyond here each branch's deviation has fixed sign
            for (std::size_t i = 0; i < c->branch.size(); ++i) {
                const auto& b = c->branch[i];
                Rat branch_limit = 0;
                std::vector<PuiseuxValue::Pair> dev;
                for (const auto& p : b.pairs()) {
                    if (p.exponent < 0) return std::nullopt;
                    if (p.exponent == 0) {
                        branch_limit = p.coeff;
                    } else {
                        dev.push_back(p);
                        R_all += rat_abs(p.coeff);
                        if (!has_pos || p.exponent < min_pos_exp) {
                            min_pos_exp = p.exponent;
                            has_pos = true;
                        }
                    }
                }
                stable = std::max(stable, sign_stable_from(PuiseuxValue::make(std::move(dev))));
                branch_limits[i] = branch_limit;
                if (!limit_set || branch_limit > limit) {
                    limit = branch_limit;
                    limit_set = true;
                }
            }
            // Scan far enough that (a) every branch is visited past from_k
            // with its deviation sign settled, and (b) branches with a
            // strictly smaller limit can no longer reach `limit`.
            long scan = std::max(c->from_k, stable) + c->modulus;
            if (has_pos) {
                Rat min_gap;
                bool gap_set = false;
                for (const Rat& bl : branch_limits)
                    if (bl < limit && (!gap_set || limit - bl < min_gap)) {
                        min_gap = limit - bl;
                        gap_set = true;
                    }
                if (gap_set)
                    scan = std::max(scan, dominance_threshold(R_all / min_gap, min_pos_exp));
            }
            // Exact running max over the scan window.
            PuiseuxValue best = eval(scan);  // envelope value == running max
            long best_idx = scan;
            int cmp = compare_values(best, best_idx, PuiseuxValue::constant(limit), 1);
            if (cmp > 0) {
                // A value above the limit was witnessed. Deviations decay,
                // so past a refined threshold no value beats the current
                // best; extend the window there and the sup is attained.
                Rat gap_lo;  // rational lower bound on best - limit
                {
                    long m = 0;
                    for (;; m = (m == 0 ? 1 : m * 2)) {
                        if (m > (1L << 20)) return std::nullopt;
                        PuiseuxValue cand = PuiseuxValue::constant(limit + pow2(Int(-m)));
                        if (compare_values(best, best_idx, cand, 1) >= 0) {
                            gap_lo = pow2(Int(-m));
                            break;
                        }
                    }
                }
                long safe = has_pos ? dominance_threshold(R_all / gap_lo, min_pos_exp) : scan;
                if (safe > scan) {
                    best = eval(safe);
                    best_idx = safe;
                }
                // Constant value must be rational to stay representable.
                Rat value = 0;
                for (const auto& p : best.pairs()) {
                    Rat e = p.exponent * best_idx;
                    if (rat_den(e) != 1) return std::nullopt;
                    value += p.coeff * pow2(-rat_num(e));
                }
                EventualForm f;
                f.branch = {PuiseuxValue::constant(value)};
                f.from_k = std::max(best_idx, safe);
                return f;
            }
            if (cmp == 0) {
                // The limit is attained and, past the scan, every branch
                // either stays below it (smaller limit or settled
                // non-positive deviation) or would have been witnessed.
                EventualForm f;
                f.branch = {PuiseuxValue::constant(limit)};
                f.from_k = scan;
                return f;
            }
            // Strictly increasing toward an unattained supremum: not
            // eventually piecewise polynomial.
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::string CNet::str() const {
    switch (kind_) {
        case Kind::Const:
            return "const(" + rat_str(q_) + ")";
        case Kind::Power:
            return "power(" + rat_str(q_) + ")";
        case Kind::AbsDiff:
            return "absdiff(..)";
        case Kind::Sum:
            return "sum(" + kids_[0]->str() + ", " + kids_[1]->str() + ")";
        case Kind::Prod:
            return "prod(" + kids_[0]->str() + ", " + kids_[1]->str() + ")";
        case Kind::Scale:
            return "scale(" + rat_str(q_) + ", " + kids_[0]->str() + ")";
        case Kind::Min:
            return "min(" + kids_[0]->str() + ", " + kids_[1]->str() + ")";
        case Kind::Max:
            return "max(" + kids_[0]->str() + ", " + kids_[1]->str() + ")";
        case Kind::Envelope:
            return "envelope(" + kids_[0]->str() + ")";
        case Kind::Switch:
            return "switch(" + std::to_string(k0_) + ", " + kids_[0]->str() + ", " +
                   kids_[1]->str() + ")";
    }
    return "?";
}

std::string CondEFailure::message() const {
    std::string c = clause == CondEClause::positivity     ? "positivity"
                    : clause == CondEClause::monotonicity ? "monotonicity"
                                                          : "valuation";
    std::string s = "condition (E) fails: " + c;
    if (k > 0) s += " at k=" + std::to_string(k);
    if (rho) s += " (valuation evidence " + rat_str(*rho) + " != 0)";
    return s;
}

CondEResult check_condition_E(const CNetPtr& c, long K) {
    if (K < 1) throw std::invalid_argument("check_condition_E: window must be >= 1");
    for (long k = 1; k <= K; ++k)
        if (sign_at(c->eval(k), k) <= 0) return CondEFailure{CondEClause::positivity, k, {}};
    if (!c->eventually_positive()) return CondEFailure{CondEClause::positivity, 0, {}};

    ConditionECertificate cert;
    cert.checked_prefix = K;
    cert.structural_monotone = c->monotone_structural();
    cert.prefix_only_monotone = !cert.structural_monotone;
    for (long k = 1; k < K; ++k)
        if (compare_values(c->eval(k), k, c->eval(k + 1), k + 1) > 0)
            return CondEFailure{CondEClause::monotonicity, k + 1, {}};

    auto b = c->val_bounds();
    if (b.lo_plus_inf) return CondEFailure{CondEClause::valuation, 0, {}};
    if (!b.lo || !b.hi) return CondEFailure{CondEClause::valuation, 0, {}};
    if (*b.lo > 0) return CondEFailure{CondEClause::valuation, 0, *b.lo};
    if (*b.hi < 0) return CondEFailure{CondEClause::valuation, 0, *b.hi};
    if (*b.lo < 0 || *b.hi > 0) return CondEFailure{CondEClause::valuation, 0, {}};
    cert.val_lo = *b.lo;
    cert.val_hi = *b.hi;
    return cert;
}

}  // namespace gnum

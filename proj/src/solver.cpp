#include "gnum/solver.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

namespace gnum {

namespace {

constexpr long kExactScanCap = 4096;

bool half_radius_ok(const Representative& r, const Representative& center, const CNetPtr& c,
                    const Rat& rho, long k) {
    PuiseuxValue diff = r.eval_at(k) - center.eval_at(k);
    PuiseuxValue rhs = c->eval(k).scaled(Rat(1, 2)).shifted(rho);
    return compare_at(abs_at(diff, k), rhs, k) <= 0;
}

void require_condition_E(const CNetPtr& c, long K, const char* who) {
    auto r = check_condition_E(c, K);
    if (auto* f = std::get_if<CondEFailure>(&r))
        throw verification_error(std::string(who) + ": " + f->message(), 0, f->k);
}

}  // namespace

struct NestedBallSequence::State {
    // Explicit list:
    std::vector<DressedBall> list;
    bool is_rule = false;
    // Rule:
    RhoRule rho;
    Rat coeff;
    RhoRule exponent;
    mutable std::mutex mu;
    mutable std::vector<NormalForm> centers;  // centers[i] = sum of first i increments
};

NestedBallSequence NestedBallSequence::from_list(std::vector<DressedBall> balls) {
    NestedBallSequence s;
    s.state_ = std::make_shared<State>();
    s.state_->list = std::move(balls);
    return s;
}

NestedBallSequence NestedBallSequence::from_rule(RhoRule rho, Rat coeff, RhoRule exponent) {
    NestedBallSequence s;
    s.state_ = std::make_shared<State>();
    s.state_->is_rule = true;
    s.state_->rho = rho;
    s.state_->coeff = std::move(coeff);
    s.state_->exponent = exponent;
    s.state_->centers.push_back(NormalForm());  // index 0: empty sum
    return s;
}

bool NestedBallSequence::rule_backed() const { return state_->is_rule; }

long NestedBallSequence::max_depth() const {
    if (state_->is_rule) return (std::numeric_limits<long>::max)() / 2;
    return static_cast<long>(state_->list.size());
}

DressedBall NestedBallSequence::ball(long i) const {
    if (i < 1) throw std::invalid_argument("NestedBallSequence::ball: index must be >= 1");
    if (!state_->is_rule) {
        if (i > static_cast<long>(state_->list.size()))
            throw std::out_of_range("NestedBallSequence::ball: past end of list");
        return state_->list[static_cast<std::size_t>(i) - 1];
    }
    std::lock_guard<std::mutex> g(state_->mu);
    while (static_cast<long>(state_->centers.size()) <= i) {
        long j = static_cast<long>(state_->centers.size());
        state_->centers.push_back(
            state_->centers.back() +
            NormalForm::monomial(state_->coeff, state_->exponent.at(j)));
    }
    return {state_->centers[static_cast<std::size_t>(i)], state_->rho.at(i)};
}

NestedCheck check_nested(const NestedBallSequence& seq, long n) {
    if (n > seq.max_depth())
        return {false, seq.max_depth() + 1, "depth exceeds the sequence length"};
    for (long i = 1; i < n; ++i) {
        DressedBall a = seq.ball(i), b = seq.ball(i + 1);
        if (b.rho < a.rho) return {false, i, "radii not non-increasing"};
        BallRelation rel = ball_relation(a, b);
        if (rel != BallRelation::b2_inside_b1 && rel != BallRelation::equal)
            return {false, i, "consecutive balls not nested"};
    }
    return {};
}

Alignment align_center(const EuclideanModel& m1, const NormalForm& x2, const Rat& rho2,
                       long check_window) {
    const NormalForm x1 = m1.center.class_of();
    if (!(rho2 > m1.rho))
        throw precondition_error("align_center: radius does not strictly shrink");
    ValueNorm dist = distance(x2, x1);
    if (!(dist <= ValueNorm::exp_neg(m1.rho)))
        throw precondition_error("align_center: next ball is not nested");

    Representative rep2(x2);
    CNetPtr cnet;
    if (dist == ValueNorm::exp_neg(m1.rho)) {
        // Sphere case: C = 2 * Envelope(max(1, |x2 - x1| / eps^rho1)); the
        // half-radius bound then holds at every index by construction.
        cnet = CNet::scale(
            Rat(2), monotone_envelope(CNet::prod(CNet::abs_diff(rep2, m1.center),
                                                 CNet::power(-m1.rho))));
    } else {
        // Interior case: C = 1; redirect the finite violating prefix of
        // x2's representative to the center's values.
        cnet = CNet::constant(Rat(1));
        NormalForm d = x2 - x1;
        long k0 = m1.center.max_override_index() + 1;
        if (!d.is_zero()) {
            Rat rhop = *d.valuation();
            Rat S = 0;
            for (const auto& t : d.terms()) S += rat_abs(t.coeff.re);
            // S * 2^(-k*rho') <= (1/2) * 2^(-k*rho1) for k past this bound.
            Int need = rat_ceil(Rat(log2_upper(2 * S)) / (rhop - m1.rho)) + 1;
            if (need > (1L << 30))
                throw unsupported_shape_error("align_center: threshold out of range");
            k0 = std::max(k0, static_cast<long>((std::max)(need, Int(1))));
        }
        if (k0 <= kExactScanCap) {
            for (long k = 1; k < k0; ++k)
                if (!half_radius_ok(rep2, m1.center, cnet, m1.rho, k))
                    rep2 = rep2.patched(k, m1.center.eval_at(k));
        } else {
            rep2 = rep2.with_prefix(std::make_shared<Representative>(m1.center), k0);
        }
    }

    for (long k = 1; k <= check_window; ++k)
        if (!half_radius_ok(rep2, m1.center, cnet, m1.rho, k))
            throw verification_error("align_center: half-radius bound failed", 0, k);
    require_condition_E(cnet, 32, "align_center");
    return {std::move(cnet), std::move(rep2)};
}

long containment_threshold(const EuclideanModel& m1, const EuclideanModel& m2,
                           long exact_window) {
    if (!(m2.rho > m1.rho))
        throw precondition_error("containment_threshold: radius does not strictly shrink");
    auto ub2 = m2.cnet->bound_above();
    if (!ub2)
        throw unsupported_shape_error("containment_threshold: no upper bound for inner net");
    auto lb1 = m1.cnet->eventual_lower_bound();
    if (!lb1)
        throw unsupported_shape_error("containment_threshold: no lower bound for outer net");
    Rat gap = m2.rho + ub2->exponent - m1.rho;
    if (gap <= 0)
        throw unsupported_shape_error("containment_threshold: exponent gap not positive");

    // B2 * 2^(-k*(rho2+b2)) <= (l1/2) * 2^(-k*rho1) for k past the bound.
    Int need = rat_ceil(Rat(log2_upper(2 * ub2->factor / lb1->first)) / gap) + 1;
    long k_struct = lb1->second;
    if (need > k_struct) {
        if (need > (1L << 30))
            throw unsupported_shape_error("containment_threshold: bound out of range");
        k_struct = static_cast<long>((std::max)(need, Int(1)));
    }
    k_struct = std::max(k_struct, 1L);

    auto holds = [&](long k) {
        PuiseuxValue lhs = m2.cnet->eval(k).shifted(m2.rho);
        PuiseuxValue rhs = m1.cnet->eval(k).scaled(Rat(1, 2)).shifted(m1.rho);
        return compare_at(lhs, rhs, k) <= 0;
    };
    if (k_struct > exact_window) return k_struct;  // conservative
    for (long k = k_struct - 1; k >= 1; --k)
        if (!holds(k)) return k + 1;
    return 1;
}

ResetResult apply_reset(const EuclideanModel& m1, const EuclideanModel& m2,
                        std::optional<Representative> rep3, long k0, long check_window) {
    if (k0 < 1) throw std::invalid_argument("apply_reset: threshold must be >= 1");
    CNetPtr chat = m2.cnet;
    CNetPtr cnet2 =
        k0 == 1 ? chat
                : CNet::switch_at(
                      k0,
                      CNet::min_of(CNet::scale(Rat(1, 2),
                                               CNet::prod(m1.cnet, CNet::power(m1.rho - m2.rho))),
                                   chat),
                      chat);

    std::optional<Representative> rep3p = std::move(rep3);
    if (rep3p && k0 > 1) {
        if (k0 <= kExactScanCap) {
            Representative r = *rep3p;
            for (long k = 1; k < k0; ++k) r = r.patched(k, m2.center.eval_at(k));
            rep3p = std::move(r);
        } else {
            rep3p = rep3p->with_prefix(std::make_shared<Representative>(m2.center), k0);
        }
    }

    EuclideanModel out{m2.center, m2.rho, cnet2};
    for (long k = 1; k <= check_window; ++k) {
        // Componentwise nesting: |x2_k - x1_k| + C2_k*2^(-k*rho2) <= C1_k*2^(-k*rho1).
        PuiseuxValue diff = m2.center.eval_at(k) - m1.center.eval_at(k);
        PuiseuxValue lhs = abs_at(diff, k) + cnet2->eval(k).shifted(m2.rho);
        PuiseuxValue rhs = m1.cnet->eval(k).shifted(m1.rho);
        if (compare_at(lhs, rhs, k) > 0)
            throw verification_error("apply_reset: componentwise nesting failed", 0, k);
        if (rep3p && !half_radius_ok(*rep3p, m2.center, cnet2, m2.rho, k))
            throw verification_error("apply_reset: half-radius containment failed", 0, k);
    }
    require_condition_E(cnet2, 32, "apply_reset");
    return {std::move(out), std::move(rep3p)};
}

long ProperModelChain::stage_of(long i) const {
    long s = 0;
    while (s + 1 < static_cast<long>(retained.size()) && retained[s + 1] <= i) ++s;
    return s;
}

namespace {

// Retained (strictly shrinking) ball indices among the first n; duplicate
// radii are skipped after check_nested has validated them.
std::vector<long> retained_indices(const NestedBallSequence& seq, long n) {
    std::vector<long> out;
    for (long i = 1; i <= n; ++i) {
        if (!out.empty() && !(seq.ball(i).rho > seq.ball(out.back()).rho)) continue;
        out.push_back(i);
    }
    return out;
}

}  // namespace

ProperModelChain build_proper_models(const NestedBallSequence& seq, long n, long check_window) {
    if (n < 1) throw std::invalid_argument("build_proper_models: depth must be >= 1");
    NestedCheck nc = check_nested(seq, n);
    if (!nc.ok)
        throw precondition_error("build_proper_models: " + nc.reason + " at index " +
                                 std::to_string(nc.fail_index));

    ProperModelChain chain;
    chain.retained = retained_indices(seq, n);
    long m = static_cast<long>(chain.retained.size());

    DressedBall b1 = seq.ball(chain.retained[0]);
    Representative rep(b1.center);
    if (m == 1) {
        chain.models.push_back(default_model(b1, std::move(rep)));
        return chain;
    }

    std::optional<Representative> next;
    for (long s = 1; s <= m; ++s) {
        DressedBall bs = seq.ball(chain.retained[static_cast<std::size_t>(s) - 1]);
        CNetPtr chat;
        std::optional<Representative> after;
        if (s < m) {
            DressedBall bn = seq.ball(chain.retained[static_cast<std::size_t>(s)]);
            EuclideanModel probe{rep, bs.rho, CNet::constant(Rat(1))};
            Alignment al = align_center(probe, bn.center, bn.rho, check_window);
            chat = al.cnet;
            after = std::move(al.rep2);
        } else {
            chat = CNet::constant(Rat(1));
        }
        if (s == 1) {
            chain.models.push_back(EuclideanModel{rep, bs.rho, chat});
        } else {
            EuclideanModel cand{rep, bs.rho, chat};
            long k0 = containment_threshold(chain.models.back(), cand);
            ResetResult rr = apply_reset(chain.models.back(), cand, after, k0, check_window);
            chain.models.push_back(std::move(rr.model2));
            after = std::move(rr.rep3);
        }
        if (s < m) rep = *after;
    }
    return chain;
}

NormalForm intersect_prefix(const NestedBallSequence& seq, long n, long check_window) {
    ProperModelChain chain = build_proper_models(seq, n, check_window);
    NormalForm x = chain.models.back().center.class_of();
    for (long i = 1; i <= n; ++i) {
        DressedBall b = seq.ball(i);
        NormalForm d = x - b.center;
        if (!d.is_zero() && *d.valuation() < b.rho)
            throw verification_error("intersect_prefix: witness outside ball", i, 0);
    }
    return x;
}

struct LazyWitness::State {
    NestedBallSequence seq;
    long check_window;
    std::mutex mu;
    std::vector<EuclideanModel> models;
    std::vector<long> retained;
    Representative next_rep{NormalForm()};
    long scanned = 0;     // original indices consumed (nesting-checked up to here)
    bool exhausted = false;  // no further strictly smaller ball found

    explicit State(NestedBallSequence s, long w) : seq(std::move(s)), check_window(w) {}

    long stage_of(long i) const {
        long s = 0;
        while (s + 1 < static_cast<long>(retained.size()) && retained[s + 1] <= i) ++s;
        return s;
    }

    void check_step(long i) {
        DressedBall a = seq.ball(i), b = seq.ball(i + 1);
        if (b.rho < a.rho)
            throw precondition_error("intersect_diagonal: radii not non-increasing at index " +
                                     std::to_string(i));
        BallRelation rel = ball_relation(a, b);
        if (rel != BallRelation::b2_inside_b1 && rel != BallRelation::equal)
            throw precondition_error("intersect_diagonal: balls not nested at index " +
                                     std::to_string(i));
    }

    // Next original index after `from` with a strictly smaller ball.
    std::optional<long> next_distinct(long from) {
        Rat rho = seq.ball(from).rho;
        for (long j = from; j < from + kExactScanCap && j < seq.max_depth(); ++j) {
            check_step(j);
            scanned = std::max(scanned, j + 1);
            if (seq.ball(j + 1).rho > rho) return j + 1;
        }
        return std::nullopt;
    }

    // Builds chain stages until ball index i is covered (or exhausted).
    void ensure(long i) {
        if (retained.empty()) {
            retained.push_back(1);
            next_rep = Representative(seq.ball(1).center);
            scanned = 1;
        }
        // Loop until the stage covering i is finalized: the last retained
        // stage stays pending until the next distinct ball is aligned.
        while (!exhausted && retained.back() <= i) {
            long cur = retained.back();
            DressedBall bs = seq.ball(cur);
            auto nxt = next_distinct(cur);
            if (!nxt) {
                // Constant tail: finalize the current stage and stop.
                if (models.size() < retained.size())
                    finalize_stage(bs, CNet::constant(Rat(1)), nullptr);
                exhausted = true;
                return;
            }
            DressedBall bn = seq.ball(*nxt);
            EuclideanModel probe{next_rep, bs.rho, CNet::constant(Rat(1))};
            Alignment al = align_center(probe, bn.center, bn.rho, check_window);
            std::optional<Representative> after = std::move(al.rep2);
            finalize_stage(bs, al.cnet, &after);
            retained.push_back(*nxt);
            next_rep = *after;
        }
    }

    void finalize_stage(const DressedBall& bs, const CNetPtr& chat,
                        std::optional<Representative>* after_io = nullptr) {
        std::optional<Representative> none;
        std::optional<Representative>& after = after_io ? *after_io : none;
        if (models.empty()) {
            models.push_back(EuclideanModel{next_rep, bs.rho, chat});
            return;
        }
        EuclideanModel cand{next_rep, bs.rho, chat};
        long k0 = containment_threshold(models.back(), cand);
        ResetResult rr = apply_reset(models.back(), cand, after, k0, check_window);
        models.push_back(std::move(rr.model2));
        if (after_io) after = std::move(rr.rep3);
    }

    const EuclideanModel& model_for(long i) {
        ensure(i);
        long s = stage_of(i);
        if (s >= static_cast<long>(models.size()))
            throw verification_error("intersect_diagonal: stage not built", i, 0);
        return models[static_cast<std::size_t>(s)];
    }
};

LazyWitness intersect_diagonal(const NestedBallSequence& seq, long check_window) {
    if (!seq.rule_backed())
        throw precondition_error("intersect_diagonal: sequence must be rule-backed");
    LazyWitness w;
    w.state_ = std::make_shared<LazyWitness::State>(seq, check_window);
    return w;
}

PuiseuxValue LazyWitness::value_at(long k) {
    if (k < 1) throw std::invalid_argument("LazyWitness::value_at: index must be >= 1");
    std::lock_guard<std::mutex> g(state_->mu);
    return state_->model_for(k).center.eval_at(k);
}

EuclideanModel LazyWitness::model(long i) {
    std::lock_guard<std::mutex> g(state_->mu);
    return state_->model_for(i);
}

CertifyResult LazyWitness::certify(long i, long K) {
    if (i < 1 || K < i) throw std::invalid_argument("LazyWitness::certify: bad range");
    std::lock_guard<std::mutex> g(state_->mu);
    EuclideanModel mi = state_->model_for(i);
    CertifyResult out;
    out.i = i;
    out.checked_from = i;
    out.checked_to = K;
    for (long k = i; k <= K; ++k) {
        PuiseuxValue wk = state_->model_for(k).center.eval_at(k);
        PuiseuxValue diff = wk - mi.center.eval_at(k);
        if (compare_at(abs_at(diff, k), mi.cnet->eval(k).shifted(mi.rho), k) > 0) {
            out.ok = false;
            out.fail_k = k;
            return out;
        }
    }
    return out;
}

}  // namespace gnum

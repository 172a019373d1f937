#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gnum/solver.hpp"

using namespace gnum;

namespace {

NestedBallSequence geometric() {
    // rho_i = i + 1, centers sum_{j<=i} eps^j.
    return NestedBallSequence::from_rule({RhoRule::Kind::affine, Rat(1), Rat(1)}, Rat(1),
                                         {RhoRule::Kind::affine, Rat(0), Rat(1)});
}

NestedBallSequence dense() {
    // rho_i = 1 - 1/i (radii decreasing to e^-1), centers sum eps^{rho_j}.
    return NestedBallSequence::from_rule({RhoRule::Kind::harmonic, Rat(1), Rat(1)}, Rat(1),
                                         {RhoRule::Kind::harmonic, Rat(1), Rat(1)});
}

bool member_at(const EuclideanModel& m, const Representative& r, long k) {
    return model_member_at(m, r, k);
}

}  // namespace

TEST_CASE("rule-backed sequences") {
    NestedBallSequence g = geometric();
    CHECK(g.ball(1).rho == Rat(2));
    CHECK(g.ball(1).center == NormalForm::eps());
    CHECK(g.ball(3).center ==
          NormalForm::eps() + NormalForm::monomial(Rat(1), Rat(2)) +
              NormalForm::monomial(Rat(1), Rat(3)));

    NestedBallSequence d = dense();
    CHECK(d.ball(2).rho == Rat(1, 2));
    CHECK(d.ball(4).rho == Rat(3, 4));
}

TEST_CASE("check_nested") {
    CHECK(check_nested(geometric(), 10).ok);
    CHECK(check_nested(dense(), 10).ok);

    // Constant sequence is trivially nested.
    std::vector<DressedBall> cs(5, DressedBall{NormalForm(), Rat(1)});
    CHECK(check_nested(NestedBallSequence::from_list(cs), 5).ok);

    // Shift a center by 1 at position 5: nesting breaks there.
    std::vector<DressedBall> bad;
    NestedBallSequence g = geometric();
    for (long i = 1; i <= 8; ++i) bad.push_back({g.ball(i).center, Rat(i)});
    bad[4].center = bad[4].center + NormalForm::constant(Rat(1));
    NestedCheck nc = check_nested(NestedBallSequence::from_list(bad), 8);
    CHECK(!nc.ok);
    CHECK(nc.fail_index == 4);

    // Radii must not grow.
    std::vector<DressedBall> grow{{NormalForm(), Rat(2)}, {NormalForm(), Rat(1)}};
    NestedCheck nc2 = check_nested(NestedBallSequence::from_list(grow), 2);
    CHECK(!nc2.ok);
}

TEST_CASE("align_center: sphere case") {
    // x1 = 0, rho1 = 1; x2 = eps at distance exactly e^-1.
    EuclideanModel m1 = default_model(DressedBall{NormalForm(), Rat(1)});
    Alignment al = align_center(m1, NormalForm::eps(), Rat(2));
    CHECK(al.rep2.class_of() == NormalForm::eps());
    CHECK(al.rep2.max_override_index() == 0);
    // C = 2: |x2_k - x1_k| = 2^-k <= (2/2)*2^-k.
    for (long k = 1; k <= 64; ++k) {
        CHECK(al.cnet->eval(k) == PuiseuxValue::constant(Rat(2)));
        PuiseuxValue diff = al.rep2.eval_at(k) - m1.center.eval_at(k);
        PuiseuxValue half = al.cnet->eval(k).scaled(Rat(1, 2)).shifted(Rat(1));
        CHECK(compare_at(abs_at(diff, k), half, k) <= 0);
    }
    CHECK(std::holds_alternative<ConditionECertificate>(check_condition_E(al.cnet, 64)));
}

TEST_CASE("align_center: interior case") {
    // x2 = 4*eps^2: 4*2^-2k <= 2^-k/2 iff k >= 3; patches at k = 1, 2.
    EuclideanModel m1 = default_model(DressedBall{NormalForm(), Rat(1)});
    Alignment al = align_center(m1, NormalForm::monomial(Rat(4), Rat(2)), Rat(2));
    CHECK(al.cnet->eval(7) == PuiseuxValue::constant(Rat(1)));
    CHECK(al.rep2.patches().size() == 2);
    CHECK(al.rep2.patches().count(1) == 1);
    CHECK(al.rep2.patches().count(2) == 1);
    CHECK(al.rep2.class_of() == NormalForm::monomial(Rat(4), Rat(2)));

    // Same class: no patches at all.
    Alignment id = align_center(m1, NormalForm(), Rat(2));
    CHECK(id.rep2.max_override_index() == 0);

    CHECK_THROWS_AS(align_center(m1, NormalForm::constant(Rat(1)), Rat(2)),
                    precondition_error);
    CHECK_THROWS_AS(align_center(m1, NormalForm(), Rat(1)), precondition_error);
}

TEST_CASE("containment_threshold examples") {
    Representative zero{NormalForm()};
    EuclideanModel m1{zero, Rat(1), CNet::constant(Rat(1))};
    EuclideanModel m2{zero, Rat(2), CNet::constant(Rat(3))};
    // 3*2^-2k <= 2^-k/2 iff 2^-k <= 1/6 iff k >= 3.
    CHECK(containment_threshold(m1, m2) == 3);

    EuclideanModel m1b{zero, Rat(1), CNet::constant(Rat(2))};
    EuclideanModel m2b{zero, Rat(2), CNet::constant(Rat(1))};
    CHECK(containment_threshold(m1b, m2b) == 1);

    CHECK_THROWS_AS(containment_threshold(m1, m1), precondition_error);
}

TEST_CASE("containment_threshold is minimal on a window") {
    std::mt19937 rng(64123);
    auto pick = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    Representative zero{NormalForm()};
    for (int t = 0; t < 100; ++t) {
        Rat rho1(pick(0, 4), pick(1, 2));
        Rat rho2 = rho1 + Rat(pick(1, 4), pick(1, 2));
        EuclideanModel m1{zero, rho1, CNet::constant(Rat(pick(1, 9), pick(1, 3)))};
        EuclideanModel m2{zero, rho2, CNet::constant(Rat(pick(1, 9), pick(1, 3)))};
        long k0 = containment_threshold(m1, m2);
        auto holds = [&](long k) {
            PuiseuxValue lhs = m2.cnet->eval(k).shifted(rho2);
            PuiseuxValue rhs = m1.cnet->eval(k).scaled(Rat(1, 2)).shifted(rho1);
            return compare_at(lhs, rhs, k) <= 0;
        };
        for (long k = k0; k <= k0 + 64; ++k) CHECK(holds(k));
        if (k0 > 1) CHECK(!holds(k0 - 1));
    }
}

TEST_CASE("apply_reset patches the prefix and clamps the net") {
    // Stage data mirroring the alignment example: m1 = (0, rho 1, C=1),
    // candidate m2 centered at the aligned 4*eps^2 rep with chat from a
    // further alignment, threshold k0 = 3.
    EuclideanModel m1 = default_model(DressedBall{NormalForm(), Rat(1)});
    NormalForm x2 = NormalForm::monomial(Rat(4), Rat(2));
    Alignment al = align_center(m1, x2, Rat(2));
    NormalForm x3 = x2 + NormalForm::monomial(Rat(1), Rat(4));
    EuclideanModel probe{al.rep2, Rat(2), CNet::constant(Rat(1))};
    Alignment al3 = align_center(probe, x3, Rat(4));
    EuclideanModel cand{al.rep2, Rat(2), al3.cnet};

    // Coarser candidate net forces a non-trivial threshold: C2 = 3 gives
    // k0 = 3 and patched indices {1, 2}.
    cand.cnet = CNet::constant(Rat(3));
    long k0 = containment_threshold(m1, cand);
    CHECK(k0 == 3);
    ResetResult rr = apply_reset(m1, cand, al3.rep2, k0);
    // Before the switch the net is clamped to the parent's half radius.
    CHECK(compare_at(rr.model2.cnet->eval(1), PuiseuxValue::constant(Rat(1)), 1) == 0);
    CHECK(compare_at(rr.model2.cnet->eval(2), PuiseuxValue::constant(Rat(2)), 2) == 0);
    CHECK(compare_at(rr.model2.cnet->eval(3), PuiseuxValue::constant(Rat(3)), 3) == 0);
    REQUIRE(rr.rep3.has_value());
    CHECK(rr.rep3->class_of() == x3);
    // For k < k0 the next representative reads the current center.
    for (long k = 1; k < k0; ++k)
        CHECK(rr.rep3->eval_at(k) == al.rep2.eval_at(k));
    // Componentwise nesting of the reset model in m1, at every k.
    for (long k = 1; k <= 256; ++k) {
        PuiseuxValue diff = cand.center.eval_at(k) - m1.center.eval_at(k);
        PuiseuxValue lhs = abs_at(diff, k) + rr.model2.cnet->eval(k).shifted(Rat(2));
        CHECK(compare_at(lhs, m1.cnet->eval(k).shifted(Rat(1)), k) <= 0);
    }
    CHECK(std::holds_alternative<ConditionECertificate>(check_condition_E(rr.model2.cnet, 64)));

    // k0 = 1 leaves everything unchanged.
    EuclideanModel small{al.rep2, Rat(2), CNet::constant(Rat(1, 4))};
    long k1 = containment_threshold(m1, small);
    if (k1 == 1) {
        ResetResult rr1 = apply_reset(m1, small, al3.rep2, 1);
        CHECK(rr1.model2.cnet == small.cnet);
        CHECK(rr1.rep3->max_override_index() == al3.rep2.max_override_index());
    }
}

TEST_CASE("proper chains: geometric scenario") {
    ProperModelChain chain = build_proper_models(geometric(), 5);
    REQUIRE(chain.models.size() == 5);
    for (std::size_t s = 0; s + 1 < chain.models.size(); ++s) {
        const EuclideanModel& a = chain.models[s];
        const EuclideanModel& b = chain.models[s + 1];
        for (long k = 1; k <= 128; ++k) {
            PuiseuxValue diff = b.center.eval_at(k) - a.center.eval_at(k);
            PuiseuxValue lhs = abs_at(diff, k) + b.cnet->eval(k).shifted(b.rho);
            CHECK(compare_at(lhs, a.cnet->eval(k).shifted(a.rho), k) <= 0);
        }
    }
}

TEST_CASE("proper chains: trivial and dense") {
    ProperModelChain one = build_proper_models(geometric(), 1);
    REQUIRE(one.models.size() == 1);
    CHECK(one.models[0].cnet->eval(3) == PuiseuxValue::constant(Rat(1)));

    ProperModelChain d = build_proper_models(dense(), 10, 128);
    REQUIRE(d.models.size() == 10);
    for (std::size_t s = 0; s + 1 < d.models.size(); ++s) {
        const EuclideanModel& a = d.models[s];
        const EuclideanModel& b = d.models[s + 1];
        for (long k = 1; k <= 128; ++k) {
            PuiseuxValue diff = b.center.eval_at(k) - a.center.eval_at(k);
            PuiseuxValue lhs = abs_at(diff, k) + b.cnet->eval(k).shifted(b.rho);
            CHECK(compare_at(lhs, a.cnet->eval(k).shifted(a.rho), k) <= 0);
        }
    }
}

TEST_CASE("intersect_prefix witnesses") {
    NormalForm x = intersect_prefix(geometric(), 20);
    NestedBallSequence g = geometric();
    for (long i = 1; i <= 20; ++i) {
        NormalForm d = x - g.ball(i).center;
        if (!d.is_zero()) CHECK(*d.valuation() >= g.ball(i).rho);
    }
    CHECK(x == g.ball(20).center);

    CHECK(intersect_prefix(geometric(), 1) == g.ball(1).center);

    NormalForm xd = intersect_prefix(dense(), 25, 128);
    NestedBallSequence ds = dense();
    for (long i = 1; i <= 25; ++i) {
        NormalForm d = xd - ds.ball(i).center;
        if (!d.is_zero()) CHECK(*d.valuation() >= ds.ball(i).rho);
    }
}

TEST_CASE("duplicate radii are skipped without changing membership") {
    NestedBallSequence g = geometric();
    std::vector<DressedBall> with_dups;
    for (long i = 1; i <= 6; ++i) {
        with_dups.push_back(g.ball(i));
        if (i == 3) with_dups.push_back(g.ball(i));  // literal duplicate
    }
    NestedBallSequence seq = NestedBallSequence::from_list(with_dups);
    NormalForm x = intersect_prefix(seq, static_cast<long>(with_dups.size()));
    for (std::size_t i = 0; i < with_dups.size(); ++i) {
        NormalForm d = x - with_dups[i].center;
        if (!d.is_zero()) CHECK(*d.valuation() >= with_dups[i].rho);
    }
}

TEST_CASE("diagonal witness: geometric") {
    LazyWitness w = intersect_diagonal(geometric(), 128);
    CertifyResult r = w.certify(3, 64);
    CHECK(r.ok);
    CertifyResult r1 = w.certify(1, 64);
    CHECK(r1.ok);
    // Stability: re-certifying a sub-window agrees.
    CertifyResult r2 = w.certify(3, 32);
    CHECK(r2.ok);
}

TEST_CASE("diagonal witness: dense (radii bounded away from zero)") {
    LazyWitness w = intersect_diagonal(dense(), 128);
    for (long i = 1; i <= 8; ++i) {
        CertifyResult r = w.certify(i, 48);
        CHECK(r.ok);
    }
}

TEST_CASE("diagonal witness rejects broken input") {
    std::vector<DressedBall> two{{NormalForm(), Rat(1)}, {NormalForm(), Rat(2)}};
    CHECK_THROWS_AS(intersect_diagonal(NestedBallSequence::from_list(two)),
                    precondition_error);

    // Radii increasing: rho_i = 2 - i is not non-decreasing.
    NestedBallSequence grow = NestedBallSequence::from_rule(
        {RhoRule::Kind::affine, Rat(2), Rat(-1)}, Rat(1),
        {RhoRule::Kind::affine, Rat(0), Rat(1)});
    LazyWitness w = intersect_diagonal(grow);
    CHECK_THROWS_AS(w.certify(1, 8), precondition_error);
}

TEST_CASE("random alignment pairs hold the half-radius bound") {
    std::mt19937 rng(7341);
    auto pick = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    for (int t = 0; t < 40; ++t) {
        Rat rho1(pick(0, 3), pick(1, 2));
        Rat rho2 = rho1 + Rat(pick(1, 3), pick(1, 2));
        NormalForm x1 = NormalForm::monomial(Rat(pick(-3, 3)), Rat(pick(0, 2)));
        EuclideanModel m1 = default_model(DressedBall{x1, rho1});
        // Half sphere points, half interior points.
        Rat bump_exp = (t % 2 == 0) ? rho1 : rho2;
        NormalForm x2 = x1 + NormalForm::monomial(Rat(pick(1, 5)), bump_exp);
        Alignment al = align_center(m1, x2, rho2, 128);
        for (long k = 1; k <= 128; ++k) {
            PuiseuxValue diff = al.rep2.eval_at(k) - m1.center.eval_at(k);
            PuiseuxValue half = al.cnet->eval(k).scaled(Rat(1, 2)).shifted(rho1);
            CHECK(compare_at(abs_at(diff, k), half, k) <= 0);
        }
        CHECK(std::holds_alternative<ConditionECertificate>(check_condition_E(al.cnet, 32)));
    }
}

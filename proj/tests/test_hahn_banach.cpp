#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gnum/hahn_banach.hpp"

using namespace gnum;

namespace {

struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}
    long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    Rat rational(long num_lo, long num_hi, long den_hi) {
        return Rat(pick(num_lo, num_hi), pick(1, den_hi));
    }
    Rat nonzero_rational(long mag, long den_hi) {
        Rat q;
        do q = rational(-mag, mag, den_hi);
        while (q == 0);
        return q;
    }
    /// Random non-zero mask-free normal form: 1-3 monomials with small
    /// rational exponents >= 0.
    NormalForm poly() {
        NormalForm out;
        do {
            std::vector<Term> terms;
            long n = pick(1, 3);
            for (long i = 0; i < n; ++i)
                terms.emplace_back(GaussRat(nonzero_rational(9, 4)), rational(0, 6, 3));
            out = NormalForm::from_terms(terms);
        } while (out.is_zero());
        return out;
    }
    GenFrac frac() { return GenFrac(poly(), poly()); }
};

GenFrac one() { return GenFrac::from_rat(Rat(1)); }

LVector e1() { return {{one(), GenFrac()}}; }
LVector e2() { return {{GenFrac(), one()}}; }

}  // namespace

TEST_CASE("fraction field: basic identities and norms") {
    GenFrac alpha = GenFrac::alpha();

    // 1/eps has norm e^-(-1) = e^1.
    GenFrac inv_alpha = alpha.inv();
    CHECK(inv_alpha.norm() == ValueNorm::exp_neg(Rat(-1)));
    CHECK(alpha * inv_alpha == one());

    // (1+eps)/(1-eps): both valuations 0.
    NormalForm one_nf = NormalForm::constant(Rat(1));
    GenFrac q(one_nf + NormalForm::eps(), one_nf - NormalForm::eps());
    CHECK(q.norm() == ValueNorm::exp_neg(Rat(0)));

    // Field axioms, spot checks.
    GenFrac a(NormalForm::eps() + one_nf, one_nf - NormalForm::eps());
    GenFrac b = GenFrac::from_rat(Rat(3, 7));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + q) == a * b + a * q);
    CHECK(a + (-a) == GenFrac());
    CHECK(a * a.inv() == one());
    CHECK(a - b == a + (-b));

    CHECK_THROWS_AS(GenFrac().inv(), precondition_error);
    CHECK(GenFrac().norm() == ValueNorm::zero());
}

TEST_CASE("fraction field: rejects masked terms and zero denominator") {
    NormalForm masked = NormalForm::monomial(Rat(1), Rat(1), Mask(2, {0}));
    CHECK_THROWS_AS(GenFrac{masked}, std::invalid_argument);
    CHECK_THROWS_AS(GenFrac(NormalForm::constant(Rat(1)), masked - masked),
                    std::invalid_argument);
    CHECK_THROWS_AS(GenFrac(NormalForm::constant(Rat(1)), NormalForm()), std::invalid_argument);
}

TEST_CASE("fraction norm is multiplicative") {
    Gen g(771177);
    for (int i = 0; i < 500; ++i) {
        GenFrac p = g.frac(), q = g.frac();
        CHECK((p * q).norm() == p.norm() * q.norm());
        // And compatible with inversion.
        CHECK(p.inv().norm() * p.norm() == ValueNorm::exp_neg(Rat(0)));
    }
}

TEST_CASE("vector norm and functional application") {
    LVector x{{one(), GenFrac::alpha()}};
    CHECK(x.norm() == ValueNorm::exp_neg(Rat(0)));

    LFunctional phi{{one(), GenFrac()}};
    LVector y{{GenFrac::alpha(), GenFrac::from_rat(Rat(7))}};
    CHECK(phi.apply(y) == GenFrac::alpha());

    // Homogeneity of the max norm under scaling by alpha.
    Gen g(90021);
    for (int i = 0; i < 100; ++i) {
        LVector v{{g.frac(), g.frac(), g.frac()}};
        GenFrac lambda = g.frac();
        CHECK((lambda * v).norm() == lambda.norm() * v.norm());
    }
}

TEST_CASE("ball family: plane example with direction e1 and a = e2") {
    LFunctional phi{{one(), GenFrac()}};
    ValueNorm bound = ValueNorm::exp_neg(Rat(0));

    SUBCASE("samples e1 and alpha*e1 give equal balls") {
        HBFamily fam = hb_ball_family(phi, bound, e2(), {e1(), GenFrac::alpha() * e1()});
        REQUIRE(fam.balls.size() == 2);
        CHECK(fam.balls[0].radius == ValueNorm::exp_neg(Rat(0)));
        CHECK(fam.balls[1].radius == ValueNorm::exp_neg(Rat(0)));
        CHECK(fam.balls[0].center == one());
        CHECK(fam.balls[1].center == GenFrac::alpha());
        CHECK(frac_distance(fam.balls[0].center, fam.balls[1].center) ==
              ValueNorm::exp_neg(Rat(0)));
        // Equal balls: each center lies in the other ball.
        CHECK(fam.balls[0].contains(fam.balls[1].center));
        CHECK(fam.balls[1].contains(fam.balls[0].center));
        CHECK(fam.order.front() == 0);  // first among radius ties
    }

    SUBCASE("a sample with large first coordinate enlarges its ball") {
        // ||(1/eps)e1 - e2|| = e^1, so this ball strictly contains the others.
        HBFamily fam = hb_ball_family(
            phi, bound, e2(), {GenFrac::alpha().inv() * e1(), e1(), GenFrac::alpha() * e1()});
        CHECK(fam.balls[0].radius == ValueNorm::exp_neg(Rat(-1)));
        CHECK(fam.order == std::vector<std::size_t>{1, 2, 0});
        CHECK(fam.balls[0].contains(fam.balls[1].center));
    }

    SUBCASE("single sample is trivially nested") {
        HBFamily fam = hb_ball_family(phi, bound, e2(), {e1()});
        CHECK(fam.balls.size() == 1);
        CHECK(fam.order == std::vector<std::size_t>{0});
    }

    SUBCASE("bound violated by a sample is a precondition failure") {
        LFunctional big{{GenFrac::alpha().inv(), GenFrac()}};  // |phi(e1)| = e^1 > e^0
        CHECK_THROWS_AS(hb_ball_family(big, bound, e2(), {e1()}), precondition_error);
    }
}

TEST_CASE("extension step: alpha from the minimal ball, exact inequality") {
    LFunctional phi{{one(), GenFrac()}};
    ValueNorm bound = ValueNorm::exp_neg(Rat(0));
    std::vector<LVector> samples{e1(), GenFrac::alpha() * e1()};

    // Test vectors: (e1, 1) gives psi(e1 - a) with value phi(e1) - alpha = 0;
    // (eps*e1, eps) is the same relation scaled by e^-1; lambda = 0 vectors
    // reduce to the phi bound itself.
    std::vector<std::pair<LVector, GenFrac>> tv{
        {e1(), one()},
        {GenFrac::alpha() * e1(), GenFrac::alpha()},
        {e1(), GenFrac()},
        {GenFrac::alpha() * e1(), GenFrac()},
    };
    HBExtension ext = hb_extend(phi, bound, e2(), samples, tv);
    CHECK(ext.alpha == one());
    CHECK(ext.checked == tv.size());
    CHECK((phi.apply(e1()) - ext.alpha).norm() == ValueNorm::zero());

    // A vector outside the sampled subspace can violate the bound; the
    // check reports it instead of certifying.
    LVector bad{{GenFrac::alpha(), one()}};
    CHECK_THROWS_AS(hb_extend(phi, bound, e2(), samples, {{bad, one()}}), verification_error);
}

TEST_CASE("extension step: randomized plane families") {
    Gen g(445566);
    for (int inst = 0; inst < 12; ++inst) {
        GenFrac c = g.frac();
        LFunctional phi{{c, GenFrac()}};
        ValueNorm bound = c.norm();

        // Samples along e1; include e1 itself so the minimal ball's
        // center keeps every test direction within the bound.
        std::vector<LVector> samples{e1()};
        long m = g.pick(2, 5);
        for (long j = 0; j < m; ++j) {
            GenFrac gamma = GenFrac(NormalForm::monomial(
                g.nonzero_rational(5, 3), g.rational(0, 4, 2)));
            samples.push_back(gamma * e1());
        }

        std::vector<std::pair<LVector, GenFrac>> tv;
        for (int t = 0; t < 120; ++t) {
            GenFrac mu = g.frac();
            GenFrac lambda = (t % 5 == 0) ? GenFrac() : g.frac();
            tv.push_back({mu * e1(), lambda});
        }
        HBExtension ext = hb_extend(phi, bound, e2(), samples, tv);
        CHECK(ext.checked == tv.size());
        // alpha lies in every sample ball.
        for (const auto& ball : ext.family.balls) CHECK(ball.contains(ext.alpha));
    }
}

TEST_CASE("extension step: invariance under joint rescaling") {
    Gen g(20206);
    LFunctional phi{{one(), GenFrac()}};
    ValueNorm bound = ValueNorm::exp_neg(Rat(0));
    std::vector<LVector> base{GenFrac::alpha().inv() * e1(), e1(),
                              GenFrac::alpha() * e1(),
                              GenFrac::from_rat(Rat(3)) * e1()};

    for (int i = 0; i < 25; ++i) {
        GenFrac lambda = g.frac();
        std::vector<LVector> scaled;
        for (const auto& s : base) scaled.push_back(lambda * s);
        LVector a = e2(), a_scaled = lambda * e2();

        HBExtension ext = hb_extend(phi, bound, a, base, {});
        HBExtension ext2 = hb_extend(phi, bound, a_scaled, scaled, {});
        // Balls rescale by |lambda|: containment order and the chosen
        // center transform consistently.
        CHECK(ext2.family.order == ext.family.order);
        CHECK(ext2.alpha == lambda * ext.alpha);
        for (std::size_t b = 0; b < ext.family.balls.size(); ++b)
            CHECK(ext2.family.balls[b].radius == lambda.norm() * ext.family.balls[b].radius);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gnum/fixed_point.hpp"

using namespace gnum;

namespace {

struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}
    long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    Rat rational(long num_lo, long num_hi, long den_hi) {
        return Rat(pick(num_lo, num_hi), pick(1, den_hi));
    }
    /// Random contraction coefficient: positive valuation.
    NormalForm contraction_coeff() {
        NormalForm a = NormalForm::monomial(rational(-5, 5, 3), rational(1, 4, 2));
        if (a.is_zero()) a = NormalForm::eps();
        return a;
    }
    NormalForm small_form() {
        std::vector<Term> terms;
        long n = pick(0, 3);
        for (long i = 0; i < n; ++i)
            terms.emplace_back(GaussRat(rational(-5, 5, 3)), rational(0, 4, 2));
        return NormalForm::from_terms(terms);
    }
};

NormalForm geometric_sum(long n) {  // 1 + eps + ... + eps^(n-1)
    NormalForm s;
    for (long j = 0; j < n; ++j) s = s + NormalForm::monomial(Rat(1), Rat(j));
    return s;
}

}  // namespace

TEST_CASE("iteration of f(x) = eps*x + 1 from 0: geometric partial sums") {
    AffineMap f{NormalForm::eps(), NormalForm::constant(Rat(1))};
    REQUIRE(f.is_contraction());
    IterationTrace t = banach_iterate(f, NormalForm(), 8);
    REQUIRE(t.iterates.size() == 9);
    for (long n = 0; n <= 8; ++n) {
        CHECK(t.iterates[n] == geometric_sum(n));
        CHECK(t.residuals[n] == ValueNorm::exp_neg(Rat(n)));
    }
}

TEST_CASE("iteration from a different seed: same residuals from step 1") {
    AffineMap f{NormalForm::eps(), NormalForm::constant(Rat(1))};
    IterationTrace t0 = banach_iterate(f, NormalForm(), 8);
    IterationTrace t1 = banach_iterate(f, NormalForm::constant(Rat(1)), 8);
    // Starting at 1 skips the step-0 residual: the norms e^-1, e^-2, ...
    // are those of the zero-seed trace from step 1 on.
    for (long n = 0; n < 8; ++n) CHECK(t1.residuals[n] == t0.residuals[n + 1]);
    // Pointwise distances contract exactly like |a|^n * d(x0, y0).
    auto d = trace_distances(t0, t1);
    for (long n = 0; n <= 8; ++n) CHECK(d[n] == ValueNorm::exp_neg(Rat(n)));
}

TEST_CASE("iteration of f(x) = eps*x from 1") {
    AffineMap f{NormalForm::eps(), NormalForm()};
    IterationTrace t = banach_iterate(f, NormalForm::constant(Rat(1)), 6);
    for (long n = 0; n <= 6; ++n) {
        CHECK(t.iterates[n] == NormalForm::monomial(Rat(1), Rat(n)));
        // residual |eps^(n+1) - eps^n|_e = e^-n
        CHECK(t.residuals[n] == ValueNorm::exp_neg(Rat(n)));
    }
}

TEST_CASE("non-contraction affine map is rejected up front") {
    AffineMap f{NormalForm::constant(Rat(1)), NormalForm::constant(Rat(1))};
    CHECK_THROWS_AS(banach_iterate(f, NormalForm(), 3), precondition_error);
    CHECK_THROWS_AS(affine_fixed_point(f, 3), precondition_error);
}

TEST_CASE("general map with stalling residuals is reported at its step") {
    // x -> x + 1 never decreases the residual; the per-run certificate
    // fails at the first comparison.
    auto shift = [](const NormalForm& x) { return x + NormalForm::constant(Rat(1)); };
    try {
        banach_iterate(shift, NormalForm(), 4);
        FAIL("expected verification_error");
    } catch (const verification_error& e) {
        CHECK(e.index == 1);
    }
    // The same contraction passed as a general map is accepted.
    AffineMap f{NormalForm::eps(), NormalForm::constant(Rat(1))};
    auto g = [&f](const NormalForm& x) { return f(x); };
    CHECK(banach_iterate(g, NormalForm(), 5).iterates.size() == 6);
}

TEST_CASE("affine fixed point: truncated series and exact residual") {
    AffineMap f{NormalForm::eps(), NormalForm::constant(Rat(1))};
    auto [xstar, residual] = affine_fixed_point(f, 5);
    CHECK(xstar == geometric_sum(5));
    CHECK(residual == ValueNorm::exp_neg(Rat(5)));

    auto [x0, r0] = affine_fixed_point(AffineMap{NormalForm::eps(), NormalForm()}, 4);
    CHECK(x0 == NormalForm());
    CHECK(r0 == ValueNorm::zero());

    auto [x2, r2] = affine_fixed_point(
        AffineMap{NormalForm::monomial(Rat(1), Rat(2)), NormalForm::constant(Rat(1))}, 3);
    CHECK(r2 == ValueNorm::exp_neg(Rat(6)));
}

TEST_CASE("residual monotone in order and equal to |a|^order * |b|") {
    Gen g(36912);
    for (int i = 0; i < 60; ++i) {
        NormalForm a = g.contraction_coeff();
        NormalForm b = g.small_form();
        AffineMap f{a, b};
        ValueNorm prev = ValueNorm::exp_neg(Rat(0));
        bool first = true;
        for (long order = 1; order <= 5; ++order) {
            auto [xstar, residual] = affine_fixed_point(f, order);
            if (b.is_zero()) {
                CHECK(residual == ValueNorm::zero());
                continue;
            }
            ValueNorm expect = ValueNorm::exp_neg(*a.valuation() * order) * b.sharp_norm();
            CHECK(residual == expect);
            if (!first) CHECK(residual <= prev);
            prev = residual;
            first = false;
        }
    }
}

TEST_CASE("traces from random seeds: strict decrease and exact contraction rate") {
    Gen g(58291);
    for (int i = 0; i < 60; ++i) {
        AffineMap f{g.contraction_coeff(), g.small_form()};
        NormalForm x0 = g.small_form(), y0 = g.small_form();
        IterationTrace tx = banach_iterate(f, x0, 6);
        IterationTrace ty = banach_iterate(f, y0, 6);
        for (std::size_t n = 1; n < tx.residuals.size(); ++n) {
            const ValueNorm &r = tx.residuals[n], &p = tx.residuals[n - 1];
            CHECK((r < p || (r.is_zero() && p.is_zero())));
        }
        ValueNorm rate = f.a.sharp_norm();
        ValueNorm d0 = distance(x0, y0);
        ValueNorm expect = d0;
        auto d = trace_distances(tx, ty);
        for (std::size_t n = 0; n < d.size(); ++n) {
            CHECK(d[n] == expect);
            expect = expect * rate;
        }
    }
}

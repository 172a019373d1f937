#include "gnum/sign.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <map>

namespace gnum {

namespace {

// Merge terms with equal exponent, drop zero coefficients.
std::map<Rat, Rat> merged(const std::vector<Exp2Term>& terms) {
    std::map<Rat, Rat> out;
    for (const auto& t : terms) {
        if (t.coeff == 0) continue;
        auto [it, fresh] = out.emplace(t.exponent, t.coeff);
        if (!fresh) {
            it->second += t.coeff;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

// Symbolic zero test, see sign.hpp.
bool is_zero_sum(const std::map<Rat, Rat>& terms) {
    Int q = 1;
    for (const auto& [e, c] : terms) q = lcm(q, rat_den(e));
    // Coefficient of t^(n mod q), after substituting t^q -> 1/2.
    std::map<Int, Rat> reduced;
    for (const auto& [e, c] : terms) {
        Int n = rat_num(e) * (q / rat_den(e));
        Int r = n % q;
        if (r < 0) r += q;
        // 2^(-e) = t^n = t^r * (1/2)^((n-r)/q)
        Rat contrib = c * pow2(-(n - r) / q);
        auto [it, fresh] = reduced.emplace(r, contrib);
        if (!fresh) {
            it->second += contrib;
            if (it->second == 0) reduced.erase(it);
        }
    }
    return reduced.empty();
}

class MpfrGuard {
  public:
    explicit MpfrGuard(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~MpfrGuard() { mpfr_clear(v); }
    MpfrGuard(const MpfrGuard&) = delete;
    MpfrGuard& operator=(const MpfrGuard&) = delete;
    mpfr_t v;
};

void set_from_rat(mpfr_t dst, const Rat& r, mpfr_rnd_t rnd) {
    mpq_t q;
    mpq_init(q);
    mpq_set_str(q, rat_str(r).c_str(), 10);
    mpq_canonicalize(q);
    mpfr_set_q(dst, q, rnd);
    mpq_clear(q);
}

// One endpoint of the enclosure of sum c*2^(-e), computed with directed
// rounding throughout. `upper` selects the upper endpoint.
void sum_bound(mpfr_t acc, const std::map<Rat, Rat>& terms, mpfr_prec_t prec, bool upper) {
    mpfr_set_zero(acc, 0);
    MpfrGuard e(prec), p(prec), term(prec);
    for (const auto& [exp, c] : terms) {
        const bool pos = c > 0;
        // For c > 0 the term grows as e shrinks; round e accordingly.
        const mpfr_rnd_t erud = (pos == upper) ? MPFR_RNDD : MPFR_RNDU;
        const mpfr_rnd_t rnd = upper ? MPFR_RNDU : MPFR_RNDD;
        set_from_rat(e.v, exp, erud);
        mpfr_neg(e.v, e.v, MPFR_RNDN);  // exact
        mpfr_exp2(p.v, e.v, rnd);
        set_from_rat(term.v, c, rnd);
        mpfr_mul(term.v, term.v, p.v, rnd);
        mpfr_add(acc, acc, term.v, rnd);
    }
}

}  // namespace

int sign_exp2_sum(const std::vector<Exp2Term>& terms) {
    const auto m = merged(terms);
    if (m.empty()) return 0;
    if (m.size() == 1) return m.begin()->second > 0 ? 1 : -1;
    if (is_zero_sum(m)) return 0;
    for (mpfr_prec_t prec = 64;; prec *= 2) {
        MpfrGuard lo(prec), hi(prec);
        sum_bound(lo.v, m, prec, false);
        sum_bound(hi.v, m, prec, true);
        if (mpfr_sgn(lo.v) > 0) return 1;
        if (mpfr_sgn(hi.v) < 0) return -1;
    }
}

Rat rat_parse(const std::string& text) {
    auto parse_int = [](const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty integer literal");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("bare sign in integer literal");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("bad integer literal: " + s);
        return Int(s);
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(num, den);
}

}  // namespace gnum

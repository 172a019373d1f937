#include "gnum/normal_form.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gnum {

namespace {

using BranchPoly = std::map<Rat, GaussRat>;  // exponent -> coeff, no zeros

void add_into(BranchPoly& p, const Rat& a, const GaussRat& c) {
    auto [it, fresh] = p.emplace(a, c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.is_zero()) p.erase(it);
    }
}

}  // namespace

NormalForm NormalForm::from_terms(const std::vector<Term>& terms) {
    long m = 1;
    for (const auto& t : terms) m = std::lcm(m, t.mask.modulus());

    // Pointwise expansion per residue class mod m.
    std::vector<BranchPoly> polys(m);
    for (const auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        for (long r = 0; r < m; ++r)
            if (t.mask.selects(r + m)) add_into(polys[r], t.exponent, t.coeff);
    }

    // Least period of the residue -> poly map.
    long d = m;
    for (long cand = 1; cand < m; ++cand) {
        if (m % cand != 0) continue;
        bool periodic = true;
        for (long r = 0; periodic && r < m; ++r)
            periodic = (polys[r] == polys[(r + cand) % m]);
        if (periodic) {
            d = cand;
            break;
        }
    }

    // Regroup identical (exponent, coeff) pairs across residues into masks.
    std::map<std::pair<Rat, GaussRat>, std::vector<long>> groups;
    for (long r = 0; r < d; ++r)
        for (const auto& [a, c] : polys[r]) groups[{a, c}].push_back(r);

    NormalForm out;
    for (const auto& [key, residues] : groups)
        out.terms_.emplace_back(key.second, key.first, Mask(d, residues).canonical());
    std::sort(out.terms_.begin(), out.terms_.end(), [](const Term& x, const Term& y) {
        if (x.exponent != y.exponent) return x.exponent < y.exponent;
        if (auto c = x.mask <=> y.mask; c != 0) return c < 0;
        return (x.coeff <=> y.coeff) < 0;
    });
    return out;
}

bool NormalForm::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return t.coeff.is_real(); });
}

NormalForm operator+(const NormalForm& a, const NormalForm& b) {
    std::vector<Term> ts = a.terms_;
    ts.insert(ts.end(), b.terms_.begin(), b.terms_.end());
    return NormalForm::from_terms(ts);
}

NormalForm operator-(const NormalForm& a) {
    std::vector<Term> ts = a.terms_;
    for (auto& t : ts) t.coeff = -t.coeff;
    return NormalForm::from_terms(ts);
}

NormalForm operator-(const NormalForm& a, const NormalForm& b) { return a + (-b); }

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
    std::vector<Term> ts;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            Mask m = Mask::intersect(ta.mask, tb.mask);
            if (m.is_empty()) continue;
            ts.emplace_back(ta.coeff * tb.coeff, ta.exponent + tb.exponent, m);
        }
    return NormalForm::from_terms(ts);
}

std::optional<Rat> NormalForm::valuation() const {
    if (terms_.empty()) return std::nullopt;
    // Canonical order is ascending exponent; the leading exponent of the
    // branch holding the first term realizes the minimum over branches.
    return terms_.front().exponent;
}

ValueNorm NormalForm::sharp_norm() const {
    auto v = valuation();
    return v ? ValueNorm::exp_neg(*v) : ValueNorm::zero();
}

Mask NormalForm::support() const {
    Mask s(1, {});
    for (const auto& t : terms_) s = Mask::unite(s, t.mask);
    return s;
}

std::optional<NormalForm> NormalForm::annihilator_witness() const {
    if (is_zero()) throw std::invalid_argument("annihilator_witness: zero input");
    Mask gap = support().complement();
    if (gap.is_empty()) return std::nullopt;
    return NormalForm::monomial(Rat(1), Rat(0), gap);
}

NormalForm ring_op(RingOpKind kind, const NormalForm& x, const NormalForm& y) {
    switch (kind) {
        case RingOpKind::add: return x + y;
        case RingOpKind::sub: return x - y;
        case RingOpKind::mul: return x * y;
        case RingOpKind::neg: return -x;
    }
    throw std::logic_error("unreachable");
}

}  // namespace gnum

#include "gnum/puiseux.hpp"

#include <map>
#include <stdexcept>

namespace gnum {

PuiseuxValue PuiseuxValue::make(std::vector<Pair> pairs) {
    std::map<Rat, Rat> m;
    for (auto& p : pairs) {
        if (p.coeff == 0) continue;
        auto [it, fresh] = m.emplace(p.exponent, p.coeff);
        if (!fresh) {
            it->second += p.coeff;
            if (it->second == 0) m.erase(it);
        }
    }
    PuiseuxValue out;
    for (auto& [a, c] : m) out.pairs_.push_back({c, a});
    return out;
}

PuiseuxValue operator+(const PuiseuxValue& a, const PuiseuxValue& b) {
    std::vector<PuiseuxValue::Pair> ps = a.pairs_;
    ps.insert(ps.end(), b.pairs_.begin(), b.pairs_.end());
    return PuiseuxValue::make(std::move(ps));
}

PuiseuxValue operator-(const PuiseuxValue& a) { return a.scaled(Rat(-1)); }

PuiseuxValue operator-(const PuiseuxValue& a, const PuiseuxValue& b) { return a + (-b); }

PuiseuxValue operator*(const PuiseuxValue& a, const PuiseuxValue& b) {
    std::vector<PuiseuxValue::Pair> ps;
    for (const auto& pa : a.pairs_)
        for (const auto& pb : b.pairs_)
            ps.push_back({pa.coeff * pb.coeff, pa.exponent + pb.exponent});
    return PuiseuxValue::make(std::move(ps));
}

PuiseuxValue PuiseuxValue::scaled(const Rat& c) const {
    std::vector<Pair> ps = pairs_;
    for (auto& p : ps) p.coeff *= c;
    return make(std::move(ps));
}

PuiseuxValue PuiseuxValue::shifted(const Rat& a) const {
    std::vector<Pair> ps = pairs_;
    for (auto& p : ps) p.exponent += a;
    return make(std::move(ps));
}

PuiseuxValue PuiseuxValue::rebased(long k1, long k2) const {
    if (k1 < 1 || k2 < 1) throw std::invalid_argument("rebased: indices must be >= 1");
    std::vector<Pair> ps = pairs_;
    for (auto& p : ps) p.exponent *= Rat(k1, k2);
    return make(std::move(ps));
}

std::string PuiseuxValue::str() const {
    if (pairs_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (i) s += " + ";
        s += rat_str(pairs_[i].coeff) + "*2^(-k*" + rat_str(pairs_[i].exponent) + ")";
    }
    return s;
}

int sign_at(const PuiseuxValue& u, long k) {
    if (k < 1) throw std::invalid_argument("sign_at: index must be >= 1");
    std::vector<Exp2Term> ts;
    for (const auto& p : u.pairs()) ts.push_back({p.coeff, p.exponent * k});
    return sign_exp2_sum(ts);
}

int compare_at(const PuiseuxValue& u, const PuiseuxValue& v, long k) {
    return sign_at(u - v, k);
}

int compare_values(const PuiseuxValue& u, long ku, const PuiseuxValue& v, long kv) {
    if (ku < 1 || kv < 1) throw std::invalid_argument("compare_values: indices must be >= 1");
    std::vector<Exp2Term> ts;
    for (const auto& p : u.pairs()) ts.push_back({p.coeff, p.exponent * ku});
    for (const auto& p : v.pairs()) ts.push_back({-p.coeff, p.exponent * kv});
    return sign_exp2_sum(ts);
}

PuiseuxValue abs_at(const PuiseuxValue& u, long k) {
    return sign_at(u, k) < 0 ? -u : u;
}

}  // namespace gnum

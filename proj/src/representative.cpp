#include "gnum/representative.hpp"

#include <algorithm>
#include <stdexcept>

namespace gnum {

Representative::Representative(NormalForm base) : base_(std::move(base)) {
    if (!base_.is_real())
        throw std::invalid_argument("Representative: complex coefficients are not pointwise evaluable");
}

PuiseuxValue eval_base_at(const NormalForm& base, long k) {
    if (k < 1) throw std::invalid_argument("eval_base_at: index must be >= 1");
    std::vector<PuiseuxValue::Pair> ps;
    for (const auto& t : base.terms())
        if (t.mask.selects(k)) ps.push_back({t.coeff.re, t.exponent});
    return PuiseuxValue::make(std::move(ps));
}

PuiseuxValue Representative::eval_at(long k) const {
    if (k < 1) throw std::invalid_argument("eval_at: index must be >= 1");
    if (auto it = patches_.find(k); it != patches_.end()) return it->second;
    if (k < prefix_limit_ && prefix_source_) return prefix_source_->eval_at(k);
    if (under_) return under_->eval_at(k);
    return eval_base_at(base_, k);
}

Representative Representative::patched(long k, PuiseuxValue value) const {
    if (k < 1) throw std::invalid_argument("patched: index must be >= 1");
    Representative out = *this;
    out.patches_[k] = std::move(value);
    return out;
}

long Representative::max_override_index() const {
    long m = 0;
    if (!patches_.empty()) m = patches_.rbegin()->first;
    if (prefix_source_) m = std::max(m, prefix_limit_ - 1);
    if (under_) m = std::max(m, under_->max_override_index());
    return m;
}

Representative Representative::with_prefix(std::shared_ptr<const Representative> src,
                                           long limit) const {
    if (limit <= 1) return *this;
    Representative out(base_);
    out.prefix_limit_ = limit;
    out.prefix_source_ = std::move(src);
    out.under_ = std::make_shared<Representative>(*this);
    return out;
}

}  // namespace gnum

#pragma once

#include <map>
#include <memory>

#include "gnum/normal_form.hpp"
#include "gnum/puiseux.hpp"

namespace gnum {

/// A concrete net in the class of its base: the base's pointwise values
/// plus finitely many per-index overrides. Overrides are negligible, so
/// the class of a Representative is always its base.
///
/// Besides the explicit patch map there is a compressed override form, a
/// prefix redirect: all indices below a bound read their value from
/// another Representative. Chain constructions patch whole prefixes, and
/// the redirect keeps those patches O(1) in memory. Precedence is newest
/// first: explicit patches, then the prefix redirect, then earlier layers.
class Representative {
  public:
    explicit Representative(NormalForm base);

    const NormalForm& class_of() const { return base_; }
    const std::map<long, PuiseuxValue>& patches() const { return patches_; }

    PuiseuxValue eval_at(long k) const;

    /// Copy with value at k overridden (last write wins).
    Representative patched(long k, PuiseuxValue value) const;

    /// Copy whose values for k < limit are read from src.
    Representative with_prefix(std::shared_ptr<const Representative> src, long limit) const;

    /// Largest index whose value may differ from the base expansion's.
    long max_override_index() const;

  private:
    NormalForm base_;
    std::map<long, PuiseuxValue> patches_;
    long prefix_limit_ = 0;
    std::shared_ptr<const Representative> prefix_source_;
    std::shared_ptr<const Representative> under_;  // earlier layer, pre-redirect
};

/// Pointwise value of the base expansion at index k (real case only).
PuiseuxValue eval_base_at(const NormalForm& base, long k);

}  // namespace gnum

#pragma once

#include <compare>
#include <vector>

namespace gnum {

/// Periodic set of grid indices: {k >= 1 : k mod modulus in residues}.
/// Canonical form uses the least modulus describing the same index set.
/// An empty residue set is allowed as a transient (it denotes the empty
/// index set and is eliminated during normal-form canonicalization).
class Mask {
  public:
    Mask() : modulus_(1), residues_{0} {}  // every index
    Mask(long modulus, std::vector<long> residues);

    static Mask all() { return Mask(); }

    long modulus() const { return modulus_; }
    const std::vector<long>& residues() const { return residues_; }

    bool is_all() const { return modulus_ == 1 && !residues_.empty(); }
    bool is_empty() const { return residues_.empty(); }
    bool selects(long k) const;

    /// Least-modulus representation of the same index set.
    Mask canonical() const;
    Mask complement() const;
    static Mask intersect(const Mask& a, const Mask& b);
    static Mask unite(const Mask& a, const Mask& b);

    friend bool operator==(const Mask&, const Mask&) = default;
    friend std::strong_ordering operator<=>(const Mask& a, const Mask& b) {
        if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
        return a.residues_ <=> b.residues_;
    }

  private:
    long modulus_;
    std::vector<long> residues_;  // sorted, unique, in [0, modulus)
};

}  // namespace gnum

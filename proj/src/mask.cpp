#include "gnum/mask.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gnum {

Mask::Mask(long modulus, std::vector<long> residues) : modulus_(modulus) {
    if (modulus < 1) throw std::invalid_argument("mask modulus must be positive");
    std::set<long> rs;
    for (long r : residues) {
        long v = r % modulus;
        if (v < 0) v += modulus;
        rs.insert(v);
    }
    residues_.assign(rs.begin(), rs.end());
}

bool Mask::selects(long k) const {
    long r = k % modulus_;
    if (r < 0) r += modulus_;
    return std::binary_search(residues_.begin(), residues_.end(), r);
}

Mask Mask::canonical() const {
    if (residues_.empty()) return Mask(1, {});
    for (long d = 1; d < modulus_; ++d) {
        if (modulus_ % d != 0) continue;
        // Usable iff membership depends only on the residue mod d.
        bool ok = true;
        for (long r = 0; ok && r < modulus_; ++r) {
            bool in_r = std::binary_search(residues_.begin(), residues_.end(), r);
            bool in_rd = std::binary_search(residues_.begin(), residues_.end(), (r + d) % modulus_);
            ok = (in_r == in_rd);
        }
        if (ok) {
            std::vector<long> rs;
            for (long r : residues_)
                if (r < d) rs.push_back(r);
            return Mask(d, rs);
        }
    }
    return *this;
}

Mask Mask::complement() const {
    std::vector<long> rs;
    for (long r = 0; r < modulus_; ++r)
        if (!std::binary_search(residues_.begin(), residues_.end(), r)) rs.push_back(r);
    return Mask(modulus_, rs).canonical();
}

Mask Mask::intersect(const Mask& a, const Mask& b) {
    long m = std::lcm(a.modulus_, b.modulus_);
    std::vector<long> rs;
    for (long r = 0; r < m; ++r)
        if (a.selects(r + m) && b.selects(r + m)) rs.push_back(r);
    return Mask(m, rs).canonical();
}

Mask Mask::unite(const Mask& a, const Mask& b) {
    long m = std::lcm(a.modulus_, b.modulus_);
    std::vector<long> rs;
    for (long r = 0; r < m; ++r)
        if (a.selects(r + m) || b.selects(r + m)) rs.push_back(r);
    return Mask(m, rs).canonical();
}

}  // namespace gnum

#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "matchkit/config.hpp"
#include "matchkit/errors.hpp"

namespace matchkit {

/// Element of a product of cyclic groups, one reduced residue per factor.
struct GroupElement {
    std::vector<int> coords;

    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Z_{d1} x ... x Z_{dk} in the product form it was written in; no
/// structure-theorem normalization, so Z2xZ4 and Z8 are distinct inputs.
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<int> moduli);

    const std::vector<int>& moduli() const { return moduli_; }
    std::size_t factors() const { return moduli_.size(); }
    long long order() const { return order_; }
    bool cyclic() const { return moduli_.size() == 1; }

    GroupElement zero() const;
    GroupElement element_at(long long index) const;
    long long index_of(const GroupElement& e) const;

    GroupElement add(const GroupElement& x, const GroupElement& y) const;
    GroupElement negate(const GroupElement& x) const;
    long long add_index(long long x, long long y) const;
    long long negate_index(long long x) const;

    std::string spec_string() const;
    std::string format_element(const GroupElement& e) const;

    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

private:
    void check_element(const GroupElement& e) const;

    std::vector<int> moduli_;
    long long order_ = 1;
};

/// Duplicate-free subset, kept sorted under the fixed lexicographic order on
/// coordinates (equivalently by mixed-radix index). All downstream
/// canonicalization and tie-breaking relies on this order.
class GroupSubset {
public:
    GroupSubset(FiniteAbelianGroup group, const std::vector<GroupElement>& elems);
    static GroupSubset from_indices(FiniteAbelianGroup group, std::vector<long long> indices);

    const FiniteAbelianGroup& group() const { return group_; }
    const std::vector<long long>& indices() const { return indices_; }
    std::vector<GroupElement> elements() const;
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    bool contains_index(long long index) const;
    bool contains(const GroupElement& e) const;

    std::string format() const;

    friend bool operator==(const GroupSubset&, const GroupSubset&) = default;

private:
    FiniteAbelianGroup group_;
    std::vector<long long> indices_;
};

struct Subgroup {
    GroupSubset carrier;
};

/// {a+b : a in A, b in B}, canonically ordered.
GroupSubset sumset(const GroupSubset& a, const GroupSubset& b);

/// Closure and identity membership by direct enumeration.
bool is_subgroup(const GroupSubset& s);

/// Every subgroup exactly once (including {0} and G), sorted by carrier.
/// Generate-and-close over generator extensions, deduplicated by carrier.
std::vector<Subgroup> subgroups(const FiniteAbelianGroup& g, long long max_order = 512);

/// Cyclic groups only: gcd(coordinate, modulus) == 1.
bool is_generator(const FiniteAbelianGroup& g, const GroupElement& e);

/// Grammar: Z<n> or Z<n>xZ<m>x... with every modulus >= 2.
FiniteAbelianGroup parse_group(std::string_view text);

/// Subsets as {0,2} for cyclic groups or {(0,1),(1,0)} in general; braces
/// optional. Residues must already be reduced.
GroupSubset parse_subset(const FiniteAbelianGroup& g, std::string_view text);

}  // namespace matchkit

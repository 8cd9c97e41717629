#pragma once

#include <string>
#include <vector>

#include "matchkit/gf.hpp"

namespace matchkit {

/// GF(p)-subspace of GF(p^n) held as a reduced row-echelon basis over the
/// power-basis coordinates; equal subspaces have identical matrices.
class Subspace {
public:
    Subspace(FieldExt ext, const std::vector<std::vector<int>>& vectors);

    static Subspace zero_space(const FieldExt& ext);
    static Subspace full_space(const FieldExt& ext);

    const FieldExt& ext() const { return ext_; }
    const std::vector<std::vector<int>>& rows() const { return rows_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    bool contains(const FqElem& x) const;
    bool contains(const Subspace& other) const;
    std::vector<FqElem> basis_elements() const;
    std::vector<FqElem> all_elements() const;  // sorted by rank, p^dim of them

    std::string format() const;  // basis as polynomial list, e.g. [1,t]

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    FieldExt ext_;
    std::vector<std::vector<int>> rows_;
};

Subspace span_of(const FieldExt& ext, const std::vector<FqElem>& vectors);
Subspace sum(const Subspace& v, const Subspace& w);
Subspace intersect(const Subspace& v, const Subspace& w);

/// Span of all pairwise basis products; basis-independent.
Subspace product_span(const Subspace& v, const Subspace& w);

Subspace scale(const FqElem& a, const Subspace& v);

/// a^{-1} V; invariant under nonzero scalar multiples of a.
Subspace scale_inv(const FqElem& a, const Subspace& v);

/// GF(p^d) inside GF(p^n) as the kernel of (Frobenius^d - id); requires d | n.
Subspace subfield(const FieldExt& ext, int d);

/// Smallest d | n with b^(p^d) = b; b = 0 gives 1.
int generated_subfield(const FieldExt& ext, const FqElem& b);

/// Largest subfield H with H*V = V, found by scanning the divisor lattice of
/// n top-down. Always contains GF(p).
Subspace stabilizer_subfield(const Subspace& v);

struct LinearKneserRecord {
    Subspace C;
    Subspace H;
    int lhs = 0;
    int rhs = 0;
    bool holds = false;
};

/// dim <AB> >= dim A + dim B - dim H; `holds` false signals a bug.
LinearKneserRecord verify_linear_kneser(const Subspace& a, const Subspace& b);

/// Linear functional on a fixed subspace B, written in the coordinates of
/// B's echelon basis.
struct DualFunctional {
    std::vector<int> coords;

    friend bool operator==(const DualFunctional&, const DualFunctional&) = default;
};

/// Basis of C-perp inside B*, via the coordinate dot-pairing on B's basis.
std::vector<DualFunctional> orthogonal(const Subspace& c, const Subspace& b);

/// Coordinates of v relative to B's echelon basis; requires membership.
std::vector<int> coords_in(const Subspace& b, const FqElem& v);
FqElem from_coords(const Subspace& b, const std::vector<int>& coords);

/// {v in B : f(v) = 0}.
Subspace functional_kernel(const Subspace& b, const DualFunctional& f);

/// Canonical echelon complement of V inside A (standard basis rows of A at
/// the non-pivot coordinate positions of V).
Subspace complement_in(const Subspace& v, const Subspace& a);

/// Canonical representatives (first nonzero coefficient 1), sorted by rank.
std::vector<FqElem> projective_points(const Subspace& v);

/// Every dim-k subspace exactly once by direct echelon-form iteration.
std::vector<Subspace> enumerate_subspaces(const FieldExt& ext, int k);

/// Same, but for subspaces of an ambient subspace A.
std::vector<Subspace> enumerate_subspaces_within(const Subspace& a, int k);

namespace gflin {

// Dense linear algebra over GF(p); the shared arithmetic layer.
using Row = std::vector<int>;
using Mat = std::vector<Row>;

Mat rref(Mat m, int p);
bool reduce_row(const Mat& rref_rows, Row& v, int p);  // true iff v reduces to zero
Mat nullspace(const Mat& equations, int p, int width);
Mat invert(const Mat& square, int p);

}  // namespace gflin

}  // namespace matchkit

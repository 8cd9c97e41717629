#include "matchkit/subspace.hpp"

#include <algorithm>

namespace matchkit {

namespace gflin {

namespace {

int inv_mod(int a, int p) {
    int t = 0;
    int nt = 1;
    int r = p;
    int nr = a % p;
    while (nr != 0) {
        int q = r / nr;
        int tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return ((t % p) + p) % p;
}

}  // namespace

Mat rref(Mat m, int p) {
    if (m.empty()) return m;
    std::size_t width = m[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < width && pivot_row < m.size(); ++col) {
        std::size_t found = m.size();
        for (std::size_t r = pivot_row; r < m.size(); ++r)
            if (m[r][col] % p != 0) {
                found = r;
                break;
            }
        if (found == m.size()) continue;
        std::swap(m[pivot_row], m[found]);
        int inv = inv_mod(m[pivot_row][col], p);
        for (auto& v : m[pivot_row]) v = v * inv % p;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == pivot_row || m[r][col] == 0) continue;
            int factor = m[r][col];
            for (std::size_t cc = 0; cc < width; ++cc)
                m[r][cc] = ((m[r][cc] - factor * m[pivot_row][cc]) % p + p) % p;
        }
        ++pivot_row;
    }
    m.resize(pivot_row);
    return m;
}

bool reduce_row(const Mat& rref_rows, Row& v, int p) {
    for (const auto& row : rref_rows) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        if (pivot == row.size()) continue;
        int factor = v[pivot] % p;
        if (factor == 0) continue;
        for (std::size_t c = 0; c < v.size(); ++c)
            v[c] = ((v[c] - factor * row[c]) % p + p) % p;
    }
    return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; });
}

Mat nullspace(const Mat& equations, int p, int width) {
    Mat reduced = rref(equations, p);
    std::vector<int> pivot_col_of_row;
    std::vector<char> is_pivot(static_cast<std::size_t>(width), 0);
    for (const auto& row : reduced) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        pivot_col_of_row.push_back(static_cast<int>(pivot));
        is_pivot[pivot] = 1;
    }
    Mat basis;
    for (int free_col = 0; free_col < width; ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
        Row v(static_cast<std::size_t>(width), 0);
        v[static_cast<std::size_t>(free_col)] = 1;
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            int coeff = reduced[r][static_cast<std::size_t>(free_col)];
            if (coeff != 0)
                v[static_cast<std::size_t>(pivot_col_of_row[r])] = (p - coeff) % p;
        }
        basis.push_back(std::move(v));
    }
    return rref(std::move(basis), p);
}

Mat invert(const Mat& square, int p) {
    std::size_t n = square.size();
    Mat work(n, Row(2 * n, 0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) work[r][c] = square[r][c];
        work[r][n + r] = 1;
    }
    work = rref(std::move(work), p);
    if (work.size() != n) throw DomainError("matrix is singular");
    Mat out(n, Row(n, 0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (work[r][c] != (r == c ? 1 : 0)) throw DomainError("matrix is singular");
            out[r][c] = work[r][n + c];
        }
    }
    return out;
}

}  // namespace gflin

Subspace::Subspace(FieldExt ext, const std::vector<std::vector<int>>& vectors)
    : ext_(std::move(ext)) {
    gflin::Mat m;
    for (const auto& v : vectors) {
        if (v.size() != static_cast<std::size_t>(ext_.degree()))
            throw StructuralError("basis vector has wrong width for " + ext_.spec_string());
        gflin::Row row(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            row[i] = ((v[i] % ext_.characteristic()) + ext_.characteristic()) %
                     ext_.characteristic();
        m.push_back(std::move(row));
    }
    rows_ = gflin::rref(std::move(m), ext_.characteristic());
}

Subspace Subspace::zero_space(const FieldExt& ext) { return Subspace(ext, {}); }

Subspace Subspace::full_space(const FieldExt& ext) {
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < ext.degree(); ++i) {
        std::vector<int> row(static_cast<std::size_t>(ext.degree()), 0);
        row[static_cast<std::size_t>(i)] = 1;
        rows.push_back(std::move(row));
    }
    return Subspace(ext, rows);
}

bool Subspace::contains(const FqElem& x) const {
    gflin::Row v = x.coeffs;
    return gflin::reduce_row(rows_, v, ext_.characteristic());
}

bool Subspace::contains(const Subspace& other) const {
    if (ext_ != other.ext_) throw StructuralError("subspaces live in different fields");
    for (const auto& row : other.rows_) {
        gflin::Row v = row;
        if (!gflin::reduce_row(rows_, v, ext_.characteristic())) return false;
    }
    return true;
}

std::vector<FqElem> Subspace::basis_elements() const {
    std::vector<FqElem> out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) out.push_back(FqElem{row});
    return out;
}

std::vector<FqElem> Subspace::all_elements() const {
    int p = ext_.characteristic();
    std::vector<FqElem> out;
    long long total = 1;
    for (int i = 0; i < dim(); ++i) total *= p;
    out.reserve(static_cast<std::size_t>(total));
    for (long long v = 0; v < total; ++v) {
        auto acc = ext_.zero();
        long long rest = v;
        for (const auto& row : rows_) {
            int c = static_cast<int>(rest % p);
            rest /= p;
            if (c != 0) acc = ext_.add(acc, ext_.scalar_mul(c, FqElem{row}));
        }
        out.push_back(std::move(acc));
    }
    std::sort(out.begin(), out.end(), [&](const FqElem& a, const FqElem& b) {
        return ext_.rank_of(a) < ext_.rank_of(b);
    });
    return out;
}

std::string Subspace::format() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i > 0) out += ',';
        out += ext_.format_element(FqElem{rows_[i]});
    }
    return out + "]";
}

Subspace span_of(const FieldExt& ext, const std::vector<FqElem>& vectors) {
    std::vector<std::vector<int>> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) rows.push_back(v.coeffs);
    return Subspace(ext, rows);
}

Subspace sum(const Subspace& v, const Subspace& w) {
    if (v.ext() != w.ext()) throw StructuralError("subspaces live in different fields");
    auto rows = v.rows();
    rows.insert(rows.end(), w.rows().begin(), w.rows().end());
    return Subspace(v.ext(), rows);
}

Subspace intersect(const Subspace& v, const Subspace& w) {
    if (v.ext() != w.ext()) throw StructuralError("subspaces live in different fields");
    // Zassenhaus: rref of [v|v; w|0], rows with zero left half carry the
    // intersection in their right half.
    int width = v.ext().degree();
    gflin::Mat m;
    for (const auto& row : v.rows()) {
        gflin::Row r(2 * static_cast<std::size_t>(width), 0);
        for (int c = 0; c < width; ++c) {
            r[static_cast<std::size_t>(c)] = row[static_cast<std::size_t>(c)];
            r[static_cast<std::size_t>(width + c)] = row[static_cast<std::size_t>(c)];
        }
        m.push_back(std::move(r));
    }
    for (const auto& row : w.rows()) {
        gflin::Row r(2 * static_cast<std::size_t>(width), 0);
        for (int c = 0; c < width; ++c) r[static_cast<std::size_t>(c)] = row[static_cast<std::size_t>(c)];
        m.push_back(std::move(r));
    }
    m = gflin::rref(std::move(m), v.ext().characteristic());
    std::vector<std::vector<int>> inter;
    for (const auto& row : m) {
        bool left_zero = true;
        for (int c = 0; c < width; ++c)
            if (row[static_cast<std::size_t>(c)] != 0) {
                left_zero = false;
                break;
            }
        if (!left_zero) continue;
        inter.emplace_back(row.begin() + width, row.end());
    }
    return Subspace(v.ext(), inter);
}

Subspace product_span(const Subspace& v, const Subspace& w) {
    if (v.ext() != w.ext()) throw StructuralError("subspaces live in different fields");
    const auto& ext = v.ext();
    std::vector<std::vector<int>> rows;
    for (const auto& a : v.rows())
        for (const auto& b : w.rows()) rows.push_back(ext.mul(FqElem{a}, FqElem{b}).coeffs);
    return Subspace(ext, rows);
}

Subspace scale(const FqElem& a, const Subspace& v) {
    const auto& ext = v.ext();
    std::vector<std::vector<int>> rows;
    for (const auto& row : v.rows()) rows.push_back(ext.mul(a, FqElem{row}).coeffs);
    return Subspace(ext, rows);
}

Subspace scale_inv(const FqElem& a, const Subspace& v) {
    const auto& ext = v.ext();
    if (ext.is_zero(a)) throw DomainError("cannot scale by the inverse of zero");
    return scale(ext.inverse(a), v);
}

Subspace subfield(const FieldExt& ext, int d) {
    if (d < 1 || ext.degree() % d != 0)
        throw DomainError("subfield degree " + std::to_string(d) + " does not divide " +
                          std::to_string(ext.degree()));
    // kernel of Frobenius^d - id as a GF(p)-linear map
    int n = ext.degree();
    gflin::Mat equations;
    std::vector<FqElem> images;
    for (int j = 0; j < n; ++j) {
        auto e = ext.zero();
        e.coeffs[static_cast<std::size_t>(j)] = 1;
        images.push_back(ext.sub(ext.frobenius(e, d), e));
    }
    for (int i = 0; i < n; ++i) {
        gflin::Row eq(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < n; ++j) eq[static_cast<std::size_t>(j)] = images[static_cast<std::size_t>(j)].coeffs[static_cast<std::size_t>(i)];
        equations.push_back(std::move(eq));
    }
    auto kernel = gflin::nullspace(equations, ext.characteristic(), n);
    Subspace result(ext, kernel);
    if (result.dim() != d) throw SoundnessError("fixed field has unexpected dimension");
    return result;
}

int generated_subfield(const FieldExt& ext, const FqElem& b) {
    if (ext.is_zero(b)) return 1;
    for (int d = 1; d <= ext.degree(); ++d) {
        if (ext.degree() % d != 0) continue;
        if (ext.frobenius(b, d) == b) return d;
    }
    throw SoundnessError("element fixed by no Frobenius power");
}

Subspace stabilizer_subfield(const Subspace& v) {
    if (v.dim() == 0) throw DomainError("stabilizer of the zero space is undefined");
    const auto& ext = v.ext();
    std::vector<int> divisors;
    for (int d = 1; d <= ext.degree(); ++d)
        if (ext.degree() % d == 0) divisors.push_back(d);
    std::sort(divisors.rbegin(), divisors.rend());
    for (int d : divisors) {
        auto h = subfield(ext, d);
        if (product_span(h, v) == v) return h;
    }
    throw SoundnessError("GF(p) failed to stabilize a subspace");
}

LinearKneserRecord verify_linear_kneser(const Subspace& a, const Subspace& b) {
    if (a.dim() == 0 || b.dim() == 0)
        throw DomainError("the product-span inequality needs non-zero subspaces");
    LinearKneserRecord rec{product_span(a, b), Subspace::zero_space(a.ext()), 0, 0, false};
    rec.H = stabilizer_subfield(rec.C);
    rec.lhs = rec.C.dim();
    rec.rhs = a.dim() + b.dim() - rec.H.dim();
    rec.holds = rec.lhs >= rec.rhs;
    return rec;
}

std::vector<int> coords_in(const Subspace& b, const FqElem& v) {
    int p = b.ext().characteristic();
    std::vector<int> coords;
    coords.reserve(b.rows().size());
    gflin::Row residual = v.coeffs;
    for (const auto& row : b.rows()) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        int c = residual[pivot] % p;
        coords.push_back(c);
        if (c != 0)
            for (std::size_t k = 0; k < residual.size(); ++k)
                residual[k] = ((residual[k] - c * row[k]) % p + p) % p;
    }
    if (!std::all_of(residual.begin(), residual.end(), [](int c) { return c == 0; }))
        throw DomainError("element is not a member of the subspace");
    return coords;
}

FqElem from_coords(const Subspace& b, const std::vector<int>& coords) {
    if (coords.size() != b.rows().size()) throw StructuralError("coordinate count mismatch");
    auto acc = b.ext().zero();
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] % b.ext().characteristic() != 0)
            acc = b.ext().add(acc, b.ext().scalar_mul(coords[i], FqElem{b.rows()[i]}));
    return acc;
}

std::vector<DualFunctional> orthogonal(const Subspace& c, const Subspace& b) {
    if (c.ext() != b.ext()) throw StructuralError("subspaces live in different fields");
    if (!b.contains(c)) throw DomainError("orthogonal requires C to be a subspace of B");
    gflin::Mat constraints;
    for (const auto& row : c.rows()) constraints.push_back(coords_in(b, FqElem{row}));
    auto basis = gflin::nullspace(constraints, b.ext().characteristic(), b.dim());
    std::vector<DualFunctional> out;
    out.reserve(basis.size());
    for (auto& row : basis) out.push_back(DualFunctional{std::move(row)});
    if (static_cast<int>(out.size()) != b.dim() - c.dim())
        throw SoundnessError("orthogonal dimension identity failed");
    return out;
}

Subspace functional_kernel(const Subspace& b, const DualFunctional& f) {
    if (f.coords.size() != static_cast<std::size_t>(b.dim()))
        throw StructuralError("functional has wrong arity");
    gflin::Mat eq{f.coords};
    auto coord_basis = gflin::nullspace(eq, b.ext().characteristic(), b.dim());
    std::vector<std::vector<int>> rows;
    for (const auto& coords : coord_basis) rows.push_back(from_coords(b, coords).coeffs);
    return Subspace(b.ext(), rows);
}

Subspace complement_in(const Subspace& v, const Subspace& a) {
    if (!a.contains(v)) throw DomainError("complement requires V to be a subspace of A");
    gflin::Mat coord_rows;
    for (const auto& row : v.rows()) coord_rows.push_back(coords_in(a, FqElem{row}));
    coord_rows = gflin::rref(std::move(coord_rows), a.ext().characteristic());
    std::vector<char> pivot(static_cast<std::size_t>(a.dim()), 0);
    for (const auto& row : coord_rows) {
        std::size_t c = 0;
        while (c < row.size() && row[c] == 0) ++c;
        pivot[c] = 1;
    }
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < a.dim(); ++i)
        if (!pivot[static_cast<std::size_t>(i)]) rows.push_back(a.rows()[static_cast<std::size_t>(i)]);
    return Subspace(a.ext(), rows);
}

std::vector<FqElem> projective_points(const Subspace& v) {
    const auto& ext = v.ext();
    std::vector<FqElem> points;
    for (const auto& e : v.all_elements()) {
        if (ext.is_zero(e)) continue;
        std::size_t first = 0;
        while (e.coeffs[first] == 0) ++first;
        if (e.coeffs[first] == 1) points.push_back(e);
    }
    return points;  // all_elements is rank-sorted already
}

std::vector<Subspace> enumerate_subspaces(const FieldExt& ext, int k) {
    return enumerate_subspaces_within(Subspace::full_space(ext), k);
}

std::vector<Subspace> enumerate_subspaces_within(const Subspace& a, int k) {
    // Iterate reduced echelon shapes directly: choose pivot columns, then run
    // through every assignment of the free entries.
    std::vector<Subspace> out;
    int n = a.dim();
    if (k < 0 || k > n) return out;
    if (k == 0) {
        out.push_back(Subspace::zero_space(a.ext()));
        return out;
    }
    int p = a.ext().characteristic();
    std::vector<int> pivots(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pivots[static_cast<std::size_t>(i)] = i;
    auto emit_for_pivots = [&] {
        std::vector<std::pair<int, int>> free_slots;  // (row, col) in coordinate space
        for (int r = 0; r < k; ++r)
            for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < n; ++c) {
                bool is_pivot_col = false;
                for (int rr = 0; rr < k; ++rr)
                    if (pivots[static_cast<std::size_t>(rr)] == c) is_pivot_col = true;
                if (!is_pivot_col) free_slots.emplace_back(r, c);
            }
        long long total = 1;
        for (std::size_t i = 0; i < free_slots.size(); ++i) total *= p;
        for (long long v = 0; v < total; ++v) {
            gflin::Mat coord(static_cast<std::size_t>(k), gflin::Row(static_cast<std::size_t>(n), 0));
            for (int r = 0; r < k; ++r)
                coord[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] = 1;
            long long rest = v;
            for (const auto& [r, c] : free_slots) {
                coord[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = static_cast<int>(rest % p);
                rest /= p;
            }
            std::vector<std::vector<int>> rows;
            for (const auto& crow : coord) rows.push_back(from_coords(a, crow).coeffs);
            out.push_back(Subspace(a.ext(), rows));
        }
    };
    for (;;) {
        emit_for_pivots();
        int i = k - 1;
        while (i >= 0 && pivots[static_cast<std::size_t>(i)] == n - (k - i)) --i;
        if (i < 0) break;
        ++pivots[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

}  // namespace matchkit

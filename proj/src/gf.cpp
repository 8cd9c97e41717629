#include "matchkit/gf.hpp"

#include <algorithm>
#include <cctype>

namespace matchkit {

namespace {

long long read_number(std::string_view s, std::size_t& i, const char* what) {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError(std::string(s), start, std::string("expected ") + what);
    if (i - start > 9) throw ParseError(std::string(s), start, "number too large");
    long long v = 0;
    for (std::size_t k = start; k < i; ++k) v = v * 10 + (s[k] - '0');
    return v;
}

int mod_inverse(int a, int p) {
    int t = 0;
    int new_t = 1;
    int r = p;
    int new_r = a % p;
    while (new_r != 0) {
        int q = r / new_r;
        int tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw DomainError("no inverse mod " + std::to_string(p));
    return ((t % p) + p) % p;
}

void trim(std::vector<int>& poly) {
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    trim(out);
    return out;
}

std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    trim(a);
    int inv_lead = mod_inverse(m.back(), p);
    while (a.size() >= m.size()) {
        int factor = a.back() * inv_lead % p;
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            a[shift + i] = ((a[shift + i] - factor * m[i]) % p + p) % p;
        }
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

std::vector<int> poly_add(const std::vector<int>& a, const std::vector<int>& b, int p) {
    std::vector<int> out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int v = 0;
        if (i < a.size()) v += a[i];
        if (i < b.size()) v += b[i];
        out[i] = v % p;
    }
    trim(out);
    return out;
}

std::vector<int> poly_scale(const std::vector<int>& a, int c, int p) {
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c % p;
    trim(out);
    return out;
}

/// Extended Euclid over GF(p)[t]: returns s with s*a = gcd(a, m) mod m.
std::vector<int> poly_inverse_mod(const std::vector<int>& a, const std::vector<int>& m, int p) {
    std::vector<int> r0 = m;
    std::vector<int> r1 = poly_mod(a, m, p);
    std::vector<int> s0;
    std::vector<int> s1 = {1};
    if (r1.empty()) throw DomainError("inverse of zero");
    while (!r1.empty()) {
        // divide r0 by r1
        std::vector<int> q;
        std::vector<int> rem = r0;
        int inv_lead = mod_inverse(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            int factor = rem.back() * inv_lead % p;
            std::size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = (q[shift] + factor) % p;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = ((rem[shift + i] - factor * r1[i]) % p + p) % p;
            trim(rem);
        }
        std::vector<int> s2 = poly_add(s0, poly_scale(poly_mul(q, s1, p), p - 1, p), p);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if (r0.size() != 1) throw DomainError("element is not invertible");
    return poly_mod(poly_scale(s0, mod_inverse(r0[0], p), p), m, p);
}

}  // namespace

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible(const std::vector<int>& monic_poly, int p) {
    int deg = static_cast<int>(monic_poly.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // no roots
    for (int x = 0; x < p; ++x) {
        long long v = 0;
        for (std::size_t i = monic_poly.size(); i-- > 0;) v = (v * x + monic_poly[i]) % p;
        if (v == 0) return false;
    }
    // no monic divisor of degree 2..deg/2 (degree-1 divisors are roots)
    for (int d = 2; d <= deg / 2; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long v = 0; v < count; ++v) {
            std::vector<int> div(static_cast<std::size_t>(d) + 1, 0);
            long long rest = v;
            for (int i = 0; i < d; ++i) {
                div[static_cast<std::size_t>(i)] = static_cast<int>(rest % p);
                rest /= p;
            }
            div[static_cast<std::size_t>(d)] = 1;
            if (poly_mod(monic_poly, div, p).empty()) return false;
        }
    }
    return true;
}

std::vector<int> smallest_irreducible(int p, int n) {
    long long count = 1;
    for (int i = 0; i < n; ++i) count *= p;
    for (long long v = 0; v < count; ++v) {
        std::vector<int> poly(static_cast<std::size_t>(n) + 1, 0);
        long long rest = v;
        for (int i = 0; i < n; ++i) {
            poly[static_cast<std::size_t>(i)] = static_cast<int>(rest % p);
            rest /= p;
        }
        poly[static_cast<std::size_t>(n)] = 1;
        if (is_irreducible(poly, p)) return poly;
    }
    throw SoundnessError("no irreducible polynomial found");  // cannot happen
}

FieldExt::FieldExt(int characteristic, int degree)
    : FieldExt(characteristic, degree, smallest_irreducible(characteristic, degree)) {}

FieldExt::FieldExt(int characteristic, int degree, std::vector<int> modulus)
    : p_(characteristic), n_(degree), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw DomainError("characteristic must be prime");
    if (n_ < 1) throw DomainError("extension degree must be >= 1");
    if (modulus_.size() != static_cast<std::size_t>(n_) + 1)
        throw DomainError("modulus must have degree " + std::to_string(n_));
    for (int c : modulus_)
        if (c < 0 || c >= p_) throw DomainError("modulus coefficients must be reduced mod p");
    if (modulus_.back() != 1) throw DomainError("modulus must be monic");
    if (!is_irreducible(modulus_, p_))
        throw DomainError("modulus is reducible over GF(" + std::to_string(p_) + ")");
    order_ = 1;
    for (int i = 0; i < n_; ++i) {
        if (order_ > (1ll << 40) / p_) throw ResourceError("field order too large to index");
        order_ *= p_;
    }
}

void FieldExt::check_element(const FqElem& x) const {
    if (x.coeffs.size() != static_cast<std::size_t>(n_))
        throw StructuralError("element has wrong coefficient count for " + spec_string());
    for (int c : x.coeffs)
        if (c < 0 || c >= p_) throw StructuralError("element coefficients not reduced");
}

FqElem FieldExt::zero() const { return FqElem{std::vector<int>(static_cast<std::size_t>(n_), 0)}; }

FqElem FieldExt::one() const {
    auto e = zero();
    e.coeffs[0] = 1;
    return e;
}

FqElem FieldExt::gen() const {
    if (n_ < 2) return one();  // in GF(p) the class of t is a constant
    auto e = zero();
    e.coeffs[1] = 1;
    return e;
}

FqElem FieldExt::make(std::vector<int> coeffs) const {
    if (coeffs.size() > static_cast<std::size_t>(n_)) {
        auto reduced = poly_mod(std::move(coeffs), modulus_, p_);
        reduced.resize(static_cast<std::size_t>(n_), 0);
        return FqElem{std::move(reduced)};
    }
    coeffs.resize(static_cast<std::size_t>(n_), 0);
    for (int& c : coeffs) c = ((c % p_) + p_) % p_;
    return FqElem{std::move(coeffs)};
}

long long FieldExt::rank_of(const FqElem& x) const {
    check_element(x);
    long long rank = 0;
    for (std::size_t i = x.coeffs.size(); i-- > 0;) rank = rank * p_ + x.coeffs[i];
    return rank;
}

FqElem FieldExt::element_at(long long rank) const {
    if (rank < 0 || rank >= order_) throw StructuralError("element rank out of range");
    auto e = zero();
    for (int i = 0; i < n_; ++i) {
        e.coeffs[static_cast<std::size_t>(i)] = static_cast<int>(rank % p_);
        rank /= p_;
    }
    return e;
}

bool FieldExt::is_zero(const FqElem& x) const {
    check_element(x);
    return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](int c) { return c == 0; });
}

FqElem FieldExt::add(const FqElem& x, const FqElem& y) const {
    check_element(x);
    check_element(y);
    auto out = zero();
    for (int i = 0; i < n_; ++i)
        out.coeffs[static_cast<std::size_t>(i)] =
            (x.coeffs[static_cast<std::size_t>(i)] + y.coeffs[static_cast<std::size_t>(i)]) % p_;
    return out;
}

FqElem FieldExt::sub(const FqElem& x, const FqElem& y) const { return add(x, neg(y)); }

FqElem FieldExt::neg(const FqElem& x) const {
    check_element(x);
    auto out = zero();
    for (int i = 0; i < n_; ++i)
        out.coeffs[static_cast<std::size_t>(i)] =
            (p_ - x.coeffs[static_cast<std::size_t>(i)]) % p_;
    return out;
}

FqElem FieldExt::mul(const FqElem& x, const FqElem& y) const {
    check_element(x);
    check_element(y);
    auto prod = poly_mod(poly_mul(x.coeffs, y.coeffs, p_), modulus_, p_);
    prod.resize(static_cast<std::size_t>(n_), 0);
    return FqElem{std::move(prod)};
}

FqElem FieldExt::inverse(const FqElem& x) const {
    check_element(x);
    if (is_zero(x)) throw DomainError("zero has no multiplicative inverse");
    auto inv = poly_inverse_mod(x.coeffs, modulus_, p_);
    inv.resize(static_cast<std::size_t>(n_), 0);
    auto result = FqElem{std::move(inv)};
    if (mul(x, result) != one()) throw SoundnessError("inverse failed x * x^-1 = 1 check");
    return result;
}

FqElem FieldExt::pow(const FqElem& x, long long e) const {
    check_element(x);
    if (e < 0) return pow(inverse(x), -e);
    auto base = x;
    auto acc = one();
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

FqElem FieldExt::scalar_mul(int c, const FqElem& x) const {
    check_element(x);
    c = ((c % p_) + p_) % p_;
    auto out = zero();
    for (int i = 0; i < n_; ++i)
        out.coeffs[static_cast<std::size_t>(i)] = x.coeffs[static_cast<std::size_t>(i)] * c % p_;
    return out;
}

FqElem FieldExt::frobenius(const FqElem& x, int times) const {
    long long e = 1;
    for (int i = 0; i < times; ++i) e *= p_;
    return pow(x, e);
}

std::string FieldExt::spec_string() const {
    if (n_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(" + std::to_string(p_) + "^" + std::to_string(n_) + ")";
}

namespace {

std::string poly_to_string(const std::vector<int>& coeffs) {
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        int c = coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c);
            out += 't';
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string FieldExt::modulus_string() const { return poly_to_string(modulus_); }

std::string FieldExt::format_element(const FqElem& x) const {
    check_element(x);
    return poly_to_string(x.coeffs);
}

FqElem FieldExt::parse_element(std::string_view text) const {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_int = [&]() -> long long {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw ParseError(std::string(text), start, "expected a number");
        if (i - start > 9) throw ParseError(std::string(text), start, "number too large");
        long long v = 0;
        for (std::size_t k = start; k < i; ++k) v = v * 10 + (text[k] - '0');
        return v;
    };
    std::vector<int> coeffs;
    auto bump = [&](long long deg, long long c) {
        if (deg >= 4 * static_cast<long long>(n_) + 4)
            throw ParseError(std::string(text), i, "exponent too large");
        if (coeffs.size() <= static_cast<std::size_t>(deg))
            coeffs.resize(static_cast<std::size_t>(deg) + 1, 0);
        coeffs[static_cast<std::size_t>(deg)] =
            static_cast<int>((coeffs[static_cast<std::size_t>(deg)] + c) % p_);
    };
    skip();
    if (i >= text.size()) throw ParseError(std::string(text), i, "empty element");
    for (;;) {
        skip();
        long long coeff = 1;
        bool saw_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = read_int() % p_;
            saw_coeff = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
            }
        }
        if (i < text.size() && text[i] == 't') {
            ++i;
            long long deg = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                deg = read_int();
            }
            bump(deg, coeff);
        } else if (saw_coeff) {
            bump(0, coeff);
        } else {
            throw ParseError(std::string(text), i, "expected a term");
        }
        skip();
        if (i >= text.size()) break;
        if (text[i] != '+') throw ParseError(std::string(text), i, "expected '+'");
        ++i;
    }
    return make(std::move(coeffs));
}

FieldExt parse_field(std::string_view spec, std::string_view modulus_csv, const Budgets& budgets) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
    };
    skip();
    if (spec.substr(i, 2) != "GF" && spec.substr(i, 2) != "gf")
        throw ParseError(std::string(spec), i, "expected 'GF'");
    i += 2;
    skip();
    if (i >= spec.size() || spec[i] != '(') throw ParseError(std::string(spec), i, "expected '('");
    ++i;
    std::size_t at = i;
    long long base = read_number(spec, i, "characteristic");
    long long deg = 1;
    skip();
    if (i < spec.size() && spec[i] == '^') {
        ++i;
        deg = read_number(spec, i, "degree");
    }
    skip();
    if (i >= spec.size() || spec[i] != ')') throw ParseError(std::string(spec), i, "expected ')'");
    ++i;
    skip();
    if (i != spec.size()) throw ParseError(std::string(spec), i, "trailing characters");

    int p;
    int n;
    if (deg == 1 && !is_prime(base)) {
        // GF(q) form: factor q as a prime power
        long long q = base;
        long long smallest = 0;
        for (long long d = 2; d * d <= q; ++d)
            if (q % d == 0) {
                smallest = d;
                break;
            }
        if (smallest == 0 || q < 2) throw ParseError(std::string(spec), at, "not a prime power");
        int e = 0;
        while (q % smallest == 0) {
            q /= smallest;
            ++e;
        }
        if (q != 1) throw ParseError(std::string(spec), at, "not a prime power");
        p = static_cast<int>(smallest);
        n = e;
    } else {
        if (!is_prime(base)) throw ParseError(std::string(spec), at, "characteristic must be prime");
        p = static_cast<int>(base);
        n = static_cast<int>(deg);
    }
    long long order = 1;
    for (int k = 0; k < n; ++k) {
        order *= p;
        if (order > budgets.max_field_order)
            throw ResourceError("field order exceeds configured maximum of " +
                                std::to_string(budgets.max_field_order));
    }

    if (modulus_csv.empty()) return FieldExt(p, n);
    std::vector<int> mod;
    std::size_t j = 0;
    for (;;) {
        while (j < modulus_csv.size() && std::isspace(static_cast<unsigned char>(modulus_csv[j])))
            ++j;
        std::size_t start = j;
        bool negative = false;
        if (j < modulus_csv.size() && modulus_csv[j] == '-') {
            negative = true;
            ++j;
        }
        while (j < modulus_csv.size() && std::isdigit(static_cast<unsigned char>(modulus_csv[j])))
            ++j;
        if (j == start + (negative ? 1 : 0))
            throw ParseError(std::string(modulus_csv), start, "expected coefficient");
        int v = std::stoi(std::string(modulus_csv.substr(start, j - start)));
        mod.push_back(((v % p) + p) % p);
        while (j < modulus_csv.size() && std::isspace(static_cast<unsigned char>(modulus_csv[j])))
            ++j;
        if (j == modulus_csv.size()) break;
        if (modulus_csv[j] != ',')
            throw ParseError(std::string(modulus_csv), j, "expected ','");
        ++j;
    }
    return FieldExt(p, n, std::move(mod));
}

}  // namespace matchkit

#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "matchkit/config.hpp"
#include "matchkit/errors.hpp"

namespace matchkit {

/// Element of GF(p^n) as a reduced coefficient vector in the power basis
/// 1, t, ..., t^(n-1); coeffs[i] multiplies t^i.
struct FqElem {
    std::vector<int> coeffs;

    friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

/// GF(p) subseteq GF(p^n) with an explicit monic irreducible modulus.
class FieldExt {
public:
    /// Uses the canonical smallest irreducible modulus for (p, n).
    FieldExt(int characteristic, int degree);
    FieldExt(int characteristic, int degree, std::vector<int> modulus);

    int characteristic() const { return p_; }
    int degree() const { return n_; }
    long long order() const { return order_; }
    const std::vector<int>& modulus() const { return modulus_; }

    FqElem zero() const;
    FqElem one() const;
    FqElem gen() const;  // the class of t
    FqElem make(std::vector<int> coeffs) const;

    long long rank_of(const FqElem& x) const;  // sum coeffs[i] * p^i
    FqElem element_at(long long rank) const;

    bool is_zero(const FqElem& x) const;

    FqElem add(const FqElem& x, const FqElem& y) const;
    FqElem sub(const FqElem& x, const FqElem& y) const;
    FqElem neg(const FqElem& x) const;
    FqElem mul(const FqElem& x, const FqElem& y) const;
    FqElem inverse(const FqElem& x) const;
    FqElem pow(const FqElem& x, long long e) const;
    FqElem scalar_mul(int c, const FqElem& x) const;
    FqElem frobenius(const FqElem& x, int times) const;  // x^(p^times)

    std::string spec_string() const;     // GF(2^4)
    std::string modulus_string() const;  // t^4+t+1
    std::string format_element(const FqElem& x) const;
    FqElem parse_element(std::string_view text) const;

    friend bool operator==(const FieldExt&, const FieldExt&) = default;

private:
    void check_element(const FqElem& x) const;

    int p_ = 0;
    int n_ = 0;
    long long order_ = 0;
    std::vector<int> modulus_;  // length n+1, monic
};

bool is_prime(long long n);

/// Trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(const std::vector<int>& monic_poly, int p);

/// Smallest monic irreducible of degree n over GF(p), measured by the integer
/// encoding sum c_i p^i of the non-leading coefficients. Matches the usual
/// minimal-polynomial tables (t^4+t+1 for GF(16), t^2+1 for GF(9)).
std::vector<int> smallest_irreducible(int p, int n);

/// Grammar: GF(p^n) or GF(q) for a prime power q; optional modulus given as
/// comma-separated coefficients c0,...,cn (low degree first, monic).
FieldExt parse_field(std::string_view spec, std::string_view modulus_csv,
                     const Budgets& budgets = {});

}  // namespace matchkit

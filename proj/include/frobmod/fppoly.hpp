#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobmod/degree.hpp"

namespace frob {

using i64 = std::int64_t;

// Arithmetic mod a prime p. p must satisfy p < 2^31 so products fit in i64.
namespace modp {

inline i64 norm(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}
inline i64 add(i64 a, i64 b, i64 p) { return (a + b) % p; }
inline i64 sub(i64 a, i64 b, i64 p) { return norm(a - b, p); }
inline i64 mul(i64 a, i64 b, i64 p) { return (a * b) % p; }
i64 inv(i64 a, i64 p);                // extended Euclid; raises DivisionByZero on a = 0 mod p
i64 pow(i64 a, i64 e, i64 p);         // e >= 0
bool is_prime(i64 p);

}  // namespace modp

class FpPoly;
struct FpPolyDivMod;

// Dense univariate polynomial over F_p. Coefficients live in [0, p); the
// trailing (leading-term) coefficient is nonzero; the zero polynomial has an
// empty coefficient vector and degree -infinity.
class FpPoly {
  public:
    FpPoly() : p_(0) {}
    explicit FpPoly(i64 p) : p_(p) {}
    FpPoly(i64 p, std::vector<i64> coeffs);

    static FpPoly zero(i64 p) { return FpPoly(p); }
    static FpPoly constant(i64 p, i64 c) { return FpPoly(p, {c}); }
    static FpPoly monomial(i64 p, i64 c, i64 k);
    static FpPoly x(i64 p) { return monomial(p, 1, 1); }

    i64 p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    Degree degree() const { return c_.empty() ? Degree::neg_inf() : Degree::of((i64)c_.size() - 1); }
    i64 coeff(i64 k) const { return (k >= 0 && k < (i64)c_.size()) ? c_[k] : 0; }
    i64 lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<i64>& coeffs() const { return c_; }

    FpPoly operator-() const;
    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly scaled(i64 c) const;

    // division with remainder; divisor must be nonzero
    FpPolyDivMod divmod(const FpPoly& d) const;
    FpPoly operator/(const FpPoly& d) const;
    FpPoly operator%(const FpPoly& d) const;
    FpPoly exact_div(const FpPoly& d) const;  // raises unless remainder is zero

    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const FpPoly& o) const { return !(*this == o); }

    FpPoly monic() const;  // nonzero input
    FpPoly derivative() const;
    FpPoly pow(i64 e) const;
    // f(x^k): the bracket power f^{p^e} equals subst_xk(p^e) since F_p is fixed
    FpPoly subst_xk(i64 k) const;
    FpPoly frobenius(i64 pe) const { return subst_xk(pe); }  // pe = p^e as an integer
    i64 eval(i64 a) const;

    bool is_pth_power() const;   // lies in F_p[x^p]
    FpPoly pth_root() const;     // requires is_pth_power()

    // total order used for deterministic tie-breaks: by degree, then
    // lexicographically on coefficients from the leading term down
    static int cmp(const FpPoly& a, const FpPoly& b);

    std::string str(const std::string& var = "x") const;

  private:
    void trim();
    i64 p_;
    std::vector<i64> c_;  // c_[k] is the x^k coefficient
};

struct FpPolyDivMod {
    FpPoly quot, rem;
};

FpPoly gcd(const FpPoly& a, const FpPoly& b);  // monic gcd, gcd(0,0) = 0
struct XgcdResult {
    FpPoly g, u, v;  // g = u*a + v*b, g monic (or zero)
};
XgcdResult xgcd(const FpPoly& a, const FpPoly& b);

bool is_irreducible(const FpPoly& f);
// least monic irreducible of degree m, ordering the non-leading coefficient
// tuples by their base-p value (constant coefficient least significant)
FpPoly least_irreducible(i64 p, int m);

// Rational function over F_p in canonical form: denominator monic,
// gcd(num, den) = 1, zero is 0/1.
class FpRat {
  public:
    FpRat() = default;
    explicit FpRat(FpPoly num);
    FpRat(FpPoly num, FpPoly den);  // canonicalizes; raises DivisionByZero if den = 0

    static FpRat zero(i64 p) { return FpRat(FpPoly::zero(p)); }
    static FpRat one(i64 p) { return FpRat(FpPoly::constant(p, 1)); }
    static FpRat constant(i64 p, i64 c) { return FpRat(FpPoly::constant(p, c)); }

    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }
    i64 p() const { return num_.p(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    FpRat operator-() const;
    FpRat operator+(const FpRat& o) const;
    FpRat operator-(const FpRat& o) const;
    FpRat operator*(const FpRat& o) const;
    FpRat operator/(const FpRat& o) const;
    FpRat inv() const;

    bool operator==(const FpRat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const FpRat& o) const { return !(*this == o); }

    FpRat frobenius(i64 pe) const;  // pe = p^e
    bool is_pth_power() const;
    FpRat pth_root() const;

    std::string str(const std::string& var = "x") const;

  private:
    FpPoly num_, den_;
};

}  // namespace frob

#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "frobmod/fppoly.hpp"

namespace frob {

enum class RingKind {
    PrimeField,      // F_p
    ExtField,        // F_{p^m} = F_p[u]/(h), h monic irreducible of degree m
    PolyRing,        // F_p[x]
    RatFuncField,    // F_p(x)
    QuotientRing,    // F_p(x)[t]/(P), P monic in t
    PerfectClosure,  // truncated F_p(x)^{1/p^inf}: pairs (f, t) meaning f(x^{1/p^t})
};

const char* ring_kind_name(RingKind k);

class RingDescriptor;
using Ring = std::shared_ptr<const RingDescriptor>;

class RingDescriptor {
  public:
    static Ring prime_field(i64 p);
    static Ring ext_field(i64 p, int m);                    // lex-least modulus
    static Ring ext_field(i64 p, FpPoly modulus);           // explicit monic irreducible
    static Ring poly_ring(i64 p);
    static Ring rat_func_field(i64 p);
    static Ring quotient_ring(i64 p, std::vector<FpRat> modulus_in_t);
    static Ring perfect_closure(i64 p);

    RingKind kind() const { return kind_; }
    i64 p() const { return p_; }
    int m() const { return m_; }                            // ExtField only (1 for PrimeField)
    const FpPoly& ext_modulus() const { return ext_mod_; }
    const std::vector<FpRat>& quot_modulus() const { return quot_mod_; }
    int quot_degree() const { return (int)quot_mod_.size() - 1; }

    bool is_field() const { return kind_ != RingKind::PolyRing && kind_ != RingKind::QuotientRing; }
    bool is_finite_field() const { return kind_ == RingKind::PrimeField || kind_ == RingKind::ExtField; }
    bool is_domain() const { return kind_ != RingKind::QuotientRing; }
    i64 field_size() const;  // finite fields only

    bool equals(const RingDescriptor& o) const;
    std::string str() const;

  private:
    RingDescriptor() = default;
    RingKind kind_ = RingKind::PrimeField;
    i64 p_ = 0;
    int m_ = 1;
    FpPoly ext_mod_;
    std::vector<FpRat> quot_mod_;
};

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || a->equals(*b); }

// Truncated perfect-closure element: the value f(x^{1/p^level}); canonical
// when level = 0 or f is not a p-th power in F_p(x).
struct PerfElem {
    FpRat f;
    int level = 0;
    bool operator==(const PerfElem&) const = default;
};

// Residue in F_p(x)[t]/(P): coefficients of 1, t, ..., t^{deg P - 1}.
struct QuotElem {
    std::vector<FpRat> c;
    bool operator==(const QuotElem&) const = default;
};

class RingScalar {
  public:
    RingScalar() = default;  // invalid; traps on use

    static RingScalar zero(const Ring& r);
    static RingScalar one(const Ring& r);
    static RingScalar from_int(const Ring& r, i64 v);
    static RingScalar of_prime(const Ring& r, i64 residue);
    static RingScalar of_ext(const Ring& r, FpPoly rep);          // reduced mod modulus
    static RingScalar of_poly(const Ring& r, FpPoly f);
    static RingScalar of_rat(const Ring& r, FpRat f);
    static RingScalar of_quot(const Ring& r, std::vector<FpRat> coeffs);  // reduced mod modulus
    static RingScalar of_perf(const Ring& r, FpRat f, int level);

    const Ring& ring() const;
    RingKind kind() const { return ring()->kind(); }
    bool valid() const { return ring_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;  // invertible in the ring

    RingScalar operator-() const;
    RingScalar operator+(const RingScalar& o) const;
    RingScalar operator-(const RingScalar& o) const;
    RingScalar operator*(const RingScalar& o) const;
    RingScalar operator/(const RingScalar& o) const;  // raises unless divisor invertible
    RingScalar inv() const;
    RingScalar exact_div(const RingScalar& o) const;  // domains: exact ring division

    bool operator==(const RingScalar& o) const;
    bool operator!=(const RingScalar& o) const { return !(*this == o); }

    // a^{p^e}; e >= 0
    RingScalar frobenius_power(i64 e) const;
    // b with b^{p^e} = a, where roots exist; raises UnsupportedRing otherwise
    RingScalar p_th_root(i64 e) const;
    RingScalar pow(i64 e) const;  // e >= 0

    // payload accessors (checked)
    i64 as_prime() const;
    const FpPoly& as_ext() const;
    const FpPoly& as_poly() const;
    const FpRat& as_rat() const;
    const QuotElem& as_quot() const;
    const PerfElem& as_perf() const;

    // finite fields: 0 <= index < p^m, base-p digits are the rep coefficients
    i64 index() const;
    static RingScalar from_index(const Ring& r, i64 idx);

    std::string str() const;

  private:
    Ring ring_;
    std::variant<i64, FpPoly, FpRat, QuotElem, PerfElem> v_;
};

// canonical embedding across rings; raises NoCanonicalEmbedding when absent
RingScalar embed(const RingScalar& a, const Ring& target);
bool has_canonical_embedding(const Ring& from, const Ring& to);

// Dense polynomial over a coefficient ring, tagged with its indeterminate.
// This is the I/O-facing polynomial; F_p internals use FpPoly directly.
class RPoly {
  public:
    RPoly(Ring coeff_ring, std::string var);
    RPoly(Ring coeff_ring, std::string var, std::vector<RingScalar> coeffs);

    const Ring& coeff_ring() const { return ring_; }
    const std::string& var() const { return var_; }
    Degree degree() const;
    bool is_zero() const { return c_.empty(); }
    RingScalar coeff(i64 k) const;
    const std::vector<RingScalar>& coeffs() const { return c_; }

    RPoly operator+(const RPoly& o) const;
    RPoly operator*(const RPoly& o) const;
    RingScalar eval(const RingScalar& at) const;

    std::string str() const;

  private:
    void trim();
    Ring ring_;
    std::string var_;
    std::vector<RingScalar> c_;
};

// reduce a polynomial in t with F_p(x) coefficients into the quotient ring
RingScalar quotient_reduce(const RPoly& expr, const Ring& quotient);

}  // namespace frob

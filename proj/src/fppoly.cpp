#include "frobmod/fppoly.hpp"

#include <algorithm>

#include "frobmod/errors.hpp"

namespace frob {

namespace modp {

i64 inv(i64 a, i64 p) {
    a = norm(a, p);
    require(a != 0, Err::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
    // extended Euclid on (a, p)
    i64 r0 = a, r1 = p, s0 = 1, s1 = 0;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1;
        i64 s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    return norm(s0, p);
}

i64 pow(i64 a, i64 e, i64 p) {
    a = norm(a, p);
    i64 r = 1 % p;
    while (e > 0) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace modp

FpPoly::FpPoly(i64 p, std::vector<i64> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& c : c_) c = modp::norm(c, p_);
    trim();
}

FpPoly FpPoly::monomial(i64 p, i64 c, i64 k) {
    c = modp::norm(c, p);
    if (c == 0) return zero(p);
    std::vector<i64> v((size_t)k + 1, 0);
    v[(size_t)k] = c;
    return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::operator-() const {
    FpPoly r(*this);
    for (auto& c : r.c_) c = modp::sub(0, c, p_);
    return r;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    FpPoly r(p_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = modp::add(coeff((i64)i), o.coeff((i64)i), p_);
    r.trim();
    return r;
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    FpPoly r(p_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = modp::sub(coeff((i64)i), o.coeff((i64)i), p_);
    r.trim();
    return r;
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(p_);
    // iterate the sparser factor on the outside: bracket powers produce
    // high-degree polynomials with a handful of terms
    auto nnz = [](const std::vector<i64>& v) {
        size_t n = 0;
        for (i64 c : v) n += (c != 0);
        return n;
    };
    const FpPoly& sparse = nnz(c_) <= nnz(o.c_) ? *this : o;
    const FpPoly& dense = nnz(c_) <= nnz(o.c_) ? o : *this;
    FpPoly r(p_);
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < sparse.c_.size(); ++i) {
        if (sparse.c_[i] == 0) continue;
        i64 ci = sparse.c_[i];
        for (size_t j = 0; j < dense.c_.size(); ++j) {
            if (dense.c_[j] == 0) continue;
            r.c_[i + j] = (r.c_[i + j] + ci * dense.c_[j]) % p_;
        }
    }
    r.trim();
    return r;
}

FpPoly FpPoly::scaled(i64 c) const {
    c = modp::norm(c, p_);
    if (c == 0) return zero(p_);
    FpPoly r(*this);
    for (auto& x : r.c_) x = modp::mul(x, c, p_);
    r.trim();
    return r;
}

FpPoly FpPoly::operator/(const FpPoly& d) const { return divmod(d).quot; }
FpPoly FpPoly::operator%(const FpPoly& d) const { return divmod(d).rem; }

FpPolyDivMod FpPoly::divmod(const FpPoly& d) const {
    require(!d.is_zero(), Err::DivisionByZero, "polynomial division by zero");
    if (c_.size() < d.c_.size()) return {zero(p_), *this};
    i64 linv = modp::inv(d.lead(), p_);
    std::vector<i64> rem = c_;
    std::vector<i64> quot(c_.size() - d.c_.size() + 1, 0);
    for (i64 k = (i64)rem.size() - (i64)d.c_.size(); k >= 0; --k) {
        i64 t = modp::mul(rem[(size_t)(k + (i64)d.c_.size() - 1)], linv, p_);
        if (t == 0) continue;
        quot[(size_t)k] = t;
        for (size_t j = 0; j < d.c_.size(); ++j)
            rem[(size_t)k + j] = modp::sub(rem[(size_t)k + j], modp::mul(t, d.c_[j], p_), p_);
    }
    return {FpPoly(p_, std::move(quot)), FpPoly(p_, std::move(rem))};
}

FpPoly FpPoly::exact_div(const FpPoly& d) const {
    auto qr = divmod(d);
    require(qr.rem.is_zero(), Err::NotInvertible, "non-exact polynomial division");
    return qr.quot;
}

FpPoly FpPoly::monic() const {
    require(!is_zero(), Err::DivisionByZero, "monic of zero polynomial");
    return scaled(modp::inv(lead(), p_));
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return zero(p_);
    std::vector<i64> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = modp::mul((i64)(k % (size_t)p_), c_[k], p_);
    return FpPoly(p_, std::move(d));
}

FpPoly FpPoly::pow(i64 e) const {
    require(e >= 0, Err::ValidationError, "negative polynomial power");
    FpPoly base = *this;
    FpPoly r = constant(p_, 1);
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

FpPoly FpPoly::subst_xk(i64 k) const {
    require(k >= 1, Err::ValidationError, "subst_xk needs k >= 1");
    if (is_zero()) return zero(p_);
    std::vector<i64> v(((size_t)((i64)c_.size() - 1) * (size_t)k) + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) v[i * (size_t)k] = c_[i];
    return FpPoly(p_, std::move(v));
}

i64 FpPoly::eval(i64 a) const {
    a = modp::norm(a, p_);
    i64 r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = (r * a + c_[i]) % p_;
    return r;
}

bool FpPoly::is_pth_power() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0 && (i64)(i % (size_t)p_) != 0) return false;
    return true;
}

FpPoly FpPoly::pth_root() const {
    require(is_pth_power(), Err::UnsupportedRing, "polynomial is not a p-th power");
    if (is_zero()) return zero(p_);
    // coefficients of F_p are their own p-th roots
    std::vector<i64> v(((c_.size() - 1) / (size_t)p_) + 1, 0);
    for (size_t i = 0; i < c_.size(); i += (size_t)p_) v[i / (size_t)p_] = c_[i];
    return FpPoly(p_, std::move(v));
}

int FpPoly::cmp(const FpPoly& a, const FpPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size() ? -1 : 1;
    for (size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    return 0;
}

std::string FpPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(c_[i]);
        } else {
            if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
            s += var;
            if (i != 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        FpPoly r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    return r0.is_zero() ? r0 : r0.monic();
}

XgcdResult xgcd(const FpPoly& a, const FpPoly& b) {
    i64 p = a.p();
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = FpPoly::constant(p, 1), s1 = FpPoly::zero(p);
    FpPoly t0 = FpPoly::zero(p), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto qr = r0.divmod(r1);
        FpPoly r2 = qr.rem;
        FpPoly s2 = s0 - qr.quot * s1;
        FpPoly t2 = t0 - qr.quot * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    i64 c = modp::inv(r0.lead(), p);
    return {r0.scaled(c), s0.scaled(c), t0.scaled(c)};
}

namespace {

// enumerate monic degree-d polynomials by base-p value of the lower coefficients
FpPoly monic_by_index(i64 p, int d, i64 idx) {
    std::vector<i64> c((size_t)d + 1, 0);
    for (int i = 0; i < d; ++i) {
        c[(size_t)i] = idx % p;
        idx /= p;
    }
    c[(size_t)d] = 1;
    return FpPoly(p, std::move(c));
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

bool irreducible_trial_division(const FpPoly& f) {
    i64 p = f.p();
    int m = (int)f.degree().value();
    for (int d = 1; 2 * d <= m; ++d) {
        i64 count = ipow(p, d);
        for (i64 idx = 0; idx < count; ++idx) {
            if ((f % monic_by_index(p, d, idx)).is_zero()) return false;
        }
    }
    return true;
}

// Rabin: f (monic, deg m) is irreducible iff x^{p^m} = x (mod f) and
// gcd(x^{p^{m/l}} - x, f) = 1 for every prime l | m.
bool irreducible_rabin(const FpPoly& f) {
    i64 p = f.p();
    int m = (int)f.degree().value();
    auto xq_pow = [&](int k) {  // x^{p^k} mod f
        FpPoly r = FpPoly::x(p) % f;
        for (int i = 0; i < k; ++i) {
            // r <- r^p mod f by binary powering with exponent p
            FpPoly base = r, acc = FpPoly::constant(p, 1);
            i64 e = p;
            while (e > 0) {
                if (e & 1) acc = (acc * base) % f;
                base = (base * base) % f;
                e >>= 1;
            }
            r = acc;
        }
        return r;
    };
    if (xq_pow(m) != (FpPoly::x(p) % f)) return false;
    int rem = m;
    for (int l = 2; l <= rem; ++l) {
        if (rem % l != 0) continue;
        while (rem % l == 0) rem /= l;
        FpPoly g = gcd(xq_pow(m / l) - FpPoly::x(p), f);
        if (!g.is_constant()) return false;
    }
    return true;
}

}  // namespace

bool is_irreducible(const FpPoly& f) {
    if (!f.degree().finite() || f.degree().value() < 1) return false;
    if (f.degree().value() == 1) return true;
    if (f.coeff(0) == 0) return false;  // divisible by x
    if (f.degree().value() <= 12) return irreducible_trial_division(f);
    return irreducible_rabin(f.monic());
}

FpPoly least_irreducible(i64 p, int m) {
    require(m >= 1, Err::ValidationError, "extension degree must be >= 1");
    // the least irreducible turns up after a handful of candidates; saturate
    // the nominal search bound instead of rejecting large degrees
    i64 count = 1;
    for (int i = 0; i < m && count < ((i64)1 << 40); ++i) count *= p;
    for (i64 idx = 0; idx < count; ++idx) {
        FpPoly f = monic_by_index(p, m, idx);
        if (is_irreducible(f)) return f;
    }
    raise(Err::ValidationError, "no irreducible polynomial found (non-prime p?)");
}

FpRat::FpRat(FpPoly num) : num_(std::move(num)), den_(FpPoly::constant(num_.p(), 1)) {}

FpRat::FpRat(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
    require(!den_.is_zero(), Err::DivisionByZero, "zero denominator");
    if (num_.is_zero()) {
        den_ = FpPoly::constant(num_.p(), 1);
        return;
    }
    FpPoly g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
    }
    i64 c = modp::inv(den_.lead(), num_.p());
    num_ = num_.scaled(c);
    den_ = den_.scaled(c);
}

FpRat FpRat::operator-() const {
    FpRat r(*this);
    r.num_ = -r.num_;
    return r;
}

FpRat FpRat::operator+(const FpRat& o) const { return FpRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
FpRat FpRat::operator-(const FpRat& o) const { return FpRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
FpRat FpRat::operator*(const FpRat& o) const { return FpRat(num_ * o.num_, den_ * o.den_); }

FpRat FpRat::operator/(const FpRat& o) const {
    require(!o.is_zero(), Err::DivisionByZero, "rational division by zero");
    return FpRat(num_ * o.den_, den_ * o.num_);
}

FpRat FpRat::inv() const {
    require(!is_zero(), Err::DivisionByZero, "inverse of zero");
    return FpRat(den_, num_);
}

FpRat FpRat::frobenius(i64 pe) const { return FpRat(num_.subst_xk(pe), den_.subst_xk(pe)); }

bool FpRat::is_pth_power() const { return num_.is_pth_power() && den_.is_pth_power(); }

FpRat FpRat::pth_root() const { return FpRat(num_.pth_root(), den_.pth_root()); }

std::string FpRat::str(const std::string& var) const {
    if (is_polynomial()) return num_.str(var);
    auto wrap = [](const std::string& s) {
        return (s.find('+') != std::string::npos || s.find('*') != std::string::npos ||
                s.find('^') != std::string::npos)
                   ? "(" + s + ")"
                   : s;
    };
    return wrap(num_.str(var)) + "/" + wrap(den_.str(var));
}

const char* err_name(Err e) {
    switch (e) {
        case Err::DescriptorMismatch: return "DescriptorMismatch";
        case Err::DivisionByZero: return "DivisionByZero";
        case Err::NotInvertible: return "NotInvertible";
        case Err::UnsupportedRing: return "UnsupportedRing";
        case Err::DimensionMismatch: return "DimensionMismatch";
        case Err::SingularBasisChange: return "SingularBasisChange";
        case Err::NoCanonicalEmbedding: return "NoCanonicalEmbedding";
        case Err::NotUnit: return "NotUnit";
        case Err::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case Err::WitnessBoundExceeded: return "WitnessBoundExceeded";
        case Err::BoundExceeded: return "BoundExceeded";
        case Err::DegreeGuardExceeded: return "DegreeGuardExceeded";
        case Err::PowerRangeExceeded: return "PowerRangeExceeded";
        case Err::RootCheckFailed: return "RootCheckFailed";
        case Err::ParseError: return "ParseError";
        case Err::ValidationError: return "ValidationError";
    }
    return "UnknownError";
}

}  // namespace frob

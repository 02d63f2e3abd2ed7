#include "frobmod/ring.hpp"

#include <map>
#include <mutex>

#include "frobmod/errors.hpp"

namespace frob {

namespace {

i64 checked_ppow(i64 p, i64 e) {
    require(e >= 0, Err::ValidationError, "negative Frobenius exponent");
    i64 r = 1;
    for (i64 i = 0; i < e; ++i) {
        require(r <= ((i64)1 << 62) / p, Err::PowerRangeExceeded,
                "p^" + std::to_string(e) + " exceeds the native integer range");
        r *= p;
    }
    return r;
}

// --- polynomials in t over F_p(x), used for quotient-ring residues ---

using TPoly = std::vector<FpRat>;

void tp_trim(TPoly& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}

TPoly tp_add(const TPoly& a, const TPoly& b) {
    TPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size() && i < b.size())
            r[i] = a[i] + b[i];
        else
            r[i] = i < a.size() ? a[i] : b[i];
    }
    tp_trim(r);
    return r;
}

TPoly tp_neg(const TPoly& a) {
    TPoly r(a);
    for (auto& c : r) c = -c;
    return r;
}

TPoly tp_scale(const TPoly& a, const FpRat& c) {
    if (c.is_zero()) return {};
    TPoly r(a);
    for (auto& x : r) x = x * c;
    tp_trim(r);
    return r;
}

TPoly tp_mul(const TPoly& a, const TPoly& b) {
    if (a.empty() || b.empty()) return {};
    i64 p = a[0].p();
    TPoly r(a.size() + b.size() - 1, FpRat::zero(p));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    tp_trim(r);
    return r;
}

// remainder mod d; d must have invertible leading coefficient
TPoly tp_rem(TPoly a, const TPoly& d) {
    require(!d.empty(), Err::DivisionByZero, "t-polynomial division by zero");
    FpRat linv = d.back().inv();
    while (a.size() >= d.size()) {
        FpRat t = a.back() * linv;
        size_t k = a.size() - d.size();
        for (size_t j = 0; j < d.size(); ++j) a[k + j] = a[k + j] - t * d[j];
        tp_trim(a);
    }
    return a;
}

struct TXgcd {
    TPoly g, u;  // g = u*a + v*b (v not tracked)
};

// extended Euclid in t over F_p(x); returns gcd and the a-cofactor
TXgcd tp_xgcd(TPoly a, TPoly b) {
    i64 p = (!a.empty() ? a[0].p() : b[0].p());
    TPoly r0 = std::move(a), r1 = std::move(b);
    TPoly s0 = {FpRat::one(p)}, s1 = {};
    while (!r1.empty()) {
        // long division r0 = q*r1 + r2
        FpRat linv = r1.back().inv();
        TPoly r2 = r0, q;
        q.assign(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, FpRat::zero(p));
        while (r2.size() >= r1.size()) {
            FpRat t = r2.back() * linv;
            size_t k = r2.size() - r1.size();
            q[k] = t;
            for (size_t j = 0; j < r1.size(); ++j) r2[k + j] = r2[k + j] - t * r1[j];
            tp_trim(r2);
        }
        TPoly s2 = tp_add(s0, tp_neg(tp_mul(q, s1)));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    return {std::move(r0), std::move(s0)};
}

PerfElem perf_minimize(PerfElem e) {
    while (e.level > 0 && e.f.is_pth_power()) {
        e.f = e.f.pth_root();
        e.level--;
    }
    if (e.f.is_zero()) e.level = 0;
    return e;
}

FpRat perf_lift(const PerfElem& e, int level, i64 p) {
    if (e.level == level) return e.f;
    return e.f.frobenius(checked_ppow(p, level - e.level));
}

}  // namespace

const char* ring_kind_name(RingKind k) {
    switch (k) {
        case RingKind::PrimeField: return "prime";
        case RingKind::ExtField: return "ext";
        case RingKind::PolyRing: return "poly";
        case RingKind::RatFuncField: return "ratfunc";
        case RingKind::QuotientRing: return "quotient";
        case RingKind::PerfectClosure: return "perfect";
    }
    return "?";
}

static void check_prime(i64 p) {
    require(modp::is_prime(p), Err::ValidationError, std::to_string(p) + " is not prime");
    require(p < ((i64)1 << 31), Err::ValidationError, "characteristic too large");
}

Ring RingDescriptor::prime_field(i64 p) {
    check_prime(p);
    auto r = std::shared_ptr<RingDescriptor>(new RingDescriptor());
    r->kind_ = RingKind::PrimeField;
    r->p_ = p;
    return r;
}

Ring RingDescriptor::ext_field(i64 p, int m) {
    check_prime(p);
    require(m >= 1, Err::ValidationError, "extension degree must be >= 1");
    // memoized: the lex-least modulus search is deterministic but not free
    static std::mutex mu;
    static std::map<std::pair<i64, int>, FpPoly> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({p, m});
        if (it != cache.end()) return ext_field(p, it->second);
    }
    FpPoly h = least_irreducible(p, m);
    {
        std::lock_guard<std::mutex> lk(mu);
        cache.emplace(std::make_pair(p, m), h);
    }
    return ext_field(p, h);
}

Ring RingDescriptor::ext_field(i64 p, FpPoly modulus) {
    check_prime(p);
    require(modulus.p() == p, Err::DescriptorMismatch, "modulus characteristic mismatch");
    require(modulus.degree().finite() && modulus.degree().value() >= 1 && modulus.lead() == 1,
            Err::ValidationError, "extension modulus must be monic of degree >= 1");
    require(is_irreducible(modulus), Err::ValidationError, "extension modulus must be irreducible");
    auto r = std::shared_ptr<RingDescriptor>(new RingDescriptor());
    r->kind_ = RingKind::ExtField;
    r->p_ = p;
    r->m_ = (int)modulus.degree().value();
    r->ext_mod_ = std::move(modulus);
    return r;
}

Ring RingDescriptor::poly_ring(i64 p) {
    check_prime(p);
    auto r = std::shared_ptr<RingDescriptor>(new RingDescriptor());
    r->kind_ = RingKind::PolyRing;
    r->p_ = p;
    return r;
}

Ring RingDescriptor::rat_func_field(i64 p) {
    check_prime(p);
    auto r = std::shared_ptr<RingDescriptor>(new RingDescriptor());
    r->kind_ = RingKind::RatFuncField;
    r->p_ = p;
    return r;
}

Ring RingDescriptor::quotient_ring(i64 p, std::vector<FpRat> modulus_in_t) {
    check_prime(p);
    tp_trim(modulus_in_t);
    require(modulus_in_t.size() >= 2, Err::ValidationError, "quotient modulus must have degree >= 1");
    require(modulus_in_t.back().is_one(), Err::ValidationError, "quotient modulus must be monic in t");
    auto r = std::shared_ptr<RingDescriptor>(new RingDescriptor());
    r->kind_ = RingKind::QuotientRing;
    r->p_ = p;
    r->quot_mod_ = std::move(modulus_in_t);
    return r;
}

Ring RingDescriptor::perfect_closure(i64 p) {
    check_prime(p);
    auto r = std::shared_ptr<RingDescriptor>(new RingDescriptor());
    r->kind_ = RingKind::PerfectClosure;
    r->p_ = p;
    return r;
}

i64 RingDescriptor::field_size() const {
    require(is_finite_field(), Err::UnsupportedRing, "field_size on an infinite ring");
    return checked_ppow(p_, m_);
}

bool RingDescriptor::equals(const RingDescriptor& o) const {
    if (kind_ != o.kind_ || p_ != o.p_) return false;
    switch (kind_) {
        case RingKind::ExtField: return ext_mod_ == o.ext_mod_;
        case RingKind::QuotientRing: return quot_mod_ == o.quot_mod_;
        default: return true;
    }
}

std::string RingDescriptor::str() const {
    switch (kind_) {
        case RingKind::PrimeField: return "F" + std::to_string(p_);
        case RingKind::ExtField:
            return "F" + std::to_string(p_) + "^" + std::to_string(m_) + " = F" + std::to_string(p_) +
                   "[u]/(" + ext_mod_.str("u") + ")";
        case RingKind::PolyRing: return "F" + std::to_string(p_) + "[x]";
        case RingKind::RatFuncField: return "F" + std::to_string(p_) + "(x)";
        case RingKind::QuotientRing: {
            std::string s;
            for (size_t i = quot_mod_.size(); i-- > 0;) {
                if (quot_mod_[i].is_zero()) continue;
                if (!s.empty()) s += " + ";
                s += "(" + quot_mod_[i].str() + ")*t^" + std::to_string(i);
            }
            return "F" + std::to_string(p_) + "(x)[t]/(" + s + ")";
        }
        case RingKind::PerfectClosure: return "F" + std::to_string(p_) + "(x)^(1/p^inf)";
    }
    return "?";
}

// ---------------- RingScalar ----------------

const Ring& RingScalar::ring() const {
    require(ring_ != nullptr, Err::ValidationError, "use of an uninitialized scalar");
    return ring_;
}

RingScalar RingScalar::zero(const Ring& r) { return from_int(r, 0); }
RingScalar RingScalar::one(const Ring& r) { return from_int(r, 1); }

RingScalar RingScalar::from_int(const Ring& r, i64 v) {
    i64 p = r->p();
    v = modp::norm(v, p);
    switch (r->kind()) {
        case RingKind::PrimeField: return of_prime(r, v);
        case RingKind::ExtField: return of_ext(r, FpPoly::constant(p, v));
        case RingKind::PolyRing: return of_poly(r, FpPoly::constant(p, v));
        case RingKind::RatFuncField: return of_rat(r, FpRat::constant(p, v));
        case RingKind::QuotientRing: return of_quot(r, {FpRat::constant(p, v)});
        case RingKind::PerfectClosure: return of_perf(r, FpRat::constant(p, v), 0);
    }
    raise(Err::ValidationError, "bad ring kind");
}

RingScalar RingScalar::of_prime(const Ring& r, i64 residue) {
    require(r->kind() == RingKind::PrimeField, Err::DescriptorMismatch, "of_prime on non-prime ring");
    RingScalar s;
    s.ring_ = r;
    s.v_ = modp::norm(residue, r->p());
    return s;
}

RingScalar RingScalar::of_ext(const Ring& r, FpPoly rep) {
    require(r->kind() == RingKind::ExtField, Err::DescriptorMismatch, "of_ext on non-extension ring");
    require(rep.p() == r->p(), Err::DescriptorMismatch, "characteristic mismatch");
    RingScalar s;
    s.ring_ = r;
    s.v_ = rep % r->ext_modulus();
    return s;
}

RingScalar RingScalar::of_poly(const Ring& r, FpPoly f) {
    require(r->kind() == RingKind::PolyRing, Err::DescriptorMismatch, "of_poly on non-polynomial ring");
    require(f.p() == r->p(), Err::DescriptorMismatch, "characteristic mismatch");
    RingScalar s;
    s.ring_ = r;
    s.v_ = std::move(f);
    return s;
}

RingScalar RingScalar::of_rat(const Ring& r, FpRat f) {
    require(r->kind() == RingKind::RatFuncField, Err::DescriptorMismatch, "of_rat on non-rational ring");
    require(f.p() == r->p(), Err::DescriptorMismatch, "characteristic mismatch");
    RingScalar s;
    s.ring_ = r;
    s.v_ = std::move(f);
    return s;
}

RingScalar RingScalar::of_quot(const Ring& r, std::vector<FpRat> coeffs) {
    require(r->kind() == RingKind::QuotientRing, Err::DescriptorMismatch, "of_quot on non-quotient ring");
    TPoly v = std::move(coeffs);
    tp_trim(v);
    v = tp_rem(std::move(v), r->quot_modulus());
    RingScalar s;
    s.ring_ = r;
    s.v_ = QuotElem{std::move(v)};
    return s;
}

RingScalar RingScalar::of_perf(const Ring& r, FpRat f, int level) {
    require(r->kind() == RingKind::PerfectClosure, Err::DescriptorMismatch,
            "of_perf on non-perfect-closure ring");
    require(level >= 0, Err::ValidationError, "negative perfect-closure level");
    RingScalar s;
    s.ring_ = r;
    s.v_ = perf_minimize(PerfElem{std::move(f), level});
    return s;
}

i64 RingScalar::as_prime() const { return std::get<i64>(v_); }
const FpPoly& RingScalar::as_ext() const { return std::get<FpPoly>(v_); }
const FpPoly& RingScalar::as_poly() const { return std::get<FpPoly>(v_); }
const FpRat& RingScalar::as_rat() const { return std::get<FpRat>(v_); }
const QuotElem& RingScalar::as_quot() const { return std::get<QuotElem>(v_); }
const PerfElem& RingScalar::as_perf() const { return std::get<PerfElem>(v_); }

bool RingScalar::is_zero() const {
    switch (kind()) {
        case RingKind::PrimeField: return as_prime() == 0;
        case RingKind::ExtField:
        case RingKind::PolyRing: return std::get<FpPoly>(v_).is_zero();
        case RingKind::RatFuncField: return as_rat().is_zero();
        case RingKind::QuotientRing: return as_quot().c.empty();
        case RingKind::PerfectClosure: return as_perf().f.is_zero();
    }
    return false;
}

bool RingScalar::is_one() const { return *this == one(ring()); }

bool RingScalar::is_unit() const {
    switch (kind()) {
        case RingKind::PrimeField:
        case RingKind::ExtField:
        case RingKind::RatFuncField:
        case RingKind::PerfectClosure: return !is_zero();
        case RingKind::PolyRing: return std::get<FpPoly>(v_).is_constant() && !is_zero();
        case RingKind::QuotientRing: {
            if (is_zero()) return false;
            auto g = tp_xgcd(as_quot().c, ring()->quot_modulus());
            return g.g.size() == 1;
        }
    }
    return false;
}

static void check_same(const RingScalar& a, const RingScalar& b) {
    require(same_ring(a.ring(), b.ring()), Err::DescriptorMismatch,
            "operands from different rings: " + a.ring()->str() + " vs " + b.ring()->str());
}

RingScalar RingScalar::operator-() const {
    switch (kind()) {
        case RingKind::PrimeField: return of_prime(ring_, modp::sub(0, as_prime(), ring_->p()));
        case RingKind::ExtField: return of_ext(ring_, -as_ext());
        case RingKind::PolyRing: return of_poly(ring_, -as_poly());
        case RingKind::RatFuncField: return of_rat(ring_, -as_rat());
        case RingKind::QuotientRing: return of_quot(ring_, tp_neg(as_quot().c));
        case RingKind::PerfectClosure: return of_perf(ring_, -as_perf().f, as_perf().level);
    }
    raise(Err::ValidationError, "bad ring kind");
}

RingScalar RingScalar::operator+(const RingScalar& o) const {
    check_same(*this, o);
    switch (kind()) {
        case RingKind::PrimeField: return of_prime(ring_, modp::add(as_prime(), o.as_prime(), ring_->p()));
        case RingKind::ExtField: return of_ext(ring_, as_ext() + o.as_ext());
        case RingKind::PolyRing: return of_poly(ring_, as_poly() + o.as_poly());
        case RingKind::RatFuncField: return of_rat(ring_, as_rat() + o.as_rat());
        case RingKind::QuotientRing: return of_quot(ring_, tp_add(as_quot().c, o.as_quot().c));
        case RingKind::PerfectClosure: {
            const auto &a = as_perf(), &b = o.as_perf();
            int lv = std::max(a.level, b.level);
            return of_perf(ring_, perf_lift(a, lv, ring_->p()) + perf_lift(b, lv, ring_->p()), lv);
        }
    }
    raise(Err::ValidationError, "bad ring kind");
}

RingScalar RingScalar::operator-(const RingScalar& o) const { return *this + (-o); }

RingScalar RingScalar::operator*(const RingScalar& o) const {
    check_same(*this, o);
    switch (kind()) {
        case RingKind::PrimeField: return of_prime(ring_, modp::mul(as_prime(), o.as_prime(), ring_->p()));
        case RingKind::ExtField: return of_ext(ring_, as_ext() * o.as_ext());
        case RingKind::PolyRing: return of_poly(ring_, as_poly() * o.as_poly());
        case RingKind::RatFuncField: return of_rat(ring_, as_rat() * o.as_rat());
        case RingKind::QuotientRing: return of_quot(ring_, tp_mul(as_quot().c, o.as_quot().c));
        case RingKind::PerfectClosure: {
            const auto &a = as_perf(), &b = o.as_perf();
            int lv = std::max(a.level, b.level);
            return of_perf(ring_, perf_lift(a, lv, ring_->p()) * perf_lift(b, lv, ring_->p()), lv);
        }
    }
    raise(Err::ValidationError, "bad ring kind");
}

RingScalar RingScalar::inv() const {
    require(!is_zero(), Err::DivisionByZero, "inverse of zero");
    switch (kind()) {
        case RingKind::PrimeField: return of_prime(ring_, modp::inv(as_prime(), ring_->p()));
        case RingKind::ExtField: {
            auto g = xgcd(as_ext(), ring_->ext_modulus());
            return of_ext(ring_, g.u);
        }
        case RingKind::PolyRing:
            require(is_unit(), Err::NotInvertible, "non-constant polynomial has no inverse in F_p[x]");
            return of_poly(ring_, FpPoly::constant(ring_->p(), modp::inv(as_poly().coeff(0), ring_->p())));
        case RingKind::RatFuncField: return of_rat(ring_, as_rat().inv());
        case RingKind::QuotientRing: {
            auto g = tp_xgcd(as_quot().c, ring_->quot_modulus());
            require(g.g.size() == 1, Err::NotInvertible, "zero divisor in the quotient ring");
            return of_quot(ring_, tp_scale(g.u, g.g[0].inv()));
        }
        case RingKind::PerfectClosure:
            return of_perf(ring_, as_perf().f.inv(), as_perf().level);
    }
    raise(Err::ValidationError, "bad ring kind");
}

RingScalar RingScalar::operator/(const RingScalar& o) const {
    check_same(*this, o);
    require(!o.is_zero(), Err::DivisionByZero, "division by zero");
    if (kind() == RingKind::PolyRing) return of_poly(ring_, as_poly().exact_div(o.as_poly()));
    return *this * o.inv();
}

RingScalar RingScalar::exact_div(const RingScalar& o) const {
    check_same(*this, o);
    require(ring_->is_domain(), Err::UnsupportedRing, "exact division needs an integral domain");
    return *this / o;
}

bool RingScalar::operator==(const RingScalar& o) const {
    check_same(*this, o);
    return v_ == o.v_;
}

RingScalar RingScalar::frobenius_power(i64 e) const {
    require(e >= 0, Err::ValidationError, "negative Frobenius power");
    if (e == 0) return *this;
    i64 p = ring_->p();
    switch (kind()) {
        case RingKind::PrimeField: return *this;  // Fermat
        case RingKind::ExtField: {
            FpPoly r = as_ext();
            const FpPoly& h = ring_->ext_modulus();
            i64 steps = e % ring_->m();  // sigma has order m
            for (i64 i = 0; i < steps; ++i) {
                FpPoly base = r, acc = FpPoly::constant(p, 1);
                i64 k = p;
                while (k > 0) {
                    if (k & 1) acc = (acc * base) % h;
                    base = (base * base) % h;
                    k >>= 1;
                }
                r = acc;
            }
            return of_ext(ring_, r);
        }
        case RingKind::PolyRing: return of_poly(ring_, as_poly().subst_xk(checked_ppow(p, e)));
        case RingKind::RatFuncField: return of_rat(ring_, as_rat().frobenius(checked_ppow(p, e)));
        case RingKind::QuotientRing: {
            i64 q = checked_ppow(p, e);
            // (sum c_i t^i)^{p^e} = sum c_i^{p^e} (t^{p^e})^i
            const TPoly& c = as_quot().c;
            const TPoly& mod = ring_->quot_modulus();
            TPoly tq = {FpRat::zero(p), FpRat::one(p)};  // t
            {
                TPoly base = tq, acc = {FpRat::one(p)};
                i64 k = q;
                while (k > 0) {
                    if (k & 1) acc = tp_rem(tp_mul(acc, base), mod);
                    base = tp_rem(tp_mul(base, base), mod);
                    k >>= 1;
                }
                tq = acc;
            }
            TPoly r;  // Horner in t^q
            for (size_t i = c.size(); i-- > 0;) {
                r = tp_rem(tp_mul(r, tq), mod);
                r = tp_add(r, {c[i].frobenius(q)});
            }
            return of_quot(ring_, std::move(r));
        }
        case RingKind::PerfectClosure: {
            const auto& a = as_perf();
            return of_perf(ring_, a.f.frobenius(checked_ppow(p, e)), a.level);
        }
    }
    raise(Err::ValidationError, "bad ring kind");
}

RingScalar RingScalar::p_th_root(i64 e) const {
    require(e >= 1, Err::ValidationError, "p_th_root needs e >= 1");
    switch (kind()) {
        case RingKind::PrimeField: return *this;
        case RingKind::ExtField: {
            i64 m = ring_->m();
            i64 d = (m - e % m) % m;  // sigma^{-e} = sigma^{d}
            return frobenius_power(d);
        }
        case RingKind::PerfectClosure: {
            const auto& a = as_perf();
            require(a.level <= (1 << 20) - e, Err::PowerRangeExceeded, "perfect-closure level overflow");
            return of_perf(ring_, a.f, a.level + (int)e);
        }
        case RingKind::PolyRing: {
            FpPoly f = as_poly();
            for (i64 i = 0; i < e; ++i) {
                require(f.is_pth_power(), Err::UnsupportedRing,
                        "element of F_p[x] is not a p^e-th power");
                f = f.pth_root();
            }
            return of_poly(ring_, f);
        }
        case RingKind::RatFuncField: {
            FpRat f = as_rat();
            for (i64 i = 0; i < e; ++i) {
                require(f.is_pth_power(), Err::UnsupportedRing,
                        "element of F_p(x) is not a p^e-th power");
                f = f.pth_root();
            }
            return of_rat(ring_, f);
        }
        case RingKind::QuotientRing:
            raise(Err::UnsupportedRing, "p-th roots are not defined in the quotient ring");
    }
    raise(Err::ValidationError, "bad ring kind");
}

RingScalar RingScalar::pow(i64 e) const {
    require(e >= 0, Err::ValidationError, "negative power");
    RingScalar base = *this, r = one(ring());
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

i64 RingScalar::index() const {
    switch (kind()) {
        case RingKind::PrimeField: return as_prime();
        case RingKind::ExtField: {
            i64 idx = 0, p = ring_->p();
            const auto& c = as_ext().coeffs();
            for (size_t i = c.size(); i-- > 0;) idx = idx * p + c[i];
            return idx;
        }
        default: raise(Err::UnsupportedRing, "index is defined for finite fields only");
    }
}

RingScalar RingScalar::from_index(const Ring& r, i64 idx) {
    switch (r->kind()) {
        case RingKind::PrimeField: return of_prime(r, idx);
        case RingKind::ExtField: {
            std::vector<i64> c;
            i64 p = r->p();
            while (idx > 0) {
                c.push_back(idx % p);
                idx /= p;
            }
            return of_ext(r, FpPoly(p, std::move(c)));
        }
        default: raise(Err::UnsupportedRing, "from_index is defined for finite fields only");
    }
}

std::string RingScalar::str() const {
    switch (kind()) {
        case RingKind::PrimeField: return std::to_string(as_prime());
        case RingKind::ExtField: return as_ext().str("u");
        case RingKind::PolyRing: return as_poly().str("x");
        case RingKind::RatFuncField: return as_rat().str("x");
        case RingKind::QuotientRing: {
            const auto& c = as_quot().c;
            if (c.empty()) return "0";
            std::string s;
            for (size_t i = c.size(); i-- > 0;) {
                if (c[i].is_zero()) continue;
                if (!s.empty()) s += "+";
                std::string coef = c[i].str();
                bool needs_paren = coef.find('+') != std::string::npos ||
                                   coef.find('/') != std::string::npos ||
                                   coef.find('*') != std::string::npos ||
                                   coef.find('^') != std::string::npos;
                if (i == 0) {
                    s += needs_paren ? "(" + coef + ")" : coef;
                } else {
                    if (!c[i].is_one()) s += (needs_paren ? "(" + coef + ")" : coef) + "*";
                    s += "t";
                    if (i != 1) s += "^" + std::to_string(i);
                }
            }
            return s;
        }
        case RingKind::PerfectClosure: {
            const auto& a = as_perf();
            if (a.level == 0) return a.f.str("x");
            return "(" + a.f.str("x") + ", " + std::to_string(a.level) + ")";
        }
    }
    return "?";
}

// ---------------- embeddings ----------------

namespace {

// lex-least root of h (a polynomial over F_p) in the extension field `target`
RingScalar ext_embedding_root(const FpPoly& h, const Ring& target) {
    static std::mutex mu;
    static std::map<std::string, i64> cache;
    std::string key = std::to_string(h.p()) + "|" + h.str() + "|" + target->ext_modulus().str();
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return RingScalar::from_index(target, it->second);
    }
    i64 size = target->field_size();
    for (i64 idx = 0; idx < size; ++idx) {
        RingScalar cand = RingScalar::from_index(target, idx);
        RingScalar val = RingScalar::zero(target);
        for (size_t i = h.coeffs().size(); i-- > 0;)
            val = val * cand + RingScalar::from_int(target, h.coeff((i64)i));
        if (val.is_zero()) {
            std::lock_guard<std::mutex> lk(mu);
            cache[key] = idx;
            return cand;
        }
    }
    raise(Err::NoCanonicalEmbedding, "source modulus has no root in the target field");
}

}  // namespace

bool has_canonical_embedding(const Ring& from, const Ring& to) {
    if (same_ring(from, to)) return true;
    if (from->p() != to->p()) return false;
    switch (from->kind()) {
        case RingKind::PrimeField: return true;  // constants land everywhere
        case RingKind::ExtField:
            return to->kind() == RingKind::ExtField && to->m() % from->m() == 0;
        case RingKind::PolyRing:
            return to->kind() == RingKind::RatFuncField || to->kind() == RingKind::QuotientRing ||
                   to->kind() == RingKind::PerfectClosure;
        case RingKind::RatFuncField:
            return to->kind() == RingKind::QuotientRing || to->kind() == RingKind::PerfectClosure;
        default: return false;
    }
}

RingScalar embed(const RingScalar& a, const Ring& target) {
    const Ring& src = a.ring();
    if (same_ring(src, target)) return a;
    require(has_canonical_embedding(src, target), Err::NoCanonicalEmbedding,
            "no canonical embedding " + src->str() + " -> " + target->str());
    switch (src->kind()) {
        case RingKind::PrimeField: return RingScalar::from_int(target, a.as_prime());
        case RingKind::ExtField: {
            RingScalar rho = ext_embedding_root(src->ext_modulus(), target);
            RingScalar val = RingScalar::zero(target);
            const auto& c = a.as_ext().coeffs();
            for (size_t i = c.size(); i-- > 0;)
                val = val * rho + RingScalar::from_int(target, c[i]);
            return val;
        }
        case RingKind::PolyRing: {
            FpRat f(a.as_poly());
            if (target->kind() == RingKind::RatFuncField) return RingScalar::of_rat(target, f);
            if (target->kind() == RingKind::QuotientRing) return RingScalar::of_quot(target, {f});
            return RingScalar::of_perf(target, f, 0);
        }
        case RingKind::RatFuncField: {
            if (target->kind() == RingKind::QuotientRing) return RingScalar::of_quot(target, {a.as_rat()});
            return RingScalar::of_perf(target, a.as_rat(), 0);
        }
        default: raise(Err::NoCanonicalEmbedding, "unreachable");
    }
}

// ---------------- RPoly ----------------

RPoly::RPoly(Ring coeff_ring, std::string var) : ring_(std::move(coeff_ring)), var_(std::move(var)) {}

RPoly::RPoly(Ring coeff_ring, std::string var, std::vector<RingScalar> coeffs)
    : ring_(std::move(coeff_ring)), var_(std::move(var)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        require(same_ring(c.ring(), ring_), Err::DescriptorMismatch, "coefficient ring mismatch");
    trim();
}

void RPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Degree RPoly::degree() const {
    return c_.empty() ? Degree::neg_inf() : Degree::of((i64)c_.size() - 1);
}

RingScalar RPoly::coeff(i64 k) const {
    if (k >= 0 && k < (i64)c_.size()) return c_[(size_t)k];
    return RingScalar::zero(ring_);
}

RPoly RPoly::operator+(const RPoly& o) const {
    require(same_ring(ring_, o.ring_) && var_ == o.var_, Err::DescriptorMismatch,
            "polynomial addition across different rings or variables");
    std::vector<RingScalar> r(std::max(c_.size(), o.c_.size()), RingScalar::zero(ring_));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff((i64)i) + o.coeff((i64)i);
    return RPoly(ring_, var_, std::move(r));
}

RPoly RPoly::operator*(const RPoly& o) const {
    require(same_ring(ring_, o.ring_) && var_ == o.var_, Err::DescriptorMismatch,
            "polynomial multiplication across different rings or variables");
    if (c_.empty() || o.c_.empty()) return RPoly(ring_, var_);
    std::vector<RingScalar> r(c_.size() + o.c_.size() - 1, RingScalar::zero(ring_));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    return RPoly(ring_, var_, std::move(r));
}

RingScalar RPoly::eval(const RingScalar& at) const {
    RingScalar r = RingScalar::zero(at.ring());
    for (size_t i = c_.size(); i-- > 0;) r = r * at + embed(c_[i], at.ring());
    return r;
}

std::string RPoly::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += "+";
        std::string coef = c_[i].str();
        bool paren = coef.find_first_of("+*/^") != std::string::npos;
        if (i == 0) {
            s += paren ? "(" + coef + ")" : coef;
        } else {
            if (!c_[i].is_one()) s += (paren ? "(" + coef + ")" : coef) + "*";
            s += var_;
            if (i != 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

RingScalar quotient_reduce(const RPoly& expr, const Ring& quotient) {
    require(quotient->kind() == RingKind::QuotientRing, Err::DescriptorMismatch,
            "quotient_reduce target must be a quotient ring");
    require(expr.var() == "t", Err::DescriptorMismatch, "quotient residues are polynomials in t");
    require(expr.coeff_ring()->p() == quotient->p(), Err::DescriptorMismatch,
            "characteristic mismatch");
    Ring rat = RingDescriptor::rat_func_field(quotient->p());
    std::vector<FpRat> c;
    c.reserve(expr.coeffs().size());
    for (const auto& s : expr.coeffs()) c.push_back(embed(s, rat).as_rat());
    return RingScalar::of_quot(quotient, std::move(c));
}

}  // namespace frob

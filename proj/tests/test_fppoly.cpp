#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobmod/errors.hpp"
#include "frobmod/fppoly.hpp"
#include "test_util.hpp"

using namespace frob;
using testutil::Rng;

TEST_CASE("modp basics") {
    CHECK(modp::add(2, 2, 3) == 1);
    CHECK(modp::inv(2, 5) == 3);
    CHECK(modp::pow(2, 10, 1000000007) == 1024);
    CHECK(modp::is_prime(2));
    CHECK(modp::is_prime(3));
    CHECK(!modp::is_prime(9));
    CHECK_THROWS_AS(modp::inv(0, 7), FrobError);
}

TEST_CASE("polynomial normal form and degree") {
    FpPoly z = FpPoly::zero(3);
    CHECK(z.degree() == Degree::neg_inf());
    CHECK(Degree::neg_inf() < Degree::of(0));
    CHECK((Degree::neg_inf() + Degree::of(5)) == Degree::neg_inf());

    FpPoly f(3, {1, 0, 0, 0});  // trailing zeros stripped
    CHECK(f.degree() == Degree::of(0));
    CHECK(FpPoly(3, {2, 5, 3}) == FpPoly(3, {2, 2}));  // coefficients reduced mod p
}

TEST_CASE("arithmetic, divmod, gcd") {
    Rng rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        i64 p = (trial % 2) ? 3 : 5;
        FpPoly a = testutil::random_fppoly(rng, p, 6);
        FpPoly b = testutil::random_nonzero_fppoly(rng, p, 4);
        auto qr = a.divmod(b);
        CHECK(qr.quot * b + qr.rem == a);
        CHECK(qr.rem.degree() < b.degree());
        FpPoly g = gcd(a, b);
        if (!a.is_zero()) CHECK((a % g).is_zero());
        CHECK((b % g).is_zero());
        auto xg = xgcd(a, b);
        CHECK(xg.u * a + xg.v * b == xg.g);
    }
    // deg(fg) = deg f + deg g over a domain
    for (int trial = 0; trial < 100; ++trial) {
        FpPoly a = testutil::random_fppoly(rng, 3, 5), b = testutil::random_fppoly(rng, 3, 5);
        CHECK((a * b).degree() == a.degree() + b.degree());
    }
}

TEST_CASE("frobenius substitution and p-th roots") {
    // (x+1)^p = x^p + 1
    FpPoly f(5, {1, 1});
    CHECK(f.pow(5) == f.subst_xk(5));
    FpPoly g(3, {2, 0, 1});  // x^2+2
    CHECK(g.pow(9) == g.subst_xk(9));
    CHECK(g.pow(3).is_pth_power());
    CHECK(g.pow(3).pth_root() == g);
    CHECK(!FpPoly(3, {0, 1}).is_pth_power());
}

TEST_CASE("irreducibility and least moduli") {
    // t(t-1)+1 = t^2-t+1 = (t+1)^2 over F_3 is reducible; t^2-t-1 is not
    CHECK(!is_irreducible(FpPoly(3, {1, 2, 1})));
    CHECK(is_irreducible(FpPoly(3, {2, 2, 1})));
    CHECK(least_irreducible(3, 2) == FpPoly(3, {1, 0, 1}));     // u^2+1
    CHECK(least_irreducible(2, 2) == FpPoly(2, {1, 1, 1}));     // u^2+u+1
    CHECK(least_irreducible(2, 3) == FpPoly(2, {1, 1, 0, 1}));  // u^3+u+1
    // the Rabin path (degree > 12) must agree with a trial-division oracle
    auto trial_division_oracle = [](const FpPoly& f) {
        i64 p = f.p();
        int m = (int)f.degree().value();
        for (int d = 1; 2 * d <= m; ++d) {
            i64 count = 1;
            for (int i = 0; i < d; ++i) count *= p;
            for (i64 idx = 0; idx < count; ++idx) {
                std::vector<i64> c((size_t)d + 1, 0);
                i64 v = idx;
                for (int i = 0; i < d; ++i) { c[(size_t)i] = v % p; v /= p; }
                c[(size_t)d] = 1;
                if ((f % FpPoly(p, c)).is_zero()) return false;
            }
        }
        return true;
    };
    Rng rng(2024);
    int seen_irreducible = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<i64> c(14, 0);
        for (int i = 0; i < 13; ++i) c[(size_t)i] = testutil::uniform(rng, 0, 2);
        c[13] = 1;
        FpPoly f(3, c);
        bool lib = is_irreducible(f);
        CHECK(lib == trial_division_oracle(f));
        seen_irreducible += lib;
    }
    CHECK(seen_irreducible > 0);
    CHECK(least_irreducible(3, 13).degree() == Degree::of(13));
}

TEST_CASE("rational function canonical form") {
    i64 p = 3;
    FpPoly x = FpPoly::x(p);
    FpPoly one = FpPoly::constant(p, 1);
    // (x/(x+1)) * ((x+1)/x) = 1
    FpRat a(x, x + one), b(x + one, x);
    CHECK((a * b).is_one());
    // canonical: monic denominator, coprime
    FpRat c(x * x + x, x * x);  // (x^2+x)/x^2 = (x+1)/x
    CHECK(c.num() == x + one);
    CHECK(c.den() == x);
    CHECK_THROWS_AS(FpRat(x, FpPoly::zero(p)), FrobError);
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        FpRat u(testutil::random_fppoly(rng, p, 4), testutil::random_nonzero_fppoly(rng, p, 4));
        FpRat v(testutil::random_fppoly(rng, p, 4), testutil::random_nonzero_fppoly(rng, p, 4));
        CHECK((u + v) - v == u);
        if (!v.is_zero()) CHECK((u / v) * v == u);
        // canonicalization is idempotent
        CHECK(FpRat(u.num(), u.den()) == u);
    }
}

TEST_CASE("string forms") {
    FpPoly f(3, {1, 2, 0, 0, 1});
    CHECK(f.str() == "x^4+2*x+1");
    CHECK(FpPoly::zero(3).str() == "0");
    CHECK(FpRat(FpPoly(3, {1, 1}), FpPoly(3, {0, 1})).str() == "(x+1)/x");
}

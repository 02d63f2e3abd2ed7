#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobmod/errors.hpp"
#include "frobmod/frobmod.hpp"
#include "test_util.hpp"

using namespace frob;
using testutil::Rng;

namespace {

Ring f3 = RingDescriptor::prime_field(3);
Ring f9 = RingDescriptor::ext_field(3, 2);

// the rank-2 module with structure matrix [[0,1],[1,x]] over F_p[x]
FrobModule poly_module(i64 p, i64 e = 1) {
    Ring R = RingDescriptor::poly_ring(p);
    Mat A(R, 2, 2);
    A.at(0, 1) = RingScalar::one(R);
    A.at(1, 0) = RingScalar::one(R);
    A.at(1, 1) = RingScalar::of_poly(R, FpPoly::x(p));
    return FrobModule(R, 2, e, A);
}

// the F_3 instance: A = [[0,1],[1,1]]
FrobModule f3_module() {
    Mat A(f3, 2, 2);
    A.at(0, 1) = RingScalar::one(f3);
    A.at(1, 0) = RingScalar::one(f3);
    A.at(1, 1) = RingScalar::one(f3);
    return FrobModule(f3, 2, 1, A);
}

RingScalar P(i64 p, const FpPoly& f) { return RingScalar::of_poly(RingDescriptor::poly_ring(p), f); }

}  // namespace

TEST_CASE("power_matrix: base case and the A_2 identity") {
    auto M = poly_module(3);
    CHECK(power_matrix(M, 1).A_r == M.matrix());
    // A_2 = [[1, x^3], [x, x^4+1]] for q = 3
    Mat A2 = power_matrix(M, 2).A_r;
    CHECK(A2.at(0, 0) == P(3, FpPoly::constant(3, 1)));
    CHECK(A2.at(0, 1) == P(3, FpPoly::monomial(3, 1, 3)));
    CHECK(A2.at(1, 0) == P(3, FpPoly::x(3)));
    CHECK(A2.at(1, 1) == P(3, FpPoly(3, {1, 0, 0, 0, 1})));
}

TEST_CASE("power_matrix recursion equals the direct product") {
    for (i64 p : {2, 3}) {
        auto M = poly_module(p);
        // direct product A A^[q] A^[q^2]
        Mat direct = M.matrix() * M.matrix().bracket_pow(1) * M.matrix().bracket_pow(2);
        CHECK(power_matrix(M, 3).A_r == direct);
    }
}

TEST_CASE("cocycle law A_{r+s} = A_r (A_s)^[q^r]") {
    for (i64 p : {2, 3, 5}) {
        auto M = poly_module(p);
        for (int r = 1; r <= 4; ++r)
            for (int s = 1; s <= 4; ++s) {
                Mat lhs = power_matrix(M, r + s).A_r;
                Mat rhs = power_matrix(M, r).A_r * power_matrix(M, s).A_r.bracket_pow(M.e() * r);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("apply: identity, the generic module, and the F_3 instance") {
    // identity structure matrix: apply is the bracket power
    Ring R = RingDescriptor::poly_ring(3);
    FrobModule Id(R, 2, 1, Mat::identity(R, 2));
    Mat v = testutil::colvec(R, {P(3, FpPoly(3, {1, 1})), P(3, FpPoly::x(3))});
    CHECK(apply(Id, v, 1) == v.bracket_pow(1));
    // A = [[0,1],[1,x]], v = (0,1) -> (1, x)
    auto M = poly_module(3);
    Mat e2 = testutil::colvec(R, {RingScalar::zero(R), RingScalar::one(R)});
    Mat img = apply(M, e2, 1);
    CHECK(img.at(0, 0) == RingScalar::one(R));
    CHECK(img.at(1, 0) == P(3, FpPoly::x(3)));
    // F_3 instance: v = (1,2) -> (2,0)
    auto M3 = f3_module();
    Mat w = testutil::colvec(f3, {RingScalar::from_int(f3, 1), RingScalar::from_int(f3, 2)});
    Mat w1 = apply(M3, w, 1);
    CHECK(w1.at(0, 0).as_prime() == 2);
    CHECK(w1.at(1, 0).as_prime() == 0);
}

TEST_CASE("semilinearity of apply") {
    Rng rng(99);
    auto M = poly_module(3);
    Ring R = M.ring();
    for (int trial = 0; trial < 100; ++trial) {
        Mat u = testutil::random_mat(rng, R, 2, 1, 2);
        Mat v = testutil::random_mat(rng, R, 2, 1, 2);
        auto c = testutil::random_scalar(rng, R, 2);
        int r = 1 + trial % 3;
        CHECK(apply(M, u + v, r) == apply(M, u, r) + apply(M, v, r));
        CHECK(apply(M, u.scaled(c), r) == apply(M, u, r).scaled(c.frobenius_power(M.e() * r)));
    }
}

TEST_CASE("coefficient sequence") {
    CHECK(coefficient_sequence(3, 1, -1).a_r.is_zero());
    CHECK(coefficient_sequence(3, 1, 0).a_r == FpPoly::constant(3, 1));
    CHECK(coefficient_sequence(3, 1, 1).a_r == FpPoly::x(3));
    // deg a_4 = 15 for q = 2
    CHECK(coefficient_sequence(2, 1, 4).a_r.degree() == Degree::of(15));
    // a_3 for p = q = 2 has degree 1 + 2 + 4 = 7
    CHECK(coefficient_sequence(2, 1, 3).a_r.degree() == Degree::of(7));
    // degree formula deg a_r = 1 + q + ... + q^{r-1} for r <= 8, p in {2,3}
    for (i64 p : {2, 3}) {
        for (int r = 1; r <= 8; ++r) {
            i64 expect = 0, qk = 1;
            for (int k = 0; k < r; ++k) {
                expect += qk;
                qk *= p;
            }
            CHECK(coefficient_sequence(p, 1, r).a_r.degree() == Degree::of(expect));
        }
    }
}

TEST_CASE("2x2 closed form matches power_matrix for r <= 6") {
    for (i64 p : {2, 3}) {
        auto M = poly_module(p);
        for (int r = 1; r <= 6; ++r) {
            Mat Ar = power_matrix(M, r).A_r;
            i64 q = p;  // e = 1
            FpPoly am2 = coefficient_sequence(p, 1, r - 2).a_r;
            FpPoly am1 = coefficient_sequence(p, 1, r - 1).a_r;
            FpPoly ar = coefficient_sequence(p, 1, r).a_r;
            CHECK(Ar.at(0, 0) == P(p, am2.subst_xk(q)));
            CHECK(Ar.at(0, 1) == P(p, am1.subst_xk(q)));
            CHECK(Ar.at(1, 0) == P(p, am1));
            CHECK(Ar.at(1, 1) == P(p, ar));
        }
    }
}

TEST_CASE("determinant multiplicativity along powers") {
    Rng rng(7);
    for (i64 p : {2, 3}) {
        auto M = poly_module(p);
        for (int r = 1; r <= 4; ++r) {
            RingScalar lhs = power_matrix(M, r).A_r.det();
            RingScalar rhs = RingScalar::one(M.ring());
            for (int i = 0; i < r; ++i) rhs = rhs * M.matrix().det().frobenius_power(M.e() * i);
            CHECK(lhs == rhs);
        }
        // paper matrix: det A_r = (-1)^r
        for (int r = 1; r <= 6; ++r) {
            RingScalar d = power_matrix(M, r).A_r.det();
            CHECK(d == RingScalar::from_int(M.ring(), r % 2 == 0 ? 1 : -1));
        }
    }
    // random field modules too
    for (int trial = 0; trial < 30; ++trial) {
        Mat A = testutil::random_mat(rng, f9, 2, 2);
        FrobModule M(f9, 2, 1, A);
        Mat A3 = power_matrix(M, 3).A_r;
        RingScalar rhs = A.det() * A.det().frobenius_power(1) * A.det().frobenius_power(2);
        CHECK(A3.det() == rhs);
    }
}

TEST_CASE("change_basis: identity, action property, and singular rejection") {
    Rng rng(21);
    auto M = poly_module(3);
    CHECK(change_basis(M, Mat::identity(M.ring(), 2), 2) == power_matrix(M, 2).A_r);
    // applying C then D equals applying C*D
    Ring R = f9;
    for (int trial = 0; trial < 25; ++trial) {
        Mat A = testutil::random_mat(rng, R, 2, 2);
        FrobModule N(R, 2, 1, A);
        Mat C = testutil::random_invertible(rng, R, 2);
        Mat D = testutil::random_invertible(rng, R, 2);
        int r = 1 + trial % 3;
        Mat step1 = change_basis(N, C, r);
        FrobModule N1(R, 2, N.e() * r, step1);
        Mat step2 = change_basis(N1, D, 1);
        Mat direct = change_basis(N, C * D, r);
        CHECK(step2 == direct);
    }
    // det C = x is not a unit over F_3[x]
    Mat C(M.ring(), 2, 2);
    C.at(0, 0) = P(3, FpPoly::x(3));
    C.at(1, 1) = RingScalar::one(M.ring());
    CHECK_THROWS_AS(change_basis(M, C, 1), FrobError);
}

TEST_CASE("extend_scalars") {
    auto M3 = f3_module();
    auto M9 = extend_scalars(M3, f9);
    CHECK(M9.matrix().at(1, 1) == RingScalar::one(f9));
    CHECK(is_unit(M9).unit);
    // same ring: identical module
    auto Ms = extend_scalars(M3, f3);
    CHECK(Ms.matrix() == M3.matrix());
    // no embedding of F_9 into F_3[x]
    CHECK_THROWS_AS(extend_scalars(M9, RingDescriptor::poly_ring(3)), FrobError);
}

TEST_CASE("frobenius_twist_presentation") {
    Ring R = RingDescriptor::poly_ring(3);
    Mat g = Mat::identity(R, 2);
    CHECK(frobenius_twist_presentation(g, 1) == g);
    Mat h(R, 1, 1, {P(3, FpPoly::x(3))});
    CHECK(frobenius_twist_presentation(h, 1).at(0, 0) == P(3, FpPoly::monomial(3, 1, 3)));
    Ring R2 = RingDescriptor::poly_ring(2);
    Mat k(R2, 1, 2,
          {RingScalar::of_poly(R2, FpPoly::x(2)), RingScalar::of_poly(R2, FpPoly(2, {1, 1}))});
    Mat kk = frobenius_twist_presentation(k, 1);
    CHECK(kk.at(0, 0) == RingScalar::of_poly(R2, FpPoly(2, {0, 0, 1})));
    CHECK(kk.at(0, 1) == RingScalar::of_poly(R2, FpPoly(2, {1, 0, 1})));
}

TEST_CASE("compose_twist") {
    auto M3 = f3_module();
    auto M1 = compose_twist(M3, 1);
    CHECK(M1.e() == 1);
    CHECK(M1.matrix() == M3.matrix());
    // F^4 = -id on the F_3 instance
    auto M4 = compose_twist(M3, 4);
    CHECK(M4.e() == 4);
    CHECK(M4.matrix() == Mat::identity(f3, 2).scaled(RingScalar::from_int(f3, -1)));
    // twist 2 over the polynomial ring carries A_2
    auto M = poly_module(3);
    CHECK(compose_twist(M, 2).matrix() == power_matrix(M, 2).A_r);
}

TEST_CASE("is_unit") {
    Ring R = RingDescriptor::poly_ring(3);
    FrobModule Id(R, 2, 1, Mat::identity(R, 2));
    CHECK(is_unit(Id).unit);
    auto M = poly_module(5);
    auto rep = is_unit(M);
    CHECK(rep.unit);
    CHECK(rep.det == RingScalar::from_int(M.ring(), -1));
    Mat bad(R, 2, 2);
    bad.at(0, 0) = P(3, FpPoly::x(3));
    bad.at(1, 1) = RingScalar::one(R);
    CHECK(!is_unit(FrobModule(R, 2, 1, bad)).unit);
}

TEST_CASE("power bounds") {
    auto M = poly_module(3);
    CHECK_THROWS_AS(power_matrix(M, 13), FrobError);
    Limits lim;
    lim.max_power = 2;
    CHECK_THROWS_AS(power_matrix(M, 3, lim), FrobError);
    CHECK_THROWS_AS(power_matrix(M, 0), FrobError);
}

#include "frobmod/frobmod.hpp"

#include "frobmod/errors.hpp"

namespace frob {

FrobModule::FrobModule(Ring ring, int n, i64 e, Mat A)
    : ring_(std::move(ring)), n_(n), e_(e), A_(std::move(A)) {
    require(n_ >= 1, Err::ValidationError, "rank must be positive");
    require(e_ >= 1, Err::ValidationError, "twist must be positive");
    require(A_.rows() == n_ && A_.cols() == n_, Err::DimensionMismatch,
            "structure matrix must be n x n");
    require(same_ring(A_.ring(), ring_), Err::DescriptorMismatch,
            "structure matrix ring mismatch");
}

static void check_power(const FrobModule& M, int r, const Limits& lim) {
    require(r >= 1, Err::ValidationError, "power index must be >= 1");
    require(r <= lim.max_power, Err::PowerRangeExceeded,
            "power index " + std::to_string(r) + " exceeds max_power " +
                std::to_string(lim.max_power));
    (void)M;
}

FrobMatrixPower power_matrix(const FrobModule& M, int r, const Limits& lim) {
    check_power(M, r, lim);
    Mat acc = M.matrix();
    for (int k = 1; k < r; ++k) acc = acc * M.matrix().bracket_pow(M.e() * k);
    return {r, std::move(acc)};
}

Mat apply(const FrobModule& M, const Mat& v, int r, const Limits& lim) {
    require(v.rows() == M.n() && v.cols() == 1, Err::DimensionMismatch,
            "apply expects a column vector of length n");
    require(same_ring(v.ring(), M.ring()), Err::DescriptorMismatch, "vector ring mismatch");
    return power_matrix(M, r, lim).A_r * v.bracket_pow(M.e() * r);
}

bool is_fixed_vector(const FrobModule& M, const Mat& v, int r, const Limits& lim) {
    return apply(M, v, r, lim) == v;
}

CoefficientSequence coefficient_sequence(i64 p, i64 e, int r) {
    require(r >= -1, Err::ValidationError, "coefficient sequence index must be >= -1");
    require(modp::is_prime(p), Err::ValidationError, "p must be prime");
    require(e >= 1, Err::ValidationError, "twist must be positive");
    FpPoly prev = FpPoly::zero(p);      // a_{-1}
    FpPoly cur = FpPoly::constant(p, 1);  // a_0
    if (r == -1) return {r, prev};
    for (int k = 1; k <= r; ++k) {
        i64 qk = 1;  // q^{k-1}
        for (i64 i = 0; i < e * (k - 1); ++i) {
            require(qk <= ((i64)1 << 62) / p, Err::PowerRangeExceeded, "q^{r-1} overflows");
            qk *= p;
        }
        FpPoly next = prev + cur * FpPoly::monomial(p, 1, qk);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {r, cur};
}

Mat change_basis(const FrobModule& M, const Mat& C, int r, const Limits& lim) {
    require(C.rows() == M.n() && C.cols() == M.n(), Err::DimensionMismatch,
            "basis-change matrix must be n x n");
    require(same_ring(C.ring(), M.ring()), Err::DescriptorMismatch, "basis ring mismatch");
    require(C.det().is_unit(), Err::SingularBasisChange,
            "basis-change matrix determinant is not a unit");
    Mat Ar = power_matrix(M, r, lim).A_r;
    return C.inverse() * Ar * C.bracket_pow(M.e() * r);
}

FrobModule extend_scalars(const FrobModule& M, const Ring& target) {
    require(has_canonical_embedding(M.ring(), target), Err::NoCanonicalEmbedding,
            "no canonical embedding " + M.ring()->str() + " -> " + target->str());
    Mat A = M.matrix().map_ring(target, [&](const RingScalar& x) { return embed(x, target); });
    return FrobModule(target, M.n(), M.e(), std::move(A));
}

Mat frobenius_twist_presentation(const Mat& G, i64 e) {
    require(e >= 1, Err::ValidationError, "twist must be positive");
    return G.bracket_pow(e);
}

FrobModule compose_twist(const FrobModule& M, int r, const Limits& lim) {
    auto Ar = power_matrix(M, r, lim);
    return FrobModule(M.ring(), M.n(), M.e() * r, std::move(Ar.A_r));
}

UnitReport is_unit(const FrobModule& M) {
    RingScalar d = M.matrix().det();
    return {d.is_unit(), std::move(d)};
}

}  // namespace frob

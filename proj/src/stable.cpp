#include "frobmod/stable.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "frobmod/errors.hpp"

namespace frob {

namespace {

void check_finite_field(const FrobModule& M) {
    require(M.ring()->is_finite_field(), Err::UnsupportedRing,
            "operation needs a finite-field coefficient ring, got " + M.ring()->str());
}

// F_p-expansion of one field element in the power basis of the modulus
void expand_elem(const RingScalar& x, int m, std::vector<i64>& out) {
    if (x.kind() == RingKind::PrimeField) {
        out.push_back(x.as_prime());
        return;
    }
    const auto& c = x.as_ext().coeffs();
    for (int j = 0; j < m; ++j) out.push_back(j < (int)c.size() ? c[(size_t)j] : 0);
}

// coordinate-major layout: component i occupies slots i*m .. i*m + m - 1
Mat expand_vector(const Mat& v, const Ring& fp, int m) {
    std::vector<i64> flat;
    flat.reserve((size_t)v.rows() * m);
    for (int i = 0; i < v.rows(); ++i) expand_elem(v.at(i, 0), m, flat);
    Mat col(fp, (int)flat.size(), 1);
    for (size_t i = 0; i < flat.size(); ++i) col.at((int)i, 0) = RingScalar::of_prime(fp, flat[i]);
    return col;
}

Mat contract_vector(const Mat& col, const Ring& field, int n, int m) {
    Mat v(field, n, 1);
    for (int i = 0; i < n; ++i) {
        if (field->kind() == RingKind::PrimeField) {
            v.at(i, 0) = RingScalar::of_prime(field, col.at(i, 0).as_prime());
        } else {
            std::vector<i64> c((size_t)m);
            for (int j = 0; j < m; ++j) c[(size_t)j] = col.at(i * m + j, 0).as_prime();
            v.at(i, 0) = RingScalar::of_ext(field, FpPoly(field->p(), std::move(c)));
        }
    }
    return v;
}

// the F_p-basis vector with 1 in slot (i, j)
Mat basis_elem(const Ring& field, int n, int m, int i, int j) {
    Mat v(field, n, 1);
    if (field->kind() == RingKind::PrimeField)
        v.at(i, 0) = RingScalar::one(field);
    else
        v.at(i, 0) = RingScalar::of_ext(field, FpPoly::monomial(field->p(), 1, j));
    return v;
}

// matrix over F_p of the additive map v -> A_r v^[q^r] in the expanded basis
Mat linearized_action(const FrobModule& M, const Mat& Ar, i64 er, const Ring& fp) {
    int n = M.n(), m = M.ring()->m();
    int N = n * m;
    Mat L(fp, N, N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Mat b = basis_elem(M.ring(), n, m, i, j);
            Mat img = Ar * b.bracket_pow(er);
            Mat col = expand_vector(img, fp, m);
            for (int k = 0; k < N; ++k) L.at(k, i * m + j) = col.at(k, 0);
        }
    return L;
}

}  // namespace

Subspace subspace_from_columns(const Ring& field, int n, const Mat& cols) {
    require(field->is_finite_field(), Err::UnsupportedRing, "subspaces live over finite fields");
    require(cols.rows() == n, Err::DimensionMismatch, "generator height differs from ambient rank");
    Echelon e = column_echelon(cols);
    return {field, n, e.basis, e.pivot_rows};
}

Subspace zero_subspace(const Ring& field, int n) {
    return subspace_from_columns(field, n, Mat(field, n, 0));
}

Subspace full_subspace(const Ring& field, int n) {
    return subspace_from_columns(field, n, Mat::identity(field, n));
}

bool subspace_contains(const Subspace& s, const Mat& v) {
    return echelon_contains({s.basis, s.pivot_rows}, v);
}

bool subspace_leq(const Subspace& a, const Subspace& b) {
    if (a.dim() > b.dim()) return false;
    for (int j = 0; j < a.dim(); ++j)
        if (!subspace_contains(b, a.basis.col(j))) return false;
    return true;
}

bool subspace_eq(const Subspace& a, const Subspace& b) {
    return a.dim() == b.dim() && a.basis == b.basis;
}

std::vector<i64> subspace_key(const Subspace& s) {
    std::vector<i64> key;
    key.push_back(s.dim());
    for (int i = 0; i < s.basis.rows(); ++i)
        for (int j = 0; j < s.basis.cols(); ++j) key.push_back(s.basis.at(i, j).index());
    return key;
}

i64 FixedSpace::count() const {
    i64 c = 1;
    for (int i = 0; i < fp_dim; ++i) c *= field->p();
    return c;
}

FixedSpace fixed_points(const FrobModule& M, int r, const Limits& lim) {
    check_finite_field(M);
    int n = M.n(), m = M.ring()->m();
    i64 p = M.p();
    Ring fp = m == 1 ? M.ring() : RingDescriptor::prime_field(p);
    Mat Ar = power_matrix(M, r, lim).A_r;
    i64 er = M.e() * r;
    Mat L = linearized_action(M, Ar, er, fp);
    Mat ker = kernel_basis(L - Mat::identity(fp, n * m));

    FixedSpace out;
    out.field = M.ring();
    i64 g = std::gcd(er, (i64)m);
    out.fixed_subfield = g == 1 ? RingDescriptor::prime_field(p) : RingDescriptor::ext_field(p, (int)g);
    out.fp_dim = ker.cols();
    for (int j = 0; j < ker.cols(); ++j)
        out.fp_basis.push_back(contract_vector(ker.col(j), M.ring(), n, m));

    // group the F_p-basis into a basis over the fixed subfield F_{p^g}:
    // greedily keep vectors outside the F_{p^g}-span of those already kept
    if (g == 1) {
        out.subfield_basis = out.fp_basis;
    } else {
        // F_p-basis of F_{p^g} inside F_{p^m}: kernel of (y -> y^{p^g}) - id
        Mat S(fp, m, m);
        for (int j = 0; j < m; ++j) {
            RingScalar y = RingScalar::of_ext(M.ring(), FpPoly::monomial(p, 1, j));
            RingScalar img = y.frobenius_power(g);
            std::vector<i64> flat;
            expand_elem(img, m, flat);
            for (int i = 0; i < m; ++i) S.at(i, j) = RingScalar::of_prime(fp, flat[(size_t)i]);
        }
        Mat subfield = kernel_basis(S - Mat::identity(fp, m));  // m x g
        std::vector<RingScalar> betas;
        for (int j = 0; j < subfield.cols(); ++j) {
            std::vector<i64> c((size_t)m);
            for (int i = 0; i < m; ++i) c[(size_t)i] = subfield.at(i, j).as_prime();
            betas.push_back(RingScalar::of_ext(M.ring(), FpPoly(p, std::move(c))));
        }
        Mat span(fp, n * m, 0);
        for (const Mat& v : out.fp_basis) {
            Echelon e = column_echelon(span);
            if (echelon_contains(e, expand_vector(v, fp, m))) continue;
            out.subfield_basis.push_back(v);
            for (const RingScalar& beta : betas)
                span = Mat::hstack(span, expand_vector(v.scaled(beta), fp, m));
        }
    }
    return out;
}

Subspace frob_image_subspace(const FrobModule& M, const Subspace& N, int r, const Limits& lim) {
    check_finite_field(M);
    require(same_ring(N.field, M.ring()) && N.n == M.n(), Err::DimensionMismatch,
            "subspace ambient mismatch");
    Mat Ar = power_matrix(M, r, lim).A_r;
    return subspace_from_columns(M.ring(), M.n(), Ar * N.basis.bracket_pow(M.e() * r));
}

Subspace descent_preimage(const FrobModule& M, const Subspace& N, int r, const Limits& lim) {
    check_finite_field(M);
    require(same_ring(N.field, M.ring()) && N.n == M.n(), Err::DimensionMismatch,
            "subspace ambient mismatch");
    require(is_unit(M).unit, Err::NotUnit, "descent preimage needs a unit module");
    int n = M.n(), m = M.ring()->m();
    i64 p = M.p();
    Ring fp = m == 1 ? M.ring() : RingDescriptor::prime_field(p);
    Mat Ar = power_matrix(M, r, lim).A_r;
    Mat L = linearized_action(M, Ar, M.e() * r, fp);

    // F_p-expansion of N: columns u^j * b_k
    Mat Np(fp, n * m, 0);
    for (int k = 0; k < N.dim(); ++k)
        for (int j = 0; j < m; ++j) {
            RingScalar uj = m == 1 ? RingScalar::one(M.ring())
                                   : RingScalar::of_ext(M.ring(), FpPoly::monomial(p, 1, j));
            Np = Mat::hstack(Np, expand_vector(N.basis.col(k).scaled(uj), fp, m));
        }
    // rows annihilating col(Np): kernel of Np^T
    Mat C = kernel_basis(Np.transpose()).transpose();
    Mat ker = C.rows() == 0 ? Mat::identity(fp, n * m) : kernel_basis(C * L);

    Mat gens(M.ring(), n, 0);
    for (int j = 0; j < ker.cols(); ++j)
        gens = Mat::hstack(gens, contract_vector(ker.col(j), M.ring(), n, m));
    return subspace_from_columns(M.ring(), n, gens);
}

i64 subspace_count(i64 q, int n, i64 cap) {
    // sum over d of the Gaussian binomial [n d]_q, saturating at cap + 1
    i64 total = 0;
    for (int d = 0; d <= n; ++d) {
        // [n d]_q = prod_{i=0}^{d-1} (q^{n-i} - 1) / (q^{i+1} - 1)
        long double approx = 1.0L;
        for (int i = 0; i < d; ++i) {
            long double num = std::pow((long double)q, n - i) - 1;
            long double den = std::pow((long double)q, i + 1) - 1;
            approx *= num / den;
        }
        if (approx > (long double)cap + 1) return cap + 1;
        // exact integer evaluation is safe below the cap
        i64 binom = 1;
        for (int i = 0; i < d; ++i) {
            i64 num = 1, den = 1;
            for (int k = 0; k < n - i; ++k) num *= q;
            for (int k = 0; k < i + 1; ++k) den *= q;
            binom = binom * (num - 1) / (den - 1);
        }
        total += binom;
        if (total > cap) return cap + 1;
    }
    return total;
}

std::vector<Subspace> enumerate_stable_subspaces(const FrobModule& M, int r, const Limits& lim) {
    check_finite_field(M);
    int n = M.n();
    i64 q = M.ring()->field_size();
    require(subspace_count(q, n, lim.enumeration_cap) <= lim.enumeration_cap,
            Err::EnumerationCapExceeded,
            "subspace count exceeds enumeration_cap " + std::to_string(lim.enumeration_cap));
    Mat Ar = power_matrix(M, r, lim).A_r;
    i64 er = M.e() * r;

    std::vector<Subspace> stable;
    auto is_stable = [&](const Subspace& s) {
        for (int j = 0; j < s.dim(); ++j) {
            Mat img = Ar * s.basis.col(j).bracket_pow(er);
            if (!subspace_contains(s, img)) return false;
        }
        return true;
    };

    // enumerate canonical reduced column echelon bases: pivot rows ascending,
    // free entries (below a pivot, not in a pivot row) run over the field
    for (int d = 0; d <= n; ++d) {
        std::vector<int> pivots(d);
        std::iota(pivots.begin(), pivots.end(), 0);
        auto advance_pivots = [&]() {
            int i = d - 1;
            while (i >= 0 && pivots[(size_t)i] == n - d + i) --i;
            if (i < 0) return false;
            ++pivots[(size_t)i];
            for (int k = i + 1; k < d; ++k) pivots[(size_t)k] = pivots[(size_t)k - 1] + 1;
            return true;
        };
        if (d == 0) {
            stable.push_back(zero_subspace(M.ring(), n));
            if (!is_stable(stable.back())) stable.pop_back();
            continue;
        }
        do {
            std::vector<std::pair<int, int>> free_slots;
            std::vector<bool> is_pivot_row((size_t)n, false);
            for (int rdx : pivots) is_pivot_row[(size_t)rdx] = true;
            for (int j = 0; j < d; ++j)
                for (int i = pivots[(size_t)j] + 1; i < n; ++i)
                    if (!is_pivot_row[(size_t)i]) free_slots.push_back({i, j});
            i64 combos = 1;
            for (size_t k = 0; k < free_slots.size(); ++k) combos *= q;
            for (i64 code = 0; code < combos; ++code) {
                Mat basis(M.ring(), n, d);
                for (int j = 0; j < d; ++j) basis.at(pivots[(size_t)j], j) = RingScalar::one(M.ring());
                i64 c = code;
                for (auto [i, j] : free_slots) {
                    basis.at(i, j) = RingScalar::from_index(M.ring(), c % q);
                    c /= q;
                }
                Subspace s{M.ring(), n, basis, pivots};
                if (is_stable(s)) stable.push_back(std::move(s));
            }
        } while (advance_pivots());
    }
    std::sort(stable.begin(), stable.end(),
              [](const Subspace& a, const Subspace& b) { return subspace_key(a) < subspace_key(b); });
    return stable;
}

bool is_simple(const FrobModule& M, int r, const Limits& lim) {
    auto all = enumerate_stable_subspaces(M, r, lim);
    return M.n() >= 1 && all.size() == 2;
}

namespace {

// reduce v modulo a subspace: afterwards v has zeros at the subspace's pivot rows
Mat reduce_mod(const Subspace& W, Mat v) {
    for (int j = 0; j < W.dim(); ++j) {
        RingScalar c = v.at(W.pivot_rows[(size_t)j], 0);
        if (c.is_zero()) continue;
        for (int i = 0; i < v.rows(); ++i) v.at(i, 0) = v.at(i, 0) - c * W.basis.at(i, j);
    }
    return v;
}

// coordinates of v in the quotient by W: entries at non-pivot rows after reduction
Mat quotient_coords(const Subspace& W, const Mat& v) {
    Mat red = reduce_mod(W, v);
    Mat out(W.field, W.n - W.dim(), 1);
    int k = 0;
    std::vector<bool> is_pivot((size_t)W.n, false);
    for (int r : W.pivot_rows) is_pivot[(size_t)r] = true;
    for (int i = 0; i < W.n; ++i)
        if (!is_pivot[(size_t)i]) out.at(k++, 0) = red.at(i, 0);
    return out;
}

// coefficients of v in a reduced column echelon basis; v must lie in the span
std::vector<RingScalar> coords_in_echelon(const Echelon& e, Mat v) {
    std::vector<RingScalar> coeffs((size_t)e.rank(), RingScalar::zero(v.ring()));
    for (int j = 0; j < e.rank(); ++j) {
        RingScalar c = v.at(e.pivot_rows[(size_t)j], 0);
        coeffs[(size_t)j] = c;
        if (c.is_zero()) continue;
        for (int i = 0; i < v.rows(); ++i) v.at(i, 0) = v.at(i, 0) - c * e.basis.at(i, j);
    }
    require(v.is_zero(), Err::ValidationError, "vector outside the expected span");
    return coeffs;
}

}  // namespace

CompositionSeries composition_series(const FrobModule& M, int r, const Limits& lim) {
    auto all = enumerate_stable_subspaces(M, r, lim);  // sorted: dimension then key
    CompositionSeries out;
    out.chain.push_back(zero_subspace(M.ring(), M.n()));
    Mat Ar = power_matrix(M, r, lim).A_r;
    i64 er = M.e() * r;

    while (out.chain.back().dim() < M.n()) {
        const Subspace& cur = out.chain.back();
        const Subspace* next = nullptr;
        for (const auto& s : all) {
            if (s.dim() <= cur.dim()) continue;
            if (subspace_leq(cur, s)) {
                next = &s;
                break;  // minimal dimension, then least key, by sort order
            }
        }
        require(next != nullptr, Err::ValidationError, "no stable subspace above the chain");

        // quotient basis: echelonize the images of next's basis in M/cur,
        // tracking lifts in `next`
        const Subspace& W = cur;
        int qdim_ambient = M.n() - W.dim();
        std::vector<Mat> lifts;     // vectors in `next`
        Mat qbasis(M.ring(), qdim_ambient, 0);
        {
            Mat residues(M.ring(), qdim_ambient, 0);
            std::vector<Mat> cand_lifts;
            for (int j = 0; j < next->dim(); ++j) {
                cand_lifts.push_back(next->basis.col(j));
                residues = Mat::hstack(residues, quotient_coords(W, next->basis.col(j)));
            }
            // column echelon with lift tracking (pivot search in residue rows)
            Mat res = residues;
            std::vector<Mat> lf = cand_lifts;
            int fixed = 0;
            std::vector<int> qpivots;
            for (int row = 0; row < res.rows() && fixed < res.cols(); ++row) {
                int pc = -1;
                for (int j = fixed; j < res.cols(); ++j)
                    if (!res.at(row, j).is_zero()) {
                        pc = j;
                        break;
                    }
                if (pc < 0) continue;
                if (pc != fixed) {
                    for (int i = 0; i < res.rows(); ++i) std::swap(res.at(i, pc), res.at(i, fixed));
                    std::swap(lf[(size_t)pc], lf[(size_t)fixed]);
                }
                RingScalar pinv = res.at(row, fixed).inv();
                for (int i = 0; i < res.rows(); ++i) res.at(i, fixed) = res.at(i, fixed) * pinv;
                lf[(size_t)fixed] = lf[(size_t)fixed].scaled(pinv);
                for (int j = 0; j < res.cols(); ++j) {
                    if (j == fixed || res.at(row, j).is_zero()) continue;
                    RingScalar f = res.at(row, j);
                    for (int i = 0; i < res.rows(); ++i)
                        res.at(i, j) = res.at(i, j) - f * res.at(i, fixed);
                    lf[(size_t)j] = lf[(size_t)j] - lf[(size_t)fixed].scaled(f);
                }
                qpivots.push_back(row);
                ++fixed;
            }
            std::vector<int> keep(fixed);
            std::iota(keep.begin(), keep.end(), 0);
            qbasis = res.cols_slice(keep);
            lifts.assign(lf.begin(), lf.begin() + fixed);

            // induced structure matrix: column j holds the coordinates of
            // the image of the j-th quotient basis vector
            Echelon qe{qbasis, qpivots};
            Mat B(M.ring(), fixed, fixed);
            for (int j = 0; j < fixed; ++j) {
                Mat img = Ar * lifts[(size_t)j].bracket_pow(er);
                auto coords = coords_in_echelon(qe, quotient_coords(W, img));
                for (int i = 0; i < fixed; ++i) B.at(i, j) = coords[(size_t)i];
            }
            out.quotient_data.push_back(std::move(B));
        }
        out.chain.push_back(*next);
    }
    out.length = (int)out.chain.size() - 1;
    return out;
}

Ring extension_of(const Ring& base, int s) {
    require(base->is_finite_field(), Err::UnsupportedRing, "extension_of needs a finite field");
    if (s == 1) return base;
    return RingDescriptor::ext_field(base->p(), base->m() * s);
}

namespace {

// pick n fixed vectors that are independent over the ambient field
std::optional<std::vector<Mat>> spanning_subset(const FixedSpace& fs, const Ring& field, int n) {
    std::vector<Mat> chosen;
    Mat acc(field, n, 0);
    for (const Mat& v : fs.fp_basis) {
        Mat trial = Mat::hstack(acc, v);
        if (rank_of(trial) > rank_of(acc)) {
            acc = trial;
            chosen.push_back(v);
            if ((int)chosen.size() == n) return chosen;
        }
    }
    return std::nullopt;
}

}  // namespace

GeometricLength geometric_length(const FrobModule& M, const Limits& lim) {
    check_finite_field(M);
    require(is_unit(M).unit, Err::NotUnit, "geometric length needs a unit module");
    for (int s = 1; s <= lim.s_max; ++s) {
        Ring K = extension_of(M.ring(), s);
        FrobModule Ms = extend_scalars(M, K);
        FixedSpace fs = fixed_points(Ms, 1, lim);
        auto basis = spanning_subset(fs, K, M.n());
        if (basis) {
            GeometricLength out;
            out.length = M.n();
            out.witness_s = s;
            out.witness_field = K;
            out.fixed_basis = std::move(basis);
            return out;
        }
        // fall back to the unit length when the subspace lattice is enumerable
        if (subspace_count(K->field_size(), M.n(), lim.enumeration_cap) <= lim.enumeration_cap) {
            auto series = composition_series(Ms, 1, lim);
            if (series.length == M.n()) {
                GeometricLength out;
                out.length = M.n();
                out.witness_s = s;
                out.witness_field = K;
                return out;
            }
        }
    }
    raise(Err::WitnessBoundExceeded,
          "no spanning fixed basis and no full-length flag up to s_max = " +
              std::to_string(lim.s_max));
}

DieudonneBasis dieudonne_basis(const FrobModule& M, int r, const Limits& lim) {
    check_finite_field(M);
    require(!power_matrix(M, r, lim).A_r.det().is_zero(), Err::NotUnit,
            "the r-th power matrix must be invertible");
    for (int s = 1; s <= lim.s_max; ++s) {
        Ring K = extension_of(M.ring(), s);
        FrobModule Ms = extend_scalars(M, K);
        FixedSpace fs = fixed_points(Ms, r, lim);
        auto basis = spanning_subset(fs, K, M.n());
        if (basis) return {s, K, std::move(*basis)};
    }
    raise(Err::WitnessBoundExceeded,
          "no spanning fixed basis up to s_max = " + std::to_string(lim.s_max));
}

}  // namespace frob

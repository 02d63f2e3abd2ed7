#include "frobmod/submodule.hpp"

#include <algorithm>

#include "frobmod/errors.hpp"

namespace frob {

namespace {

using PolyCol = std::vector<FpPoly>;

std::vector<PolyCol> cols_of(const Mat& m) {
    std::vector<PolyCol> out((size_t)m.cols());
    for (int j = 0; j < m.cols(); ++j) {
        out[(size_t)j].reserve((size_t)m.rows());
        for (int i = 0; i < m.rows(); ++i) out[(size_t)j].push_back(m.at(i, j).as_poly());
    }
    return out;
}

Mat mat_of(const Ring& ring, int n, const std::vector<PolyCol>& cols) {
    Mat m(ring, n, (int)cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < n; ++i) m.at(i, (int)j) = RingScalar::of_poly(ring, cols[j][(size_t)i]);
    return m;
}

bool col_is_zero(const PolyCol& c) {
    for (const auto& f : c)
        if (!f.is_zero()) return false;
    return true;
}

void col_submul(PolyCol& a, const FpPoly& q, const PolyCol& b) {  // a -= q*b
    for (size_t i = 0; i < a.size(); ++i) a[i] = a[i] - q * b[i];
}

void col_scale(PolyCol& a, i64 c, i64 p) {
    for (auto& f : a) f = f.scaled(modp::norm(c, p));
}

struct HermiteResult {
    std::vector<PolyCol> cols;      // canonical columns, pivot rows ascending
    std::vector<int> pivot_rows;
    std::vector<PolyCol> kernel;    // transform columns that reduced to zero (when tracked)
};

// column Hermite reduction over F_p[x]; when `track`, the same column
// operations run on an identity block, so kernel columns come out exact
HermiteResult hermite_columns(i64 p, int n, std::vector<PolyCol> work, bool track) {
    std::vector<PolyCol> U;
    if (track) {
        U.assign(work.size(), PolyCol(work.size(), FpPoly::zero(p)));
        for (size_t j = 0; j < work.size(); ++j) U[j][j] = FpPoly::constant(p, 1);
    }
    std::vector<size_t> remaining(work.size());
    for (size_t j = 0; j < work.size(); ++j) remaining[j] = j;

    std::vector<size_t> pivot_cols;
    std::vector<int> pivot_rows;
    for (int row = 0; row < n && !remaining.empty(); ++row) {
        // Euclid among the remaining columns until one nonzero entry is left
        for (;;) {
            size_t best = SIZE_MAX;
            for (size_t k : remaining) {
                if (work[k][(size_t)row].is_zero()) continue;
                if (best == SIZE_MAX ||
                    work[k][(size_t)row].degree() < work[best][(size_t)row].degree())
                    best = k;
            }
            if (best == SIZE_MAX) break;  // nothing to pivot in this row
            bool reduced_any = false;
            for (size_t k : remaining) {
                if (k == best || work[k][(size_t)row].is_zero()) continue;
                FpPoly q = work[k][(size_t)row] / work[best][(size_t)row];
                col_submul(work[k], q, work[best]);
                if (track) col_submul(U[k], q, U[best]);
                reduced_any = true;
            }
            if (!reduced_any) {
                // `best` is the unique nonzero in this row: it is the pivot
                i64 linv = modp::inv(work[best][(size_t)row].lead(), p);
                col_scale(work[best], linv, p);
                if (track) col_scale(U[best], linv, p);
                pivot_cols.push_back(best);
                pivot_rows.push_back(row);
                remaining.erase(std::find(remaining.begin(), remaining.end(), best));
                break;
            }
        }
    }

    HermiteResult out;
    for (size_t j = 0; j < pivot_cols.size(); ++j) out.cols.push_back(work[pivot_cols[j]]);
    out.pivot_rows = pivot_rows;
    // Hermite reduction: entries of earlier columns in a later pivot row are
    // cut below the pivot degree
    for (size_t j = 0; j < out.cols.size(); ++j) {
        int rj = out.pivot_rows[j];
        const FpPoly pivot = out.cols[j][(size_t)rj];
        for (size_t k = 0; k < j; ++k) {
            FpPoly q = out.cols[k][(size_t)rj] / pivot;
            if (!q.is_zero()) col_submul(out.cols[k], q, out.cols[j]);
        }
    }
    if (track)
        for (size_t k : remaining) {
            // remaining columns reduced to zero in every row
            out.kernel.push_back(U[k]);
        }
    return out;
}

void check_poly_ambient(const FrobModule& M) {
    require(M.ring()->kind() == RingKind::PolyRing, Err::UnsupportedRing,
            "submodule arithmetic is defined over F_p[x]");
}

void check_same_ambient(const Submodule& a, const Submodule& b) {
    require(same_ring(a.ambient().ring(), b.ambient().ring()) &&
                a.ambient().n() == b.ambient().n() && a.ambient().e() == b.ambient().e() &&
                a.ambient().matrix() == b.ambient().matrix(),
            Err::DimensionMismatch, "submodules live in different ambient modules");
}

void degree_guard(const Mat& canon, const Limits& lim) {
    for (int i = 0; i < canon.rows(); ++i)
        for (int j = 0; j < canon.cols(); ++j) {
            Degree d = canon.at(i, j).as_poly().degree();
            require(!d.finite() || d.value() <= lim.degree_guard, Err::DegreeGuardExceeded,
                    "canonical entry degree exceeds the guard of " +
                        std::to_string(lim.degree_guard));
        }
}

}  // namespace

Submodule::Submodule(const FrobModule& ambient, const Mat& generators, const Limits& lim)
    : ambient_(ambient), gens_(generators), canon_(ambient.ring(), ambient.n(), 0) {
    check_poly_ambient(ambient_);
    require(generators.rows() == ambient.n(), Err::DimensionMismatch,
            "generator height differs from the ambient rank");
    require(same_ring(generators.ring(), ambient.ring()), Err::DescriptorMismatch,
            "generator ring mismatch");
    auto h = hermite_columns(ambient.p(), ambient.n(), cols_of(generators), false);
    canon_ = mat_of(ambient.ring(), ambient.n(), h.cols);
    pivots_ = h.pivot_rows;
    degree_guard(canon_, lim);
}

Submodule canonical_form(const Submodule& N, const Limits& lim) {
    return Submodule(N.ambient(), N.canonical(), lim);
}

bool membership(const Mat& v, const Submodule& N) {
    require(v.rows() == N.ambient().n() && v.cols() == 1, Err::DimensionMismatch,
            "membership expects a column vector of ambient height");
    require(same_ring(v.ring(), N.ambient().ring()), Err::DescriptorMismatch,
            "vector ring mismatch");
    PolyCol w;
    for (int i = 0; i < v.rows(); ++i) w.push_back(v.at(i, 0).as_poly());
    auto cols = cols_of(N.canonical());
    for (size_t j = 0; j < cols.size(); ++j) {
        int rj = N.pivot_rows()[j];
        auto qr = w[(size_t)rj].divmod(cols[j][(size_t)rj]);
        if (!qr.rem.is_zero()) return false;
        if (!qr.quot.is_zero()) col_submul(w, qr.quot, cols[j]);
    }
    return col_is_zero(w);
}

Submodule sum(const Submodule& N1, const Submodule& N2, const Limits& lim) {
    check_same_ambient(N1, N2);
    return Submodule(N1.ambient(), Mat::hstack(N1.canonical(), N2.canonical()), lim);
}

Mat poly_kernel(const Mat& m) {
    require(m.ring()->kind() == RingKind::PolyRing, Err::UnsupportedRing,
            "poly_kernel is defined over F_p[x]");
    auto h = hermite_columns(m.ring()->p(), m.rows(), cols_of(m), true);
    Mat k(m.ring(), m.cols(), (int)h.kernel.size());
    for (size_t j = 0; j < h.kernel.size(); ++j)
        for (int i = 0; i < m.cols(); ++i)
            k.at(i, (int)j) = RingScalar::of_poly(m.ring(), h.kernel[j][(size_t)i]);
    return k;
}

Submodule intersect(const Submodule& N1, const Submodule& N2, const Limits& lim) {
    check_same_ambient(N1, N2);
    const Ring& R = N1.ambient().ring();
    int n = N1.ambient().n();
    if (N1.is_zero_module() || N2.is_zero_module())
        return Submodule(N1.ambient(), Mat(R, n, 0), lim);
    // syzygies of [G1 | -G2]: G1 a = G2 b; project onto the G1 part
    Mat block = Mat::hstack(N1.canonical(), -N2.canonical());
    Mat ker = poly_kernel(block);
    Mat gens(R, n, 0);
    if (ker.cols() > 0) {
        Mat head(R, N1.rank(), ker.cols());
        for (int i = 0; i < N1.rank(); ++i)
            for (int j = 0; j < ker.cols(); ++j) head.at(i, j) = ker.at(i, j);
        gens = N1.canonical() * head;
    }
    return Submodule(N1.ambient(), gens, lim);
}

bool submodule_eq(const Submodule& a, const Submodule& b) {
    check_same_ambient(a, b);
    return a.canonical() == b.canonical();
}

bool submodule_leq(const Submodule& a, const Submodule& b) {
    check_same_ambient(a, b);
    for (int j = 0; j < a.rank(); ++j)
        if (!membership(a.canonical().col(j), b)) return false;
    return true;
}

Submodule frob_image(const FrobModule& M, const Submodule& N, int r, const Limits& lim) {
    check_poly_ambient(M);
    require(N.ambient().n() == M.n() && same_ring(N.ambient().ring(), M.ring()),
            Err::DimensionMismatch, "submodule ambient mismatch");
    Mat Ar = power_matrix(M, r, lim).A_r;
    return Submodule(M, Ar * N.canonical().bracket_pow(M.e() * r), lim);
}

bool is_root(const FrobModule& M, const Submodule& N, const Limits& lim) {
    Submodule img = frob_image(M, N, 1, lim);
    for (int j = 0; j < N.rank(); ++j)
        if (!membership(N.canonical().col(j), img)) return false;
    return true;
}

RootReport root_from_generators(const FrobModule& M, const Mat& gens, int m_max,
                                const Limits& lim) {
    check_poly_ambient(M);
    require(is_unit(M).unit, Err::NotUnit, "root construction needs a unit module");
    Submodule base(M, gens, lim);
    if (base.is_zero_module()) {
        RootReport rep{base, 0, true, true};
        return rep;
    }
    // running image F^{ke}(gens) and partial sums of images for k >= 1
    Submodule image = base;
    Submodule tail_sum(M, Mat(M.ring(), M.n(), 0), lim);
    int m_used = -1;
    for (int k = 1; k <= m_max; ++k) {
        image = frob_image(M, image, 1, lim);
        tail_sum = sum(tail_sum, image, lim);
        if (submodule_leq(base, tail_sum)) {
            m_used = k;
            break;
        }
    }
    require(m_used > 0, Err::BoundExceeded,
            "generators not absorbed by their Frobenius images within m_max = " +
                std::to_string(m_max));
    // root = sum_{k=0}^{m-1} F^{ke}(gens)
    Submodule root = base;
    Submodule img = base;
    for (int k = 1; k < m_used; ++k) {
        img = frob_image(M, img, 1, lim);
        root = sum(root, img, lim);
    }
    RootReport rep{root, m_used, is_root(M, root, lim), false};
    // certify the ascending chain for three steps
    Submodule a = root;
    bool chain = true;
    for (int step = 0; step < 3; ++step) {
        Submodule b = frob_image(M, a, 1, lim);
        chain = chain && submodule_leq(a, b);
        a = b;
    }
    rep.chain_certified = chain;
    return rep;
}

Submodule induced_root(const FrobModule& M, const Submodule& rootM, const Mat& N_gens,
                       int m_max, const Limits& lim) {
    check_poly_ambient(M);
    require(is_root(M, rootM, lim), Err::ValidationError,
            "induced_root needs a verified root as input");
    Submodule S(M, N_gens, lim);
    bool saturated = false;
    for (int k = 0; k < m_max; ++k) {
        Submodule next = sum(S, frob_image(M, S, 1, lim), lim);
        if (submodule_eq(next, S)) {
            saturated = true;
            break;
        }
        S = next;
    }
    require(saturated, Err::BoundExceeded,
            "Frobenius saturation did not stabilize within m_max = " + std::to_string(m_max));
    Submodule result = intersect(rootM, S, lim);
    require(is_root(M, result, lim), Err::RootCheckFailed,
            "intersection with the root is not a root");
    return result;
}

}  // namespace frob

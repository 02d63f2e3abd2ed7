#include "frobmod/matrix.hpp"

#include <algorithm>

#include "frobmod/errors.hpp"

namespace frob {

Mat::Mat(const Ring& ring, int rows, int cols)
    : ring_(ring), rows_(rows), cols_(cols), a_((size_t)rows * cols, RingScalar::zero(ring)) {
    require(rows >= 0 && cols >= 0, Err::DimensionMismatch, "negative matrix dimension");
}

Mat::Mat(const Ring& ring, int rows, int cols, std::vector<RingScalar> entries)
    : ring_(ring), rows_(rows), cols_(cols), a_(std::move(entries)) {
    require((size_t)rows * cols == a_.size(), Err::DimensionMismatch, "entry count mismatch");
    for (const auto& x : a_)
        require(same_ring(x.ring(), ring_), Err::DescriptorMismatch, "matrix entry ring mismatch");
}

Mat Mat::identity(const Ring& ring, int n) {
    Mat m(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = RingScalar::one(ring);
    return m;
}

static void check_dims(const Mat& a, const Mat& b, bool mul) {
    require(same_ring(a.ring(), b.ring()), Err::DescriptorMismatch, "matrix ring mismatch");
    if (mul)
        require(a.cols() == b.rows(), Err::DimensionMismatch, "inner dimensions differ");
    else
        require(a.rows() == b.rows() && a.cols() == b.cols(), Err::DimensionMismatch,
                "matrix shapes differ");
}

Mat Mat::operator+(const Mat& o) const {
    check_dims(*this, o, false);
    Mat r(ring_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    check_dims(*this, o, false);
    Mat r(ring_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::operator-() const {
    Mat r(ring_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    check_dims(*this, o, true);
    Mat r(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const RingScalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
            }
        }
    return r;
}

Mat Mat::scaled(const RingScalar& c) const {
    Mat r(ring_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

bool Mat::operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !same_ring(ring_, o.ring_)) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i]) return false;
    return true;
}

Mat Mat::transpose() const {
    Mat r(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::map(const std::function<RingScalar(const RingScalar&)>& f) const {
    return map_ring(ring_, f);
}

Mat Mat::map_ring(const Ring& target, const std::function<RingScalar(const RingScalar&)>& f) const {
    Mat r(target, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f(a_[i]);
    return r;
}

Mat Mat::bracket_pow(i64 e) const {
    return map([e](const RingScalar& x) { return x.frobenius_power(e); });
}

Mat Mat::col(int j) const {
    require(j >= 0 && j < cols_, Err::DimensionMismatch, "column index out of range");
    Mat r(ring_, rows_, 1);
    for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
    return r;
}

Mat Mat::cols_slice(const std::vector<int>& idx) const {
    Mat r(ring_, rows_, (int)idx.size());
    for (size_t k = 0; k < idx.size(); ++k)
        for (int i = 0; i < rows_; ++i) r.at(i, (int)k) = at(i, idx[k]);
    return r;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
    require(a.rows() == b.rows(), Err::DimensionMismatch, "hstack row mismatch");
    require(same_ring(a.ring(), b.ring()), Err::DescriptorMismatch, "hstack ring mismatch");
    Mat r(a.ring(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(ring_, rows_);
}

namespace {

RingScalar cofactor_det(const Mat& m, std::vector<int> cols_left, int row) {
    const Ring& R = m.ring();
    if (cols_left.size() == 1) return m.at(row, cols_left[0]);
    RingScalar acc = RingScalar::zero(R);
    for (size_t k = 0; k < cols_left.size(); ++k) {
        const RingScalar& x = m.at(row, cols_left[k]);
        if (x.is_zero()) continue;
        std::vector<int> rest;
        for (size_t j = 0; j < cols_left.size(); ++j)
            if (j != k) rest.push_back(cols_left[j]);
        RingScalar minor = cofactor_det(m, std::move(rest), row + 1);
        RingScalar term = x * minor;
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

RingScalar Mat::det() const {
    require(rows_ == cols_, Err::DimensionMismatch, "determinant of a non-square matrix");
    int n = rows_;
    if (n == 0) return RingScalar::one(ring_);
    if (!ring_->is_domain() || n <= 3) {
        require(n <= 8, Err::UnsupportedRing, "cofactor determinant limited to n <= 8");
        std::vector<int> cols(n);
        for (int j = 0; j < n; ++j) cols[j] = j;
        return cofactor_det(*this, std::move(cols), 0);
    }
    // Bareiss fraction-free elimination; every division is exact in a domain
    Mat w = *this;
    RingScalar prev = RingScalar::one(ring_);
    bool neg = false;
    for (int k = 0; k + 1 < n; ++k) {
        if (w.at(k, k).is_zero()) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (!w.at(i, k).is_zero()) {
                    swap = i;
                    break;
                }
            if (swap < 0) return RingScalar::zero(ring_);
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(swap, j));
            neg = !neg;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) =
                    (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)).exact_div(prev);
        prev = w.at(k, k);
    }
    RingScalar d = w.at(n - 1, n - 1);
    return neg ? -d : d;
}

Mat Mat::inverse() const {
    require(rows_ == cols_, Err::DimensionMismatch, "inverse of a non-square matrix");
    int n = rows_;
    if (ring_->kind() == RingKind::PolyRing) {
        // unimodular over F_p[x]: compute over the fraction field, then pull back
        Ring rat = RingDescriptor::rat_func_field(ring_->p());
        Mat over_rat = map_ring(rat, [&](const RingScalar& x) { return embed(x, rat); });
        Mat inv_rat = over_rat.inverse();
        Ring self = ring_;
        return inv_rat.map_ring(self, [&](const RingScalar& x) {
            require(x.as_rat().is_polynomial(), Err::NotInvertible,
                    "matrix is not invertible over F_p[x] (non-unit determinant)");
            return RingScalar::of_poly(self, x.as_rat().num());
        });
    }
    require(ring_->is_field(), Err::UnsupportedRing, "inverse needs a field or F_p[x]");
    Mat w = *this;
    Mat r = identity(ring_, n);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!w.at(i, k).is_zero()) {
                piv = i;
                break;
            }
        require(piv >= 0, Err::NotInvertible, "singular matrix");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(w.at(k, j), w.at(piv, j));
                std::swap(r.at(k, j), r.at(piv, j));
            }
        RingScalar pinv = w.at(k, k).inv();
        for (int j = 0; j < n; ++j) {
            w.at(k, j) = w.at(k, j) * pinv;
            r.at(k, j) = r.at(k, j) * pinv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || w.at(i, k).is_zero()) continue;
            RingScalar f = w.at(i, k);
            for (int j = 0; j < n; ++j) {
                w.at(i, j) = w.at(i, j) - f * w.at(k, j);
                r.at(i, j) = r.at(i, j) - f * r.at(k, j);
            }
        }
    }
    return r;
}

std::string Mat::str() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
        s += i ? "; " : "";
        for (int j = 0; j < cols_; ++j) s += (j ? ", " : "") + at(i, j).str();
    }
    return s + "]";
}

Echelon column_echelon(const Mat& m) {
    require(m.ring()->is_field(), Err::UnsupportedRing, "echelon form needs a field");
    Mat w = m;
    int fixed = 0;
    std::vector<int> pivots;
    for (int r = 0; r < w.rows() && fixed < w.cols(); ++r) {
        int pc = -1;
        for (int j = fixed; j < w.cols(); ++j)
            if (!w.at(r, j).is_zero()) {
                pc = j;
                break;
            }
        if (pc < 0) continue;
        if (pc != fixed)
            for (int i = 0; i < w.rows(); ++i) std::swap(w.at(i, pc), w.at(i, fixed));
        RingScalar pinv = w.at(r, fixed).inv();
        for (int i = 0; i < w.rows(); ++i) w.at(i, fixed) = w.at(i, fixed) * pinv;
        for (int j = 0; j < w.cols(); ++j) {
            if (j == fixed || w.at(r, j).is_zero()) continue;
            RingScalar f = w.at(r, j);
            for (int i = 0; i < w.rows(); ++i) w.at(i, j) = w.at(i, j) - f * w.at(i, fixed);
        }
        pivots.push_back(r);
        ++fixed;
    }
    std::vector<int> keep(fixed);
    for (int j = 0; j < fixed; ++j) keep[j] = j;
    return {w.cols_slice(keep), std::move(pivots)};
}

bool echelon_contains(const Echelon& e, const Mat& v) {
    require(v.cols() == 1 && v.rows() == e.basis.rows(), Err::DimensionMismatch,
            "membership expects a column vector of ambient height");
    Mat w = v;
    for (int j = 0; j < e.rank(); ++j) {
        RingScalar c = w.at(e.pivot_rows[(size_t)j], 0);  // by value: w mutates below
        if (c.is_zero()) continue;
        for (int i = 0; i < w.rows(); ++i) w.at(i, 0) = w.at(i, 0) - c * e.basis.at(i, j);
    }
    return w.is_zero();
}

Mat kernel_basis(const Mat& m) {
    require(m.ring()->is_field(), Err::UnsupportedRing, "kernel basis needs a field");
    // reduced row echelon, then back-substitute one vector per free column
    Mat w = m;
    int lead = 0;
    std::vector<int> pivot_col_of_row;
    for (int r = 0; r < w.rows() && lead < w.cols(); ++r) {
        int pr = -1;
        for (int j = lead; j < w.cols() && pr < 0; ++j)
            for (int i = r; i < w.rows(); ++i)
                if (!w.at(i, j).is_zero()) {
                    pr = i;
                    lead = j;
                    break;
                }
        if (pr < 0) break;
        if (pr != r)
            for (int j = 0; j < w.cols(); ++j) std::swap(w.at(r, j), w.at(pr, j));
        RingScalar pinv = w.at(r, lead).inv();
        for (int j = 0; j < w.cols(); ++j) w.at(r, j) = w.at(r, j) * pinv;
        for (int i = 0; i < w.rows(); ++i) {
            if (i == r || w.at(i, lead).is_zero()) continue;
            RingScalar f = w.at(i, lead);
            for (int j = 0; j < w.cols(); ++j) w.at(i, j) = w.at(i, j) - f * w.at(r, j);
        }
        pivot_col_of_row.push_back(lead);
        ++lead;
    }
    std::vector<bool> is_pivot(w.cols(), false);
    for (int c : pivot_col_of_row) is_pivot[(size_t)c] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < w.cols(); ++j)
        if (!is_pivot[(size_t)j]) free_cols.push_back(j);
    Mat k(m.ring(), m.cols(), (int)free_cols.size());
    for (size_t t = 0; t < free_cols.size(); ++t) {
        int f = free_cols[t];
        k.at(f, (int)t) = RingScalar::one(m.ring());
        for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
            k.at(pivot_col_of_row[r], (int)t) = -w.at((int)r, f);
    }
    return k;
}

int rank_of(const Mat& m) { return column_echelon(m).rank(); }

}  // namespace frob

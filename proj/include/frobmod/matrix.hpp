#pragma once

#include <functional>
#include <vector>

#include "frobmod/ring.hpp"

namespace frob {

// Dense matrix over a single coefficient ring. Row-major; all entries share
// the descriptor.
class Mat {
  public:
    Mat() = default;
    Mat(const Ring& ring, int rows, int cols);  // zero-filled
    Mat(const Ring& ring, int rows, int cols, std::vector<RingScalar> entries);

    static Mat identity(const Ring& ring, int n);

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    RingScalar& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
    const RingScalar& at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const RingScalar& c) const;

    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const;
    Mat map(const std::function<RingScalar(const RingScalar&)>& f) const;
    Mat map_ring(const Ring& target, const std::function<RingScalar(const RingScalar&)>& f) const;

    // entrywise a^{p^e} — the bracket power [q] with q = p^e
    Mat bracket_pow(i64 e) const;

    Mat col(int j) const;
    Mat cols_slice(const std::vector<int>& idx) const;
    static Mat hstack(const Mat& a, const Mat& b);

    bool is_zero() const;
    bool is_identity() const;

    // determinant: fraction-free Bareiss over integral domains,
    // division-free cofactor expansion over non-domains (small sizes)
    RingScalar det() const;
    Mat inverse() const;  // raises NotInvertible / SingularBasisChange semantics at call sites

    std::string str() const;

  private:
    Ring ring_;
    int rows_ = 0, cols_ = 0;
    std::vector<RingScalar> a_;
};

// reduced column echelon form over a field: returns the canonical basis of
// the column space (zero columns dropped) plus the strictly increasing pivot
// rows; each pivot entry is 1 and is the only nonzero entry in its row
struct Echelon {
    Mat basis;
    std::vector<int> pivot_rows;
    int rank() const { return (int)pivot_rows.size(); }
};
Echelon column_echelon(const Mat& m);

// membership of a vector (n x 1) in the span of a reduced column echelon basis
bool echelon_contains(const Echelon& e, const Mat& v);

// basis of the right kernel {x : m x = 0} over a field, one column per basis
// vector, deterministic (free variables in increasing index order)
Mat kernel_basis(const Mat& m);

int rank_of(const Mat& m);  // fields

}  // namespace frob

#pragma once

#include "frobmod/matrix.hpp"

namespace frob {

// Knobs bounding the symbolic searches; every operation taking a Limits uses
// these defaults unless the caller overrides them.
struct Limits {
    int max_power = 12;              // bound on the power index r
    int s_max = 12;                  // extension-degree search bound
    int m_max = 16;                  // Frobenius-sum bound in root construction
    i64 enumeration_cap = 1000000;   // total-subspace cap for enumerations
    i64 degree_guard = 10000;        // max canonical entry degree in submodule ops
    int r_max = 6;                   // certificate depth
};

// A Frobenius module on a free module of rank n: the twist-e action
// F(v) = A v^[q] with q = p^e, columns of A the images of the basis.
class FrobModule {
  public:
    FrobModule(Ring ring, int n, i64 e, Mat A);

    const Ring& ring() const { return ring_; }
    int n() const { return n_; }
    i64 e() const { return e_; }
    i64 p() const { return ring_->p(); }
    const Mat& matrix() const { return A_; }

  private:
    Ring ring_;
    int n_;
    i64 e_;
    Mat A_;
};

struct FrobMatrixPower {
    int r;
    Mat A_r;
};

struct CoefficientSequence {
    int r;
    FpPoly a_r;
};

struct UnitReport {
    bool unit;
    RingScalar det;
};

// A_r = A A^[q] ... A^[q^{r-1}], computed by A_r = A_{r-1} A^[q^{r-1}]
FrobMatrixPower power_matrix(const FrobModule& M, int r, const Limits& lim = {});

// A_r v^[q^r]
Mat apply(const FrobModule& M, const Mat& v, int r, const Limits& lim = {});

bool is_fixed_vector(const FrobModule& M, const Mat& v, int r, const Limits& lim = {});

// a_r over F_p with a_{-1} = 0, a_0 = 1, a_r = a_{r-2} + a_{r-1} x^{q^{r-1}};
// the bottom-right entry of the 2x2 closed form for A_r of [[0,1],[1,x]]
CoefficientSequence coefficient_sequence(i64 p, i64 e, int r);

// C^{-1} A_r C^[q^r]: the matrix of F^{er} after the change of basis C
Mat change_basis(const FrobModule& M, const Mat& C, int r, const Limits& lim = {});

FrobModule extend_scalars(const FrobModule& M, const Ring& target);

// entrywise q-th power of a presentation matrix
Mat frobenius_twist_presentation(const Mat& G, i64 e);

// the same module viewed with twist er and structure matrix A_r
FrobModule compose_twist(const FrobModule& M, int r, const Limits& lim = {});

UnitReport is_unit(const FrobModule& M);

}  // namespace frob

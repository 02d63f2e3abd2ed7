#pragma once

#include <optional>

#include "frobmod/frobmod.hpp"

namespace frob {

// A subspace of the ambient F_{p^m}^n in canonical form: reduced column
// echelon basis, pivot rows strictly increasing, each pivot 1 and alone in
// its row.
struct Subspace {
    Ring field;
    int n = 0;
    Mat basis;  // n x dim
    std::vector<int> pivot_rows;

    int dim() const { return basis.cols(); }
};

Subspace subspace_from_columns(const Ring& field, int n, const Mat& cols);
Subspace zero_subspace(const Ring& field, int n);
Subspace full_subspace(const Ring& field, int n);

bool subspace_contains(const Subspace& s, const Mat& v);
bool subspace_leq(const Subspace& a, const Subspace& b);  // a inside b
bool subspace_eq(const Subspace& a, const Subspace& b);

// deterministic total order: dimension first, then entry indices of the
// canonical basis read row-major
std::vector<i64> subspace_key(const Subspace& s);

struct FixedSpace {
    Ring field;           // ambient coefficient field
    Ring fixed_subfield;  // F_{p^gcd(er, m)}
    int fp_dim = 0;       // dimension over F_p
    std::vector<Mat> fp_basis;        // F_p-basis of the solution set, columns over `field`
    std::vector<Mat> subfield_basis;  // basis as a vector space over the fixed subfield
    i64 count() const;                // p^fp_dim
};

// solutions of A_r v^[q^r] = v over a finite field, by F_p-linearization
FixedSpace fixed_points(const FrobModule& M, int r, const Limits& lim = {});

// {v : A_r v^[q^r] in N} for a unit module over a finite field
Subspace descent_preimage(const FrobModule& M, const Subspace& N, int r, const Limits& lim = {});

// span of the image F^{er}(N)
Subspace frob_image_subspace(const FrobModule& M, const Subspace& N, int r, const Limits& lim = {});

// all F^{er}-stable subspaces in canonical form, sorted by subspace_key
std::vector<Subspace> enumerate_stable_subspaces(const FrobModule& M, int r,
                                                 const Limits& lim = {});

bool is_simple(const FrobModule& M, int r, const Limits& lim = {});

struct CompositionSeries {
    std::vector<Subspace> chain;     // zero to full, strict inclusions
    std::vector<Mat> quotient_data;  // structure matrix of each simple quotient (twist er)
    int length = 0;
};

CompositionSeries composition_series(const FrobModule& M, int r, const Limits& lim = {});

struct GeometricLength {
    int length = 0;
    int witness_s = 0;
    Ring witness_field;
    // present when the search stopped on a spanning fixed basis
    std::optional<std::vector<Mat>> fixed_basis;
};

// extends scalars to F_{p^{m s}} for s = 1, 2, ..., s_max until the unit
// length stabilizes at n (or a spanning fixed basis certifies it); returns
// the stabilized length and the minimal witness s
GeometricLength geometric_length(const FrobModule& M, const Limits& lim = {});

struct DieudonneBasis {
    int witness_s = 0;
    Ring field;
    std::vector<Mat> basis;  // n vectors over `field`, each fixed by F^{er}, jointly spanning
};

DieudonneBasis dieudonne_basis(const FrobModule& M, int r, const Limits& lim = {});

// number of subspaces of F_q^n, saturating at cap+1
i64 subspace_count(i64 q, int n, i64 cap);

// the extension F_{p^{m s}} of a finite base field
Ring extension_of(const Ring& base, int s);

}  // namespace frob

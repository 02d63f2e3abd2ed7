#pragma once

#include "frobmod/frobmod.hpp"

namespace frob {

// Finitely generated submodule of the free module over F_p[x], kept in
// column Hermite normal form: pivot rows strictly increasing, pivots monic,
// and in every pivot row the entries of the other (earlier) columns reduced
// modulo the pivot. The form is the unique canonical representative of the
// submodule.
class Submodule {
  public:
    Submodule(const FrobModule& ambient, const Mat& generators, const Limits& lim = {});

    const FrobModule& ambient() const { return ambient_; }
    const Mat& generators() const { return gens_; }
    const Mat& canonical() const { return canon_; }
    const std::vector<int>& pivot_rows() const { return pivots_; }
    int rank() const { return canon_.cols(); }
    bool is_zero_module() const { return canon_.cols() == 0; }

  private:
    FrobModule ambient_;
    Mat gens_;
    Mat canon_;
    std::vector<int> pivots_;
};

// re-canonicalization (idempotent by construction)
Submodule canonical_form(const Submodule& N, const Limits& lim = {});

bool membership(const Mat& v, const Submodule& N);

Submodule sum(const Submodule& N1, const Submodule& N2, const Limits& lim = {});
Submodule intersect(const Submodule& N1, const Submodule& N2, const Limits& lim = {});

bool submodule_eq(const Submodule& a, const Submodule& b);
bool submodule_leq(const Submodule& a, const Submodule& b);  // a inside b

// span of A_r * G^[q^r]
Submodule frob_image(const FrobModule& M, const Submodule& N, int r, const Limits& lim = {});

// N contained in its own Frobenius image
bool is_root(const FrobModule& M, const Submodule& N, const Limits& lim = {});

struct RootReport {
    Submodule root;
    int m_used = 0;
    bool verified = false;         // root inside frob_image(root)
    bool chain_certified = false;  // root in F(root) in F^2(root) in F^3(root)
};

// the Frobenius-sum construction: find minimal m with span(gens) inside
// sum_{k=1}^{m} F^{ke}(gens), return sum_{k=0}^{m-1} F^{ke}(gens)
RootReport root_from_generators(const FrobModule& M, const Mat& gens, int m_max = 16,
                                const Limits& lim = {});

// saturate N_gens under F, intersect with a verified root, and certify the
// result is again a root
Submodule induced_root(const FrobModule& M, const Submodule& rootM, const Mat& N_gens,
                       int m_max = 16, const Limits& lim = {});

// kernel of an n x c matrix over F_p[x] as a module basis (columns), exact
// via a tracked unimodular column reduction
Mat poly_kernel(const Mat& m);

}  // namespace frob

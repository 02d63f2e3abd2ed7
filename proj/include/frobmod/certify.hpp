#pragma once

#include "frobmod/frobmod.hpp"

namespace frob {

// Closed forms for the off-diagonal and corner entries of the based-changed
// power matrix B_r = [[0, s_r], [1, t_r]] of the rank-2 module [[0,1],[1,x]]:
//   s_r = (-1)^{r-1} a_{r-1}^{q^r - 1}
//   t_r = a_{r-2}^{q^r + q} + a_r a_{r-1}^{q^r - 1}
struct ClosedForms {
    FpPoly s_r, t_r;
};

ClosedForms closed_forms(i64 p, i64 e, int r);

// C_r^{-1} A_r C_r^[q^r] over F_p(x) equals [[0, s_r], [1, t_r]] entrywise,
// with C_r = [[1, a_{r-2}^q], [0, a_{r-1}]]
bool verify_Br(i64 p, i64 e, int r, const Limits& lim = {});

// det A_r = (-1)^r in F_p
bool det_identity(i64 p, i64 e, int r, const Limits& lim = {});

struct DegreeLedgerEntry {
    std::string name;
    Degree computed;      // from the symbolic polynomial
    i64 closed_form = 0;  // integer formula
    bool matches = false;
};

struct DegreeLedger {
    int r = 0;
    i64 q = 0;
    std::vector<DegreeLedgerEntry> entries;  // a_r, s_r, t_r
    bool deg_gap = false;                    // deg t_r > deg s_r
    bool all_match = false;
};

DegreeLedger degree_ledger(i64 p, i64 e, int r);

struct Certificate {
    i64 p = 0, e = 0;
    int r = 0;
    FpPoly s_r, t_r;
    DegreeLedger ledger;
    bool br_identity = false;
    bool det_ok = false;
    bool deg_gap = false;
    bool s_nonzero = false;
    bool divisibility_contradiction = false;
    bool verdict = false;
};

// one certificate per r = 1..r_max; verdict true certifies that no scaled
// fixed vector exists for F^{er}, hence simplicity at that twist
std::vector<Certificate> simplicity_certificate(i64 p, i64 e, int r_max, const Limits& lim = {});

struct AdjoinedRootReport {
    i64 p = 0;
    bool fixed_ok = false;          // F(alpha^p, alpha) = (alpha^p, alpha)
    bool control_not_fixed = false; // F(1,0) = (0,1) stays unfixed
    bool fixed_line_exists = false; // the extension acquires a stable line
    bool passed = false;
};

// adjoin a root alpha of t^{p^2} + x t^p - t and verify that (alpha^p, alpha)
// is fixed by F, so the extended module stops being simple
AdjoinedRootReport adjoined_root_check(i64 p);

struct DerivativeAudit {
    bool identity_ok = false;      // d/dx E(beta) = (beta^{q^r} + t_r^{p^t}) beta'
    bool cancellation_ok = false;  // E' = 0 forces beta^{q^r} = -t_r^{p^t}
};

// the t > 0 branch of the contradiction argument on concrete samples beta
DerivativeAudit derivative_audit(i64 p, i64 e, int r, int t, const FpPoly& beta);

}  // namespace frob

#pragma once

#include <optional>
#include <string>

#include "frobmod/frobmod.hpp"

namespace frob {

// A parsed module description file. The format is line oriented:
//
//   # comment
//   p: 3
//   e: 1
//   ring: prime            (or: ext 2 u^2+1 | poly | ratfunc |
//                               quotient t^9+x*t^3+2*t | perfect)
//   n: 2
//   matrix: [0, 1, 1, 1]   (row-major polynomial literals)
//   subspace: [1, 0]; [0, 1]     optional, columns
//   submodule: [x, 0]; [0, 1]    optional, columns over F_p[x]
//   basis: [1, 0, 0, 1]          optional, row-major n x n
//   vector: [1, 2]               optional
struct ModuleFile {
    FrobModule module;
    std::optional<Mat> subspace_cols;
    std::optional<Mat> submodule_cols;
    std::optional<Mat> basis;
    std::optional<Mat> vector;
};

ModuleFile parse_module_file(const std::string& text);
std::string emit_module_file(const ModuleFile& mf);

// one polynomial-literal expression evaluated in the ring
RingScalar parse_scalar(const std::string& text, const Ring& ring);

// comma-separated bracketed list: [e1, e2, ...]
std::vector<RingScalar> parse_bracket_list(const std::string& text, const Ring& ring);

std::string ring_spec_string(const Ring& ring);   // the `ring:` field value
Ring parse_ring_spec(const std::string& text, i64 p);

std::string matrix_row_major(const Mat& m);       // [a, b; ...] flattened form
std::string matrix_columns(const Mat& m);         // [col1]; [col2] form

}  // namespace frob

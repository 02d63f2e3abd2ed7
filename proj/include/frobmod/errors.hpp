#pragma once

#include <stdexcept>
#include <string>

namespace frob {

// Stable error codes; the CLI prints these names verbatim and maps every
// one of them to exit code 1.
enum class Err {
    DescriptorMismatch,
    DivisionByZero,
    NotInvertible,
    UnsupportedRing,
    DimensionMismatch,
    SingularBasisChange,
    NoCanonicalEmbedding,
    NotUnit,
    EnumerationCapExceeded,
    WitnessBoundExceeded,
    BoundExceeded,
    DegreeGuardExceeded,
    PowerRangeExceeded,
    RootCheckFailed,
    ParseError,
    ValidationError,
};

const char* err_name(Err e);

class FrobError : public std::runtime_error {
  public:
    FrobError(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& msg) { throw FrobError(code, msg); }

inline void require(bool cond, Err code, const std::string& msg) {
    if (!cond) raise(code, msg);
}

}  // namespace frob

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace frob {

// Polynomial degree with a genuine -infinity for the zero polynomial.
// deg(fg) = deg f + deg g and max/comparisons behave as expected with
// -infinity absorbing under +.
class Degree {
  public:
    constexpr Degree() : finite_(false), v_(0) {}

    static constexpr Degree neg_inf() { return Degree(); }
    static constexpr Degree of(std::int64_t v) { return Degree(true, v); }

    constexpr bool finite() const { return finite_; }

    constexpr std::int64_t value() const { return v_; }  // meaningful only when finite

    constexpr Degree operator+(Degree o) const {
        if (!finite_ || !o.finite_) return neg_inf();
        return of(v_ + o.v_);
    }

    friend constexpr bool operator==(Degree a, Degree b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
    }

    friend constexpr bool operator<(Degree a, Degree b) {
        if (!a.finite_) return b.finite_;
        if (!b.finite_) return false;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator>(Degree a, Degree b) { return b < a; }
    friend constexpr bool operator<=(Degree a, Degree b) { return !(b < a); }
    friend constexpr bool operator>=(Degree a, Degree b) { return !(a < b); }

    std::string str() const { return finite_ ? std::to_string(v_) : "-inf"; }

  private:
    constexpr Degree(bool f, std::int64_t v) : finite_(f), v_(v) {}
    bool finite_;
    std::int64_t v_;
};

}  // namespace frob

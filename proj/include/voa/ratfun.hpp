#pragma once

#include <optional>
#include <string>
#include <vector>

#include "voa/poly.hpp"

namespace voa {

/// Reduced rational function num/den over the declared parameters.
/// Canonical form: gcd(num, den) = 1 and den is monic under the monomial
/// order, so equality is structural equality.
class RatFun {
  public:
    RatFun() = default;
    explicit RatFun(int nvars) : num_(nvars), den_(Poly::constant(nvars, Rat(1))) {}
    RatFun(Poly num, Poly den);

    static RatFun constant(int nvars, const Rat& c) {
        return RatFun(Poly::constant(nvars, c), Poly::constant(nvars, Rat(1)));
    }
    static RatFun variable(int nvars, int index) {
        return RatFun(Poly::variable(nvars, index), Poly::constant(nvars, Rat(1)));
    }
    static RatFun from_poly(Poly p) {
        int n = p.nvars();
        return RatFun(std::move(p), Poly::constant(n, Rat(1)));
    }

    int nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    RatFun operator-() const;
    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun inverse() const;
    RatFun pow(int e) const;
    RatFun scaled(const Rat& c) const;

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }
    bool operator<(const RatFun& o) const {
        if (num_ != o.num_) return num_ < o.num_;
        return den_ < o.den_;
    }

    /// Substitute a rational value; names are used in the pole diagnostic.
    RatFun substitute(int var, const Rat& value, const std::vector<std::string>& names) const;
    /// Substitute a rational function for one variable.
    RatFun substitute(int var, const RatFun& value, const std::vector<std::string>& names) const;

    /// deg(num) - deg(den) in one variable; nullopt for zero.
    std::optional<int> degree(int var) const;
    /// Leading behaviour as var -> infinity. Requires degree <= 0; the result
    /// is the ratio of leading coefficients (zero when degree < 0).
    RatFun limit_at_infinity(int var) const;

    std::string str(const std::vector<std::string>& names) const;

  private:
    Poly num_, den_;
};

} // namespace voa

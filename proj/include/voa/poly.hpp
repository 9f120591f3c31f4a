#pragma once

#include <map>
#include <string>
#include <vector>

#include "voa/rational.hpp"

namespace voa {

/// Exponent vector, one entry per declared parameter, compared lexicographically.
using Mono = std::vector<int>;

/// Sparse multivariate polynomial over Rat. The number of variables is fixed
/// at construction; all operands of a binary operation must agree on it.
class Poly {
  public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rat& c);
    static Poly variable(int nvars, int index);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term as a Rat; only meaningful when is_constant().
    Rat constant_value() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const Rat& c) const;
    Poly pow(unsigned e) const;

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    /// Total order (for use as a map key); not mathematically meaningful.
    bool operator<(const Poly& o) const;

    /// Degree in one variable; -1 for the zero polynomial.
    int degree(int var) const;
    /// Coefficient of var^deg, as a polynomial with the same nvars (var-free).
    Poly coeff_of(int var, int deg) const;
    /// Substitute a rational value for one variable.
    Poly substitute(int var, const Rat& value) const;
    /// Leading coefficient under the monomial order.
    Rat leading_coeff() const;

    /// Monic gcd over the rational function field (up to units). gcd(0,0)=0.
    static Poly gcd(const Poly& x, const Poly& y);

    const std::map<Mono, Rat>& terms() const { return terms_; }
    void set_term(const Mono& m, const Rat& c);

    std::string str(const std::vector<std::string>& names) const;

  private:
    int nvars_;
    std::map<Mono, Rat> terms_; // monomial -> nonzero coefficient
};

} // namespace voa

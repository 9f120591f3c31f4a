#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voa/scalar.hpp"

namespace voa {

/// Laurent polynomial in the Jacobi variables z (index 0) and w (index 1).
class Laurent {
  public:
    using Key = std::pair<int, int>;

    static Laurent unit() { return monomial(0, 0, Rat(1)); }
    static Laurent monomial(int ez, int ew, const Rat& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    const std::map<Key, Rat>& terms() const { return terms_; }
    void add(int ez, int ew, const Rat& c);

    Laurent operator-() const;
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent scaled(const Rat& c) const;
    bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    /// z -> -z (sign per degree in the chosen variable).
    Laurent negate_var(int var) const;
    /// Substitute a rational value (typically +-1) for one variable.
    Laurent set_var(int var, const Rat& value) const;
    /// Formal derivative in one variable.
    Laurent derive_var(int var) const;
    /// Exact division by (v - v^-1); nullopt if the division leaves a remainder.
    std::optional<Laurent> divide_v_minus_vinv(int var) const;

    int max_abs_degree(int var) const;
    std::string str() const;

  private:
    std::map<Key, Rat> terms_;
};

/// Truncated series in q with rational exponents on a fixed grid 1/denom,
/// Laurent coefficients, and an optional symbolic prefactor exponent that is
/// tracked separately until it is collapsed into the grid.
class QSeries {
  public:
    QSeries(int denom, const Rat& order);
    static QSeries unit(int denom, const Rat& order);

    int denom() const { return denom_; }
    /// Smallest exponent NOT guaranteed correct (can be +infinity for 0).
    Rat order() const;
    bool is_zero() const { return coef_.empty(); }
    const std::map<long, Laurent>& coef() const { return coef_; }

    void add_term(const Rat& exponent, const Laurent& c);
    Laurent at(const Rat& exponent) const;
    std::optional<Rat> valuation() const;

    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries scaled(const Rat& c) const;
    QSeries scaled(const Laurent& c) const;
    /// Multiply by q^r.
    QSeries shifted(const Rat& r) const;
    QSeries truncated(const Rat& new_order) const;
    /// Inverse; the lowest term must be a single Laurent monomial.
    QSeries inverse() const;

    QSeries negate_var(int var) const;
    QSeries set_var(int var, const Rat& value) const;
    QSeries derive_var(int var) const;
    /// Exact division of every coefficient by (v - v^-1).
    QSeries divide_v_minus_vinv(int var) const;
    /// Formal substitution v^j -> q^(-j/2) with re-truncation to result_order
    /// (the caller must know a valid order for the substituted series).
    QSeries substitute_q_half(int var, const Rat& result_order) const;

    const std::optional<Scalar>& prefactor() const { return prefactor_; }
    QSeries with_prefactor(Scalar s) const;
    /// Assert the symbolic prefactor equals `expected` and fold it into the
    /// exponent grid.
    QSeries collapse_prefactor(const Rat& expected) const;

    struct Mismatch {
        Rat exponent;
        int ez, ew;
        Rat lhs, rhs;
        std::string str() const;
    };
    /// First differing coefficient below the common order.
    std::optional<Mismatch> first_difference(const QSeries& o) const;

    std::string str(int max_terms = 12) const;

  private:
    long scale_exp(const Rat& e) const;
    int denom_;
    long order_; // scaled by denom_; LONG_MAX/4 plays infinity
    std::map<long, Laurent> coef_;
    std::optional<Scalar> prefactor_;
};

// Builders (orders are plain exponent bounds; denom is the grid).
QSeries theta_series(int denom, int ez, int ew, const Rat& N);
/// theta_Z(q^(-1/2) w) - theta_Z(q^(-1/2) w^-1) built term by term.
QSeries theta_qhalf_diff(int denom, const Rat& N);
/// theta_Z(q^-1, q) - theta_Z(1, q).
QSeries theta_double_specialized(int denom, const Rat& N);
/// sum_m m(m-1) q^(m^2/2), the second z-derivative of theta at z = 1.
QSeries theta_second_derivative(int denom, const Rat& N);
QSeries eta_series(int denom, const Rat& N);
QSeries inv_prod1(int denom, const Rat& N); // 1/prod(1-q^n)
QSeries weyl_denominator(int denom, int var, const Rat& N);
QSeries inv_prod3(int denom, int var, const Rat& N);
QSeries sch_bc(int denom, int var, const Rat& N);

struct PbwGen {
    Rat weight;
    bool odd;
    int charge; // exponent of the tracked variable per mode
    int var;    // 0, 1, or -1 for none
};
/// Vacuum PBW character: bosonic modes contribute 1/(1 - x q^m) and fermionic
/// modes (1 + x q^m) for m = weight, weight+1, ..., with x = var^charge.
QSeries pbw_vacuum_character(int denom, const std::vector<PbwGen>& gens, const Rat& N);

} // namespace voa

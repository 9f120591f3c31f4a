#pragma once

#include "voa/qseries.hpp"
#include "voa/report.hpp"

namespace voa {

/// Exponent grid shared by all character computations (covers 1/24, 1/8, 1/2).
inline constexpr int kCharDenom = 24;

/// Weyl module character data for affine sl2 at a (possibly symbolic) level:
/// the series part chi_m(var) / prod(1-v^2 q^n)(1-q^n)(1-v^-2 q^n) and the
/// symbolic prefactor exponent h_m - c/24 with h_m = m(m+2)/(4(k+2)) and the
/// central charge taken from the engine's Sugawara vector.
QSeries weyl_char_series(int var, int m, const Rat& N);
Scalar weyl_char_prefactor(const CtxPtr& ctx, const Scalar& level, int m);
/// Finite sl2 character chi_m(v) = v^m + v^(m-2) + ... + v^-m.
Laurent finite_char(int var, int m);

/// Central charge of affine sl2 at a symbolic level, engine-derived.
Scalar sl2_central_charge(const CtxPtr& ctx, const Scalar& level);

std::vector<CheckItem> branching_check(const Rat& N);
std::vector<CheckItem> small_n4_multiplicity_check(const Rat& N);
std::vector<CheckItem> qhr_char_check_first(const Rat& N);
std::vector<CheckItem> qhr_char_check_second(const Rat& N);
std::vector<CheckItem> hopital_limit_check(const Rat& N);
std::vector<CheckItem> supercharacter_check(const Rat& N);
/// weyl_char against a brute-force PBW state count at numeric levels.
std::vector<CheckItem> weyl_pbw_oracle_check(const Rat& N, int max_m);

} // namespace voa

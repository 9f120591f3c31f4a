#pragma once

#include <map>
#include <optional>

#include "voa/algebra.hpp"

namespace voa {

/// The standard session for everything expressed in (k, a): root symbols
/// I^2 = -1, sa^2 = a, s2a^2 = 2a, s3p2k^2 = 3+2k.
CtxPtr standard_context();

Algebra affine_sl2(CtxPtr ctx, const Scalar& level, const std::string& name = "sl2",
                   const std::vector<std::string>& gen_names = {"e", "f", "h"});
/// osp(1|2) at the given level: even e', h', f' and odd x', y'.
Algebra affine_osp12(CtxPtr ctx, const Scalar& level, const std::string& name = "osp12");
Algebra bc_system(CtxPtr ctx, const Rat& weight_b, const Rat& weight_c,
                  const std::string& bname = "b", const std::string& cname = "c",
                  const std::string& name = "bc");
Algebra beta_gamma(CtxPtr ctx, const Rat& weight_beta, const Rat& weight_gamma,
                   const std::string& name = "bg");
Algebra heisenberg(CtxPtr ctx, const Scalar& level, const std::string& name = "heis");
Algebra free_fermion(CtxPtr ctx, const std::string& name = "ff");

/// Same table with parameters substituted in every coefficient.
Algebra specialize_presentation(const Algebra& alg, const std::map<std::string, Rat>& assignment,
                                const std::string& name);

/// Sugawara vector of an affine presentation: the unique even weight-2 vector
/// L with [L_l J] = (l+d)J for every current J, solved as a linear system.
/// `currents` restricts both the ansatz letters and the constraint set (used
/// for the primed sl2 inside the big algebra); default is all generators.
FieldExpr sugawara(const Algebra& alg, std::optional<std::vector<int>> currents = std::nullopt);

/// Central charge of a Virasoro vector: checks the full OPE shape
/// [L_l L] = (d+2l)L + l^3/12 c and returns c.
Scalar central_charge(const FieldExpr& L, const Algebra& alg);

/// L with the primed-sl2 Sugawara vector removed (the coset Virasoro).
FieldExpr coset_virasoro(const Algebra& vka);

enum class LimitScaling { InverseA, InverseSqrtA };

/// Rescale the named generators by 1/a (or 1/sqrt(a)), then take the
/// coefficient-wise a -> infinity limit of the whole table.
Algebra a_infinity_limit(const Algebra& alg, LimitScaling scaling,
                         const std::vector<std::string>& rescaled = {"e'", "f'", "h'"},
                         const std::string& name = "limit");

Algebra quotient_by_central(const Algebra& alg, const std::vector<std::string>& central,
                            const std::string& name);

/// Entry-by-entry difference of two tables with identically named generators;
/// returns human-readable descriptions of every mismatch.
std::vector<std::string> table_differences(const Algebra& got, const Algebra& expect);

/// Image of an expression under a strong-generator map: the letter d^m(g) is
/// replaced by the m-th derivative of images.at(g), words are rebuilt with
/// the target algebra's normally ordered product.
FieldExpr push_through(const FieldExpr& e, const Algebra& dst,
                       const std::map<int, FieldExpr>& images);

/// Check the transcribed LC-variant table against the engine's own change of
/// variables LC = L - Lsug'. Returns mismatch descriptions (empty = pass).
std::vector<std::string> verify_lc_derivation(const Algebra& vkaL, const Algebra& vkaLC);

} // namespace voa

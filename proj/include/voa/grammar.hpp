#pragma once

#include <string>
#include <vector>

#include "voa/algebra.hpp"

namespace voa {

/// Text form of field expressions and scalars.
///
///   expr    := ['-'] term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := primary ['^' ['-'] integer]
///   primary := integer | parameter | root | generator | 'd(' expr ')'
///            | ':' atom+ ':' | '1' | '(' expr ')'
///
/// Inside ':...:' the atoms are generators, d(...) of atoms, or nested words;
/// the sequence is read as the right-nested normally ordered word. Scalars
/// multiply fields with '*'; products of two non-scalar fields must be written
/// as words. Generator names are matched longest-first, so primed names and
/// names like G++ need no quoting; G^{++} is accepted as a synonym of G++.
FieldExpr parse_field_expr(const std::string& text, const CtxPtr& ctx,
                           const std::vector<Generator>& gens);
FieldExpr parse_field_expr(const std::string& text, const Algebra& alg);

/// Scalar-only expression (no generators needed).
Scalar parse_scalar(const std::string& text, const CtxPtr& ctx);
RatFun parse_ratfun(const std::string& text, const CtxPtr& ctx);

std::string print_word(const Word& w, const std::vector<Generator>& gens);
std::string print_field_expr(const FieldExpr& e, const std::vector<Generator>& gens);
std::string print_field_expr(const FieldExpr& e, const Algebra& alg);

} // namespace voa

#pragma once

#include "voa/presentations.hpp"
#include "voa/report.hpp"

namespace voa {

/// Reduction-by-substitution data: an ambient presentation tensored with a
/// ghost pair, the odd differential d with d_(0) d = 0, and the substituted
/// generator ("-e is in the same class as the vacuum": e -> -1, d^m e -> 0).
struct ReductionComplex {
    Algebra ambient;
    FieldExpr d;
    int killed; // generator replaced by -1
};

enum class ReductionStep { First, Second };

/// First step: V(k,a) x bc with d = :be: + b, e -> -1.
/// Second step: V_k(osp(1|2)) x b'c' with d' = :b'e': + b', e' -> -1.
ReductionComplex build_complex(ReductionStep step);

FieldExpr d0(const ReductionComplex& cx, const FieldExpr& x);
bool is_closed(const ReductionComplex& cx, const FieldExpr& x);
/// Substitute the killed generator and canonicalize; x must be d0-closed.
FieldExpr reduce(const ReductionComplex& cx, const FieldExpr& x);

/// The osp(1|2) structure of the first reduction: closedness of the
/// generators, the full osp table at level -((a+1)k+1) for
/// x' = (a+1)/sqrt(2a) G++ and y' = -(a+1)/sqrt(2a) G-+, and the level and
/// central-charge specializations at k = 1/2.
std::vector<CheckItem> verify_osp_subalgebra();
std::vector<CheckItem> specialize_to_theorem();

/// The N=1 structure of the second reduction: closedness of L' and psi, the
/// recorded L'_(j)L', psi x', psi_(2)psi, psi_(1)psi identities, the
/// cobounding identity psi_(0)psi + d'0(R) = 2L', the reduced Virasoro and
/// N=1 central charges, and the free-fermion commutation relations.
std::vector<CheckItem> verify_n1_structure();

} // namespace voa

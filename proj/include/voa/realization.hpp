#pragma once

#include "voa/presentations.hpp"
#include "voa/report.hpp"

namespace voa {

/// Free-field realization: a strong-generator map from the target presentation
/// into composites of the source, verified OPE by OPE.
struct Realization {
    Algebra source;
    Algebra target;
    std::map<int, FieldExpr> images; // target generator index -> source field
};

/// The beta-gamma plus bc system carrying the small N=4 algebra at c = -9
/// (weights beta 1, gamma 0, b 3/2, c -1/2 under the affine Sugawara vector).
Algebra realization_source(CtxPtr ctx);

/// The small N=4 algebra at k = 1/2 realized inside beta-gamma x bc:
///   e = beta, h = -2:gamma beta: + :bc:,
///   f = -:gamma gamma beta: - (3/2) d(gamma) + :gamma b c:,
/// the four odd fields generated from b, and LC the affine Sugawara vector.
Realization build_wakimoto_small_n4();

/// Exhaustive intertwining check over every target generator pair, plus the
/// level, weight, and central-charge identities.
std::vector<CheckItem> verify_realization(const Realization& r);

/// X_n = :b d(b) ... d^(n-1)(b): (X_0 the vacuum).
FieldExpr x_vector(const Algebra& source, int n);

/// Highest-weight data of X_n: e_(j) X = 0 (j >= 0), h_(0) X = n X,
/// h_(j) X = f_(j) X = 0 (j >= 1), L_(1) X = n(n+2)/2 X.
std::vector<CheckItem> check_highest_weight(const Realization& r, int n);

} // namespace voa

#pragma once

#include "niforge/types.hpp"

namespace niforge {

// Unique symmetric solution X of  F X + X F^T + Q = 0  for Hurwitz F and
// symmetric Q (Bartels-Stewart: real Schur reduction plus block back-substitution).
RealMatrix solve_stable_lyapunov(const Eigen::Ref<const RealMatrix>& f,
                                 const Eigen::Ref<const RealMatrix>& q);

}  // namespace niforge

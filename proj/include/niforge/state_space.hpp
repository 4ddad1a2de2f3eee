#pragma once

#include <vector>

#include "niforge/types.hpp"

namespace niforge {

// G(s) = C (sI - A)^{-1} B + D with A n x n, B n x m, C m x n, D m x m.
struct StateSpace
{
    RealMatrix A;
    RealMatrix B;
    RealMatrix C;
    RealMatrix D;

    StateSpace(RealMatrix a, RealMatrix b, RealMatrix c, RealMatrix d);

    Index order() const { return A.rows(); }
    Index outputs() const { return C.rows(); }
    bool siso() const { return outputs() == 1; }
};

// Uncertainty channel plant:  x' = A x + B1 w + B2 u,  z = C1 x.
// Scope is the scalar channel (B1 n x 1, C1 1 x n, B2 n x 1); construction
// enforces R = C1 B1 + B1^T C1^T > 0 and C1 B2 invertible.
struct UncertainPlant
{
    RealMatrix A;
    RealMatrix B1;
    RealMatrix B2;
    RealMatrix C1;

    UncertainPlant(RealMatrix a, RealMatrix b1, RealMatrix b2, RealMatrix c1);

    Index order() const { return A.rows(); }
    double coupling() const { return (C1 * B2)(0, 0); }   // C1 B2
    double r_scalar() const { return 2.0 * (C1 * B1)(0, 0); }  // C1 B1 + B1^T C1^T
};

struct MinimalityReport
{
    bool minimal = false;
    Index controllability_rank = 0;
    Index observability_rank = 0;
};

namespace detail {
// Resolvent evaluation without the near-pole guard; callers handle spectra.
ComplexMatrix transfer_at(const StateSpace& sys, Complex s);
}  // namespace detail

ComplexMatrix freq_response(const StateSpace& sys, Complex s);

// (A + delta I, B, C, D).  With delta = -eps this realizes G(s + eps).
StateSpace shift(const StateSpace& sys, double delta);

// Eigenvalues of A, sorted. Equals the transfer-function poles only for
// minimal realizations.
std::vector<Complex> poles(const StateSpace& sys);

MinimalityReport is_minimal(const StateSpace& sys);

// Closed loop w -> z under u = K x:  (A + B2 K, B1, C1, 0).
StateSpace close_loop(const UncertainPlant& plant, const Eigen::Ref<const RealMatrix>& k);

}  // namespace niforge

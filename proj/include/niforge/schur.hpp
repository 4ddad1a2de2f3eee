#pragma once

#include "niforge/types.hpp"

namespace niforge {

// Ordered real Schur form M = U * [A11 A12; 0 A22] * U^T with every eigenvalue
// of A11 in the closed left half plane (Re <= axis_tolerance) and A22 anti-stable.
struct SchurSplit
{
    RealMatrix U;
    RealMatrix A11;
    RealMatrix A12;
    RealMatrix A22;
    Index stable_dim = 0;
    double axis_tolerance = 0.0;

    Index order() const { return U.rows(); }
    RealMatrix quasi_triangular() const;
};

// Boundary between "closed left half plane" and anti-stable: 1e-9 * (1 + ||M||_F).
double default_axis_tolerance(const Eigen::Ref<const RealMatrix>& m);

SchurSplit ordered_real_schur(const Eigen::Ref<const RealMatrix>& m);
SchurSplit ordered_real_schur(const Eigen::Ref<const RealMatrix>& m, double axis_tolerance);

}  // namespace niforge

#pragma once

#include <vector>

#include "niforge/types.hpp"

namespace niforge {

// Eigenvalues with multiplicity, sorted by (Re, Im) ascending for determinism.
std::vector<Complex> eigenvalues(const Eigen::Ref<const RealMatrix>& m);

// Smallest eigenvalue of the symmetric part (M + M^T)/2.
double sym_min_eig(const Eigen::Ref<const RealMatrix>& m);

// Smallest eigenvalue of the Hermitian part (M + M^*)/2.
double herm_min_eig(const Eigen::Ref<const ComplexMatrix>& m);

// Default tolerance for definiteness verdicts: 1e-9 * (1 + ||M||_F).
double definiteness_tol(const Eigen::Ref<const RealMatrix>& m);

// min_eig >= -tol (PSD) and min_eig > tol (PD), with the module default tol.
bool is_psd(const Eigen::Ref<const RealMatrix>& m);
bool is_pd(const Eigen::Ref<const RealMatrix>& m);

double max_real_part(const std::vector<Complex>& eigs);

}  // namespace niforge

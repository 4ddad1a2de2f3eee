#include "niforge/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace niforge {

void require_finite(const Eigen::Ref<const RealMatrix>& m, const char* name)
{
    if (!m.allFinite()) throw Error(std::string(name) + " contains NaN/Inf entries");
}

void require_square(const Eigen::Ref<const RealMatrix>& m, const char* name)
{
    if (m.rows() != m.cols())
        throw DimensionError(std::string(name) + " must be square, got " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
}

std::vector<Complex> eigenvalues(const Eigen::Ref<const RealMatrix>& m)
{
    require_square(m, "eigenvalues input");
    require_finite(m, "eigenvalues input");
    if (m.rows() == 0) return {};

    Eigen::EigenSolver<RealMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericError("eigenvalue iteration did not converge");

    std::vector<Complex> eigs(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
    std::sort(eigs.begin(), eigs.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return eigs;
}

double sym_min_eig(const Eigen::Ref<const RealMatrix>& m)
{
    require_square(m, "sym_min_eig input");
    if (m.rows() == 0) return 0.0;
    RealMatrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("symmetric eigenvalue iteration did not converge");
    return solver.eigenvalues().minCoeff();
}

double herm_min_eig(const Eigen::Ref<const ComplexMatrix>& m)
{
    if (m.rows() != m.cols()) throw DimensionError("herm_min_eig input must be square");
    ComplexMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("Hermitian eigenvalue iteration did not converge");
    return solver.eigenvalues().minCoeff();
}

double definiteness_tol(const Eigen::Ref<const RealMatrix>& m)
{
    return 1e-9 * (1.0 + m.norm());
}

bool is_psd(const Eigen::Ref<const RealMatrix>& m)
{
    return sym_min_eig(m) >= -definiteness_tol(m);
}

bool is_pd(const Eigen::Ref<const RealMatrix>& m)
{
    return sym_min_eig(m) > definiteness_tol(m);
}

double max_real_part(const std::vector<Complex>& eigs)
{
    double max_re = -std::numeric_limits<double>::infinity();
    for (const Complex& e : eigs) max_re = std::max(max_re, e.real());
    return max_re;
}

}  // namespace niforge

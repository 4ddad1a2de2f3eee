#include "niforge/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "niforge/linalg.hpp"
#include "niforge/schur.hpp"
#include "niforge/sweep.hpp"

namespace niforge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void sort_violations(std::vector<Violation>& violations)
{
    std::sort(violations.begin(), violations.end(),
              [](const Violation& a, const Violation& b) { return a.indicator < b.indicator; });
}

void append_grid_violations(NIVerdict& verdict, const std::vector<SweepPoint>& points, double floor)
{
    for (const SweepPoint& pt : points) {
        if (pt.skipped) continue;
        ++verdict.checked_points;
        if (pt.indicator < floor) verdict.violations.push_back({pt.sigma, pt.indicator});
    }
}

struct PoleCluster
{
    Complex center;
    int multiplicity = 0;
};

// Group imaginary-axis eigenvalues by frequency. Conjugate pairs are folded
// onto the Im >= 0 half; realness of the system mirrors the findings.
std::vector<PoleCluster> cluster_axis_poles(const std::vector<Complex>& spectrum, double axis_tol)
{
    double scale = 0.0;
    for (const Complex& p : spectrum) scale = std::max(scale, std::abs(p));
    const double cluster_tol = 1e-6 * (1.0 + scale);

    std::vector<double> axis_freqs;
    for (const Complex& p : spectrum)
        if (std::abs(p.real()) <= axis_tol && p.imag() >= -cluster_tol) axis_freqs.push_back(std::max(p.imag(), 0.0));
    std::sort(axis_freqs.begin(), axis_freqs.end());

    std::vector<PoleCluster> clusters;
    for (double w : axis_freqs) {
        if (!clusters.empty() && std::abs(w - clusters.back().center.imag()) <= cluster_tol) {
            ++clusters.back().multiplicity;
        } else {
            clusters.push_back({Complex(0.0, w), 1});
        }
    }
    return clusters;
}

// Residue of G at a simple eigenvalue of A via the eigenvector expansion
// G(s) = C V (sI - Lambda)^{-1} V^{-1} B + D.
std::optional<ComplexMatrix> residue_at(const StateSpace& sys, Complex pole)
{
    Eigen::EigenSolver<RealMatrix> solver(sys.A, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) return std::nullopt;
    const ComplexMatrix v = solver.eigenvectors();
    Index best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < v.cols(); ++i) {
        const double dist = std::abs(solver.eigenvalues()(i) - pole);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    Eigen::FullPivLU<ComplexMatrix> lu(v);
    if (!lu.isInvertible()) return std::nullopt;
    const ComplexMatrix v_inv = lu.inverse();
    return (sys.C.cast<Complex>() * v.col(best)) * (v_inv.row(best) * sys.B.cast<Complex>());
}

// lim s^2 G(s) for a double origin pole, evaluated at shrinking real s with an
// agreement check (spread <= 1e-4 relative accepts the mean).
struct OriginLimit
{
    bool agreed = false;
    RealMatrix value;
    double spread = 0.0;
};

OriginLimit double_origin_limit(const StateSpace& sys)
{
    const std::vector<double> deltas{1e-4, 1e-5, 1e-6};
    std::vector<RealMatrix> estimates;
    for (double d : deltas) {
        const ComplexMatrix g = detail::transfer_at(sys, Complex(d, 0.0));
        estimates.push_back((d * d * g).real());
    }
    RealMatrix mean = RealMatrix::Zero(estimates[0].rows(), estimates[0].cols());
    for (const RealMatrix& e : estimates) mean += e;
    mean /= static_cast<double>(estimates.size());

    OriginLimit limit;
    limit.value = mean;
    for (const RealMatrix& e : estimates) limit.spread = std::max(limit.spread, (e - mean).norm());
    limit.spread /= 1.0 + mean.norm();
    limit.agreed = limit.spread <= 1e-4;
    return limit;
}

// Shared pole-condition pass for the NI definition (conditions 1, 3, 4).
// Returns true when any Indeterminate trigger fired.
bool check_ni_pole_conditions(const StateSpace& sys, const std::vector<Complex>& spectrum, double axis_tol,
                              NIVerdict& verdict, bool& fails)
{
    bool ambiguous = false;
    for (const Complex& p : spectrum) {
        if (p.real() > 10.0 * axis_tol) {
            verdict.pole_findings.push_back({p, "pole in open right half plane", kNaN});
            fails = true;
        } else if (p.real() > axis_tol) {
            verdict.pole_findings.push_back({p, "pole real part within the axis ambiguity band", kNaN});
            verdict.notes.push_back("pole classification numerically ambiguous near the imaginary axis");
            ambiguous = true;
        }
    }

    for (const PoleCluster& cluster : cluster_axis_poles(spectrum, axis_tol)) {
        const bool at_origin = cluster.center.imag() == 0.0;
        if (at_origin) {
            if (cluster.multiplicity == 1) {
                verdict.pole_findings.push_back({cluster.center, "simple pole at the origin", kNaN});
            } else if (cluster.multiplicity == 2) {
                const OriginLimit limit = double_origin_limit(sys);
                if (!limit.agreed) {
                    verdict.pole_findings.push_back({cluster.center, "double pole at the origin (limit did not settle)", kNaN});
                    verdict.notes.push_back("lim s^2 G(s) estimates disagree (spread " + std::to_string(limit.spread) + ")");
                    ambiguous = true;
                } else {
                    const double min_eig = sym_min_eig(limit.value);
                    verdict.pole_findings.push_back({cluster.center, "double pole at the origin", min_eig});
                    if (min_eig < -1e-4 * (1.0 + limit.value.norm())) fails = true;
                }
            } else {
                verdict.pole_findings.push_back({cluster.center, "origin pole of multiplicity > 2", kNaN});
                fails = true;
            }
        } else {
            if (cluster.multiplicity > 1) {
                verdict.pole_findings.push_back({cluster.center, "repeated imaginary-axis pole", kNaN});
                fails = true;
                continue;
            }
            const auto residue = residue_at(sys, cluster.center);
            if (!residue) {
                verdict.pole_findings.push_back({cluster.center, "simple imaginary-axis pole (defective eigenbasis)", kNaN});
                verdict.notes.push_back("residue computation failed: eigenvector matrix not invertible");
                ambiguous = true;
                continue;
            }
            const ComplexMatrix k_res = Complex(0.0, 1.0) * (*residue);
            const double scale = 1.0 + k_res.norm();
            const double asym = (k_res - k_res.adjoint()).norm();
            const double min_eig = herm_min_eig(k_res);
            verdict.pole_findings.push_back({cluster.center, "simple imaginary-axis pole", min_eig});
            if (asym > 1e-7 * scale || min_eig < -1e-8 * scale) fails = true;
        }
    }
    return ambiguous;
}

void attach_minimality_note(const StateSpace& sys, NIVerdict& verdict)
{
    const MinimalityReport rep = is_minimal(sys);
    if (!rep.minimal)
        verdict.notes.push_back("realization is not minimal (controllability rank " +
                                std::to_string(rep.controllability_rank) + ", observability rank " +
                                std::to_string(rep.observability_rank) + "); pole conditions use eigenvalues of A");
}

RealMatrix solve_spd(const RealMatrix& r, const RealMatrix& rhs)
{
    return Eigen::LLT<RealMatrix>(r).solve(rhs);
}

}  // namespace

const char* verdict_name(Verdict v)
{
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

double ni_indicator(const StateSpace& sys, Complex sigma)
{
    const ComplexMatrix g = freq_response(sys, sigma);
    const ComplexMatrix j_diff = Complex(0.0, 1.0) * (g - g.adjoint());
    return herm_min_eig(j_diff);
}

NIVerdict ni_frequency_check(const StateSpace& sys)
{
    return ni_frequency_check(sys, FrequencyGrid::ni_default());
}

NIVerdict ni_frequency_check(const StateSpace& sys, const FrequencyGrid& grid, double tol_ni)
{
    NIVerdict verdict;
    attach_minimality_note(sys, verdict);

    const std::vector<Complex> spectrum = eigenvalues(sys.A);
    const double axis_tol = default_axis_tolerance(sys.A);
    bool fails = false;
    const bool ambiguous = check_ni_pole_conditions(sys, spectrum, axis_tol, verdict, fails);

    std::vector<Complex> sigmas;
    sigmas.reserve(grid.omegas.size());
    for (double w : grid.omegas)
        if (w >= 0.0) sigmas.emplace_back(0.0, w);
    append_grid_violations(verdict, sweep_indicator_parallel(sys, sigmas), -tol_ni);
    sort_violations(verdict.violations);

    if (!verdict.violations.empty() || fails)
        verdict.verdict = Verdict::Fails;
    else if (ambiguous)
        verdict.verdict = Verdict::Indeterminate;
    else
        verdict.verdict = Verdict::Holds;
    return verdict;
}

NIVerdict sni_frequency_check(const StateSpace& sys)
{
    return sni_frequency_check(sys, FrequencyGrid::sni_default());
}

NIVerdict sni_frequency_check(const StateSpace& sys, const FrequencyGrid& grid, double tol_sni)
{
    NIVerdict verdict;
    attach_minimality_note(sys, verdict);

    const double axis_tol = default_axis_tolerance(sys.A);
    bool fails = false;
    for (const Complex& p : eigenvalues(sys.A)) {
        if (p.real() >= -axis_tol) {
            verdict.pole_findings.push_back({p, "pole in the closed right half plane", kNaN});
            fails = true;
        }
    }

    std::vector<Complex> sigmas;
    for (double w : grid.omegas)
        if (w > 0.0) sigmas.emplace_back(0.0, w);
    const std::vector<SweepPoint> points = sweep_indicator_parallel(sys, sigmas);

    bool ambiguous = false;
    for (const SweepPoint& pt : points) {
        if (pt.skipped) continue;
        ++verdict.checked_points;
        if (pt.indicator < -kDefaultNITol) {
            verdict.violations.push_back({pt.sigma, pt.indicator});
        } else if (pt.indicator <= tol_sni) {
            verdict.violations.push_back({pt.sigma, pt.indicator});
            ambiguous = true;
        }
    }
    sort_violations(verdict.violations);

    if (fails || (!verdict.violations.empty() && !ambiguous))
        verdict.verdict = Verdict::Fails;
    else if (ambiguous)
        verdict.verdict = Verdict::Indeterminate;
    else
        verdict.verdict = Verdict::Holds;
    if (ambiguous) verdict.notes.push_back("grid indicator within the strictness floor; SNI margin inconclusive");
    return verdict;
}

NIVerdict orthant_ni_check(const StateSpace& sys)
{
    return orthant_ni_check(sys, FrequencyGrid::ni_default(), default_epsilon_grid());
}

NIVerdict orthant_ni_check(const StateSpace& sys, const FrequencyGrid& omega_grid,
                           const std::vector<double>& eps_grid, double tol_ni)
{
    if (!sys.siso())
        throw ScopeError("orthant check is SISO-only; the orthant characterization does not generalize to "
                         "non-symmetric MIMO systems");

    NIVerdict verdict;
    std::vector<Complex> sigmas;
    sigmas.reserve(omega_grid.omegas.size() * eps_grid.size());
    for (double eps : eps_grid)
        for (double w : omega_grid.omegas)
            if (w >= 0.0) sigmas.emplace_back(eps, w);

    append_grid_violations(verdict, sweep_indicator_parallel(sys, sigmas), -tol_ni);
    sort_violations(verdict.violations);
    verdict.verdict = verdict.violations.empty() ? Verdict::Holds : Verdict::Fails;
    verdict.notes.push_back("sampled necessary check of the orthant condition");
    return verdict;
}

RiccatiData build_riccati_data(const StateSpace& sys)
{
    const RealMatrix r = sys.C * sys.B + (sys.C * sys.B).transpose();
    if (!(sym_min_eig(r) > definiteness_tol(r)))
        throw AssumptionError("CB + B'C' > 0", "smallest eigenvalue is " + std::to_string(sym_min_eig(r)));
    if ((sys.D - sys.D.transpose()).norm() > 1e-9 * (1.0 + sys.D.norm()))
        throw AssumptionError("D = D'", "feedthrough is not symmetric");

    RiccatiData data;
    data.A = sys.A;
    data.B = sys.B;
    data.C = sys.C;
    data.R = r;
    const RealMatrix ca = sys.C * sys.A;
    data.A0 = sys.A - sys.B * solve_spd(r, ca);
    RealMatrix q = ca.transpose() * solve_spd(r, ca);
    data.Q = 0.5 * (q + q.transpose());
    return data;
}

double riccati_residual(const RiccatiData& data, const Eigen::Ref<const RealMatrix>& p)
{
    const Index n = data.A0.rows();
    if (p.rows() != n || p.cols() != n)
        throw DimensionError("P must be " + std::to_string(n) + "x" + std::to_string(n));
    const RealMatrix bp = data.B.transpose() * p;
    const RealMatrix residual = p * data.A0 + data.A0.transpose() * p + bp.transpose() * solve_spd(data.R, bp) + data.Q;
    const double denom = 1.0 + p.norm();
    return residual.norm() / (denom * denom);
}

RealMatrix hamiltonian_of(const RiccatiData& data)
{
    const Index n = data.A0.rows();
    RealMatrix h(2 * n, 2 * n);
    h.topLeftCorner(n, n) = data.A0;
    h.topRightCorner(n, n) = data.B * solve_spd(data.R, data.B.transpose());
    h.bottomLeftCorner(n, n) = -data.Q;
    h.bottomRightCorner(n, n) = -data.A0.transpose();
    return h;
}

SingularityWitness hamiltonian_singularity_check(const RiccatiData& data)
{
    const Index n = data.A.rows();
    const Index m = data.B.cols();
    Eigen::FullPivLU<RealMatrix> lu_a(data.A);
    if (!lu_a.isInvertible()) throw AssumptionError("A nonsingular", "the construction requires invertible A");

    // V1 = [B; -C^T]; w = V1 beta with beta picked so w != 0.
    RealMatrix v1(2 * n, m);
    v1.topRows(n) = data.B;
    v1.bottomRows(n) = -data.C.transpose();
    RealVector w = RealVector::Zero(2 * n);
    for (Index k = 0; k < m; ++k) {
        if (v1.col(k).norm() > 1e-12 * (1.0 + v1.norm())) {
            w = v1.col(k);
            break;
        }
    }
    if (w.norm() == 0.0) throw NumericError("V1 has no nonzero column; cannot construct witness");

    SingularityWitness witness;
    witness.w = w;
    witness.h_null = RealVector(2 * n);
    witness.h_null.head(n) = lu_a.solve(w.head(n));  // x = A^{-1} z
    witness.h_null.tail(n) = w.tail(n);

    const RealMatrix h = hamiltonian_of(data);
    Eigen::JacobiSVD<RealMatrix> svd(h);
    witness.h_min_sv = svd.singularValues().minCoeff();
    witness.h_norm = svd.singularValues().maxCoeff();
    witness.is_singular = witness.h_min_sv <= 1e-8 * witness.h_norm;
    return witness;
}

namespace {

RiccatiCheckResult finish_riccati_verdict(const RiccatiData& data, const RealMatrix& p, NIVerdict verdict)
{
    RiccatiCheckResult result;
    result.P = 0.5 * (p + p.transpose());
    result.residual = riccati_residual(data, result.P);

    const RealMatrix closed_loop =
        data.A0 + data.B * solve_spd(data.R, data.B.transpose() * result.P);
    result.closed_loop_eigs = eigenvalues(closed_loop);

    const double cl_tol = default_axis_tolerance(closed_loop);
    const bool pd = sym_min_eig(result.P) > definiteness_tol(result.P);
    const bool residual_ok = result.residual <= 1e-8;
    const bool spectrum_ok = max_real_part(result.closed_loop_eigs) <= cl_tol;

    if (!residual_ok) {
        verdict.verdict = Verdict::Indeterminate;
        verdict.notes.push_back("Riccati residual " + std::to_string(result.residual) +
                                " exceeds 1e-8; the singular-Hamiltonian solve did not certify");
    } else if (pd && spectrum_ok) {
        verdict.verdict = Verdict::Holds;
    } else {
        verdict.verdict = Verdict::Fails;
        if (!pd) verdict.notes.push_back("ARE solution is not positive definite");
        if (!spectrum_ok)
            verdict.notes.push_back("closed-loop matrix A0 + B R^{-1} B' P has eigenvalues right of the axis");
    }
    result.verdict = std::move(verdict);
    return result;
}

}  // namespace

namespace {

// Definition-2 condition 1: no eigenvalue of A with Re >= -tau (axis or RHP).
bool fails_sni_pole_condition(const StateSpace& sys, NIVerdict& verdict)
{
    const double axis_tol = default_axis_tolerance(sys.A);
    bool fails = false;
    for (const Complex& p : eigenvalues(sys.A)) {
        if (p.real() >= -axis_tol) {
            verdict.pole_findings.push_back({p, "eigenvalue of A in the closed right half plane", kNaN});
            fails = true;
        }
    }
    if (fails) verdict.verdict = Verdict::Fails;
    return fails;
}

}  // namespace

RiccatiCheckResult sni_riccati_check(const StateSpace& sys, const Eigen::Ref<const RealMatrix>& candidate_p)
{
    const RiccatiData data = build_riccati_data(sys);
    NIVerdict verdict;
    attach_minimality_note(sys, verdict);

    if (fails_sni_pole_condition(sys, verdict)) {
        RiccatiCheckResult result;
        result.verdict = std::move(verdict);
        result.P = RealMatrix::Zero(sys.order(), sys.order());
        return result;
    }
    return finish_riccati_verdict(data, candidate_p, std::move(verdict));
}

RiccatiCheckResult sni_riccati_check(const StateSpace& sys)
{
    const RiccatiData data = build_riccati_data(sys);
    NIVerdict verdict;
    attach_minimality_note(sys, verdict);

    if (fails_sni_pole_condition(sys, verdict)) {
        RiccatiCheckResult result;
        result.verdict = std::move(verdict);
        result.P = RealMatrix::Zero(sys.order(), sys.order());
        return result;
    }

    // Invariant-subspace deflation. The NI Hamiltonian is always singular, so
    // strictly stable eigenvectors are padded with an SVD null-space basis
    // (exact eigenvectors of the zero cluster, robust against the O(eps^{1/4})
    // rings that a Jordan zero produces in eigensolver output).
    const Index n = sys.order();
    const RealMatrix h = hamiltonian_of(data);
    const double h_tol = default_axis_tolerance(h);

    Eigen::EigenSolver<RealMatrix> solver(h, /*computeEigenvectors=*/true);
    std::vector<RealVector> basis;
    if (solver.info() == Eigen::Success) {
        const ComplexVector eigs = solver.eigenvalues();
        std::vector<Index> order(static_cast<std::size_t>(2 * n));
        std::iota(order.begin(), order.end(), Index(0));
        std::sort(order.begin(), order.end(), [&](Index a, Index b) { return eigs(a).real() < eigs(b).real(); });
        for (Index idx : order) {
            if (static_cast<Index>(basis.size()) >= n) break;
            if (eigs(idx).real() >= -h_tol) continue;
            const ComplexVector v = solver.eigenvectors().col(idx);
            if (std::abs(eigs(idx).imag()) <= h_tol) {
                basis.push_back(v.real());
            } else if (eigs(idx).imag() > 0.0) {  // one representative per conjugate pair
                basis.push_back(v.real());
                if (static_cast<Index>(basis.size()) < n) basis.push_back(v.imag());
            }
        }
    }

    if (static_cast<Index>(basis.size()) < n) {
        Eigen::JacobiSVD<RealMatrix> svd(h, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        for (Index i = 2 * n - 1; i >= 0 && static_cast<Index>(basis.size()) < n; --i) {
            if (sv(i) <= 1e-7 * sv(0)) basis.push_back(svd.matrixV().col(i));
        }
    }

    if (static_cast<Index>(basis.size()) < n) {
        verdict.verdict = Verdict::Indeterminate;
        verdict.notes.push_back("deflation found only " + std::to_string(basis.size()) + " of " + std::to_string(n) +
                                " stable/zero-cluster directions");
        RiccatiCheckResult result;
        result.verdict = std::move(verdict);
        result.P = RealMatrix::Zero(n, n);
        return result;
    }

    RealMatrix span(2 * n, n);
    for (Index j = 0; j < n; ++j) span.col(j) = basis[static_cast<std::size_t>(j)];
    const RealMatrix x = span.topRows(n);
    const RealMatrix y = span.bottomRows(n);
    Eigen::FullPivLU<RealMatrix> lu_x(x);
    if (!lu_x.isInvertible()) {
        verdict.verdict = Verdict::Indeterminate;
        verdict.notes.push_back("deflation basis has singular X block; P = Y X^{-1} is not defined");
        RiccatiCheckResult result;
        result.verdict = std::move(verdict);
        result.P = RealMatrix::Zero(n, n);
        return result;
    }
    const RealMatrix p = y * lu_x.inverse();
    return finish_riccati_verdict(data, p, std::move(verdict));
}

}  // namespace niforge

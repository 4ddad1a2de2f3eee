#include "niforge/synthesis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "niforge/linalg.hpp"
#include "niforge/lyapunov.hpp"

namespace niforge {

RealMatrix SchurData::a_f() const
{
    const Index n = order();
    const Index k = stable_dim;
    RealMatrix af = RealMatrix::Zero(n, n);
    af.topLeftCorner(k, k) = A11;
    af.topRightCorner(k, n - k) = A12;
    af.bottomRightCorner(n - k, n - k) = A22;
    return af;
}

RealMatrix SchurData::b_f() const
{
    RealMatrix bf(order(), 1);
    bf.topRows(stable_dim) = Bf1;
    bf.bottomRows(order() - stable_dim) = Bf2;
    return bf;
}

RealMatrix SchurData::b1_tilde() const
{
    RealMatrix b1t(order(), 1);
    b1t.topRows(stable_dim) = B11;
    b1t.bottomRows(order() - stable_dim) = B22;
    return b1t;
}

RealMatrix design_matrix(const UncertainPlant& plant, double epsilon)
{
    if (epsilon < 0.0) throw Error("stability degree epsilon must be nonnegative");
    const Index n = plant.order();
    const double c = plant.coupling();
    const RealMatrix projector = RealMatrix::Identity(n, n) - (plant.B2 / c) * plant.C1;
    return projector * (plant.A + epsilon * RealMatrix::Identity(n, n));
}

SchurData schur_pipeline(const UncertainPlant& plant, double epsilon)
{
    const RealMatrix m = design_matrix(plant, epsilon);
    const SchurSplit split = ordered_real_schur(m);

    const double c = plant.coupling();
    const double r = plant.r_scalar();
    const RealMatrix bf = split.U.transpose() * (plant.B2 / c - plant.B1 / r);
    const RealMatrix b1t = split.U.transpose() * plant.B1;

    SchurData data;
    data.U = split.U;
    data.A11 = split.A11;
    data.A12 = split.A12;
    data.A22 = split.A22;
    data.Bf1 = bf.topRows(split.stable_dim);
    data.Bf2 = bf.bottomRows(m.rows() - split.stable_dim);
    data.B11 = b1t.topRows(split.stable_dim);
    data.B22 = b1t.bottomRows(m.rows() - split.stable_dim);
    data.R = r;
    data.stable_dim = split.stable_dim;
    data.epsilon = epsilon;
    return data;
}

std::pair<RealMatrix, RealMatrix> solve_TS(const SchurData& sd)
{
    const Index q = sd.order() - sd.stable_dim;
    if (q == 0) return {RealMatrix(0, 0), RealMatrix(0, 0)};  // no anti-stable part

    // -A22 T - T A22' + Bf2 R Bf2' = 0 in stable-Lyapunov form with F = -A22.
    const RealMatrix f = -sd.A22;
    const RealMatrix qt = sd.Bf2 * sd.R * sd.Bf2.transpose();
    const RealMatrix qs = sd.B22 * (1.0 / sd.R) * sd.B22.transpose();
    return {solve_stable_lyapunov(f, qt), solve_stable_lyapunov(f, qs)};
}

namespace {

RealMatrix gain_from_p(const UncertainPlant& plant, const RealMatrix& p, double epsilon)
{
    const double c = plant.coupling();
    const double r = plant.r_scalar();
    // K = (C1 B2)^{-1} (B1' P - C1 A - eps C1 - R (B2' C1')^{-1} B2' P); the
    // inverses are scalar in this channel scope.
    return (1.0 / c) *
           (plant.B1.transpose() * p - plant.C1 * plant.A - epsilon * plant.C1 - (r / c) * plant.B2.transpose() * p);
}

double pf_are_residual(const SchurData& sd, const RealMatrix& pf)
{
    const RealMatrix af = sd.a_f();
    const RealMatrix bf = sd.b_f();
    const RealMatrix b1t = sd.b1_tilde();
    const RealMatrix residual = pf * af + af.transpose() * pf - pf * bf * sd.R * bf.transpose() * pf +
                                pf * b1t * (1.0 / sd.R) * b1t.transpose() * pf;
    const double denom = 1.0 + pf.norm();
    return residual.norm() / (denom * denom);
}

}  // namespace

SynthesisResult synthesize(const UncertainPlant& plant, double epsilon)
{
    SynthesisResult result;
    result.epsilon = epsilon;
    result.schur = schur_pipeline(plant, epsilon);
    const SchurData& sd = result.schur;
    const Index n = sd.order();
    const Index k = sd.stable_dim;

    auto [t, s] = solve_TS(sd);
    result.T = t;
    result.S = s;

    if (k == n) {
        // No anti-stable block: P_f vanishes and the gain reduces to output
        // decoupling of the shifted plant.
        result.feasible = true;
        result.feasibility_margin = 0.0;
        result.P = RealMatrix::Zero(n, n);
        result.Pf = RealMatrix::Zero(n, n);
        result.K = gain_from_p(plant, result.P, epsilon);
        result.pf_are_residual = 0.0;
        return result;
    }

    const RealMatrix tms = t - s;
    result.feasibility_margin = sym_min_eig(tms);
    const double feas_tol = 1e-9 * (1.0 + t.norm());
    if (!(result.feasibility_margin > feas_tol)) {
        result.feasible = false;
        return result;
    }

    result.feasible = true;
    RealMatrix pf = RealMatrix::Zero(n, n);
    pf.bottomRightCorner(n - k, n - k) = tms.inverse();
    result.Pf = 0.5 * (pf + pf.transpose());
    RealMatrix p = sd.U * result.Pf * sd.U.transpose();
    result.P = 0.5 * (p + p.transpose());
    result.K = gain_from_p(plant, result.P, epsilon);
    result.pf_are_residual = pf_are_residual(sd, result.Pf);
    return result;
}

VerificationReport verify_synthesis(const UncertainPlant& plant, const SynthesisResult& result)
{
    if (!result.feasible) throw Error("verify_synthesis requires a feasible synthesis result");

    VerificationReport report;
    const double eps = result.epsilon;
    const Index n = plant.order();

    const StateSpace actual = close_loop(plant, result.K);
    report.closed_loop_poles = poles(actual);
    report.rightmost_real = max_real_part(report.closed_loop_poles);
    report.expected_rightmost = -eps;

    const double pole_tol = 5e-2 * (1.0 + eps);
    report.rightmost_matches = std::abs(report.rightmost_real + eps) <= pole_tol;
    double second = -std::numeric_limits<double>::infinity();
    for (const Complex& p : report.closed_loop_poles)
        if (p.real() < report.rightmost_real - pole_tol) second = std::max(second, p.real());
    std::size_t rightmost_count = 0;
    for (const Complex& p : report.closed_loop_poles)
        if (p.real() >= report.rightmost_real - pole_tol) ++rightmost_count;
    report.rightmost_is_strict = rightmost_count == 1;

    // Eq.-(18) certificate: P solves the Lemma-1 ARE of the perturbed closed
    // loop (A_cl, B1, C1) with A_cl = A + eps I + B2 K.
    const RealMatrix a_cl = plant.A + eps * RealMatrix::Identity(n, n) + plant.B2 * result.K;
    const StateSpace perturbed(a_cl, plant.B1, plant.C1, RealMatrix::Zero(1, 1));
    report.eq18_residual = riccati_residual(build_riccati_data(perturbed), result.P);
    report.eq18_ok = report.eq18_residual <= 1e-8;

    report.orthant_verdict = orthant_ni_check(actual).verdict;

    std::vector<BodeSample> bode = bode_sample_parallel(actual, FrequencyGrid::ni_default().omegas);
    unwrap_phase(bode);
    report.bode = std::move(bode);

    if (!report.rightmost_matches)
        report.failures.push_back("rightmost closed-loop pole " + std::to_string(report.rightmost_real) +
                                  " does not sit at -epsilon = " + std::to_string(-eps));
    if (!report.rightmost_is_strict)
        report.failures.push_back("the -epsilon pole is not strictly rightmost");
    if (!report.eq18_ok)
        report.failures.push_back("perturbed closed-loop ARE residual " + std::to_string(report.eq18_residual) +
                                  " exceeds 1e-8");
    if (report.orthant_verdict != Verdict::Holds)
        report.failures.push_back(std::string("orthant NI check on the closed loop: ") +
                                  verdict_name(report.orthant_verdict));
    report.passed = report.failures.empty();
    return report;
}

}  // namespace niforge

#pragma once

#include <utility>
#include <vector>

#include "niforge/analysis.hpp"
#include "niforge/schur.hpp"
#include "niforge/state_space.hpp"
#include "niforge/sweep.hpp"
#include "niforge/types.hpp"

namespace niforge {

// Ordered Schur artifacts of the shifted design matrix, with the conformal
// partitions of B_f = U^T (B2 (C1 B2)^{-1} - B1 R^{-1}) and B1~ = U^T B1.
struct SchurData
{
    RealMatrix U;
    RealMatrix A11;
    RealMatrix A12;
    RealMatrix A22;
    RealMatrix Bf1;
    RealMatrix Bf2;
    RealMatrix B11;
    RealMatrix B22;
    double R = 0.0;
    Index stable_dim = 0;
    double epsilon = 0.0;

    Index order() const { return U.rows(); }
    RealMatrix a_f() const;        // [A11 A12; 0 A22]
    RealMatrix b_f() const;        // [Bf1; Bf2]
    RealMatrix b1_tilde() const;   // [B11; B22]
};

struct SynthesisResult
{
    RealMatrix K;   // 1 x n, empty when infeasible
    RealMatrix P;   // n x n PSD
    RealMatrix Pf;  // blockdiag(0, (T-S)^{-1}) in Schur coordinates
    RealMatrix T;
    RealMatrix S;
    double epsilon = 0.0;
    bool feasible = false;
    double feasibility_margin = 0.0;  // sym_min_eig(T - S)
    double pf_are_residual = 0.0;
    SchurData schur;
};

struct VerificationReport
{
    std::vector<Complex> closed_loop_poles;
    double rightmost_real = 0.0;
    double expected_rightmost = 0.0;  // -epsilon
    bool rightmost_matches = false;
    bool rightmost_is_strict = false;
    double eq18_residual = 0.0;
    bool eq18_ok = false;
    Verdict orthant_verdict = Verdict::Indeterminate;
    std::vector<BodeSample> bode;
    bool passed = false;
    std::vector<std::string> failures;
};

// M = (I - B2 (C1 B2)^{-1} C1)(A + eps I); singular by construction.
RealMatrix design_matrix(const UncertainPlant& plant, double epsilon);

SchurData schur_pipeline(const UncertainPlant& plant, double epsilon);

// T, S >= 0 solving -A22 T - T A22^T + Bf2 R Bf2^T = 0 and
// -A22 S - S A22^T + B22 R^{-1} B22^T = 0. Empty pair when stable_dim = n.
std::pair<RealMatrix, RealMatrix> solve_TS(const SchurData& sd);

SynthesisResult synthesize(const UncertainPlant& plant, double epsilon);

VerificationReport verify_synthesis(const UncertainPlant& plant, const SynthesisResult& result);

}  // namespace niforge

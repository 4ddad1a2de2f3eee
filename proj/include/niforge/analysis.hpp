#pragma once

#include <optional>
#include <string>
#include <vector>

#include "niforge/grids.hpp"
#include "niforge/state_space.hpp"
#include "niforge/types.hpp"

namespace niforge {

enum class Verdict { Holds, Fails, Indeterminate };

const char* verdict_name(Verdict v);

struct Violation
{
    Complex sigma;
    double indicator;
};

struct PoleFinding
{
    Complex pole;
    std::string classification;
    double residue_min_eig;  // NaN when no residue condition applies
};

struct NIVerdict
{
    Verdict verdict = Verdict::Indeterminate;
    std::vector<Violation> violations;  // sorted most negative indicator first
    std::size_t checked_points = 0;
    std::vector<PoleFinding> pole_findings;
    std::vector<std::string> notes;
};

// Lemma data for P A0 + A0^T P + P B R^{-1} B^T P + Q = 0 with
// A0 = A - B R^{-1} C A,  R = C B + B^T C^T,  Q = A^T C^T R^{-1} C A.
struct RiccatiData
{
    RealMatrix A;
    RealMatrix A0;
    RealMatrix R;
    RealMatrix Q;
    RealMatrix B;
    RealMatrix C;
};

inline constexpr double kDefaultNITol = 1e-8;
inline constexpr double kDefaultSNITol = 1e-10;

// Smallest eigenvalue of j(G(sigma) - G(sigma)^*); for SISO this is -2 Im G(sigma).
double ni_indicator(const StateSpace& sys, Complex sigma);

NIVerdict ni_frequency_check(const StateSpace& sys);
NIVerdict ni_frequency_check(const StateSpace& sys, const FrequencyGrid& grid, double tol_ni = kDefaultNITol);

NIVerdict sni_frequency_check(const StateSpace& sys);
NIVerdict sni_frequency_check(const StateSpace& sys, const FrequencyGrid& grid, double tol_sni = kDefaultSNITol);

// Sampled check of the orthant condition j(G(eps + j w) - G(eps + j w)^*) >= 0
// over the grid product. SISO only. Negative eps values are accepted for
// diagnostic sweeps outside the orthant.
NIVerdict orthant_ni_check(const StateSpace& sys, const FrequencyGrid& omega_grid,
                           const std::vector<double>& eps_grid, double tol_ni = kDefaultNITol);
NIVerdict orthant_ni_check(const StateSpace& sys);

RiccatiData build_riccati_data(const StateSpace& sys);

// Frobenius norm of P A0 + A0^T P + P B R^{-1} B^T P + Q, normalized by (1 + ||P||_F)^2.
double riccati_residual(const RiccatiData& data, const Eigen::Ref<const RealMatrix>& p);

// H = [A - B R^{-1} C A,      B R^{-1} B^T      ]
//     [-A^T C^T R^{-1} C A,  -A^T + A^T C^T R^{-1} B^T]
RealMatrix hamiltonian_of(const RiccatiData& data);

struct SingularityWitness
{
    bool is_singular = false;
    RealVector w;       // V1 * beta with V1 = [B; -C^T], in (z, y) coordinates
    RealVector h_null;  // the corresponding H null vector (x, y) with x = A^{-1} z
    double h_min_sv = 0.0;
    double h_norm = 0.0;
};

SingularityWitness hamiltonian_singularity_check(const RiccatiData& data);

struct RiccatiCheckResult
{
    NIVerdict verdict;
    RealMatrix P;
    double residual = 0.0;
    std::vector<Complex> closed_loop_eigs;  // of A0 + B R^{-1} B^T P
};

// Lemma-2 style SNI test. Without a candidate P the solve deflates the
// Hamiltonian invariant subspace (strictly stable eigenvectors padded with an
// SVD null-space basis -- the NI Hamiltonian is always singular).
RiccatiCheckResult sni_riccati_check(const StateSpace& sys);
RiccatiCheckResult sni_riccati_check(const StateSpace& sys, const Eigen::Ref<const RealMatrix>& candidate_p);

}  // namespace niforge

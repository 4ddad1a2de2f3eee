#pragma once

#include <vector>

#include "niforge/state_space.hpp"
#include "niforge/types.hpp"

namespace niforge {

// One evaluation of the NI indicator min eig j(G(sigma) - G(sigma)^*).
// Points too close to a pole of A are skipped, not evaluated.
struct SweepPoint
{
    Complex sigma;
    double indicator = 0.0;
    bool skipped = false;
};

struct BodeSample
{
    double omega = 0.0;
    double mag_db = 0.0;
    double phase_deg = 0.0;  // raw from the kernel; unwrap_phase makes it continuous
    bool skipped = false;
};

// Grid points with distance to the spectrum below 1e-3 * (1 + |sigma|) are
// skipped: the resolvent conditioning there would swamp tol_ni.
bool near_pole(Complex sigma, const std::vector<Complex>& spectrum);

// Serial reference kernel and the OpenMP kernel. Both write per-point results
// into a preallocated vector, so they produce identical output.
std::vector<SweepPoint> sweep_indicator_serial(const StateSpace& sys, const std::vector<Complex>& sigmas);
std::vector<SweepPoint> sweep_indicator_parallel(const StateSpace& sys, const std::vector<Complex>& sigmas);

std::vector<BodeSample> bode_sample_serial(const StateSpace& sys, const std::vector<double>& omegas);
std::vector<BodeSample> bode_sample_parallel(const StateSpace& sys, const std::vector<double>& omegas);

// Accumulating unwrap starting from the omega-min sample; skipped rows are
// passed over.
void unwrap_phase(std::vector<BodeSample>& samples);

}  // namespace niforge

#include "niforge/sweep.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

#include "niforge/linalg.hpp"

namespace niforge {

namespace {

double indicator_at(const StateSpace& sys, Complex sigma)
{
    const ComplexMatrix g = detail::transfer_at(sys, sigma);
    const ComplexMatrix j_diff = Complex(0.0, 1.0) * (g - g.adjoint());
    return herm_min_eig(j_diff);
}

bool near_pole_of(Complex sigma, const std::vector<Complex>& spectrum)
{
    const double margin = 1e-3 * (1.0 + std::abs(sigma));
    for (const Complex& pole : spectrum)
        if (std::abs(sigma - pole) < margin) return true;
    return false;
}

BodeSample bode_at(const StateSpace& sys, double omega, const std::vector<Complex>& spectrum)
{
    BodeSample sample;
    sample.omega = omega;
    const Complex s(0.0, omega);
    if (near_pole_of(s, spectrum)) {
        sample.skipped = true;
        sample.mag_db = std::numeric_limits<double>::quiet_NaN();
        sample.phase_deg = std::numeric_limits<double>::quiet_NaN();
        return sample;
    }
    const Complex g = detail::transfer_at(sys, s)(0, 0);
    sample.mag_db = 20.0 * std::log10(std::abs(g));
    sample.phase_deg = std::atan2(g.imag(), g.real()) * 180.0 / M_PI;
    return sample;
}

}  // namespace

bool near_pole(Complex sigma, const std::vector<Complex>& spectrum)
{
    return near_pole_of(sigma, spectrum);
}

std::vector<SweepPoint> sweep_indicator_serial(const StateSpace& sys, const std::vector<Complex>& sigmas)
{
    const std::vector<Complex> spectrum = eigenvalues(sys.A);
    std::vector<SweepPoint> out(sigmas.size());
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        out[i].sigma = sigmas[i];
        if (near_pole_of(sigmas[i], spectrum)) {
            out[i].skipped = true;
            out[i].indicator = std::numeric_limits<double>::quiet_NaN();
        } else {
            out[i].indicator = indicator_at(sys, sigmas[i]);
        }
    }
    return out;
}

std::vector<SweepPoint> sweep_indicator_parallel(const StateSpace& sys, const std::vector<Complex>& sigmas)
{
    const std::vector<Complex> spectrum = eigenvalues(sys.A);
    std::vector<SweepPoint> out(sigmas.size());
    const auto count = static_cast<std::ptrdiff_t>(sigmas.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        out[i].sigma = sigmas[i];
        if (near_pole_of(sigmas[i], spectrum)) {
            out[i].skipped = true;
            out[i].indicator = std::numeric_limits<double>::quiet_NaN();
        } else {
            out[i].indicator = indicator_at(sys, sigmas[i]);
        }
    }
    return out;
}

std::vector<BodeSample> bode_sample_serial(const StateSpace& sys, const std::vector<double>& omegas)
{
    if (!sys.siso()) throw ScopeError("bode sampling requires a SISO system");
    const std::vector<Complex> spectrum = eigenvalues(sys.A);
    std::vector<BodeSample> out(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) out[i] = bode_at(sys, omegas[i], spectrum);
    return out;
}

std::vector<BodeSample> bode_sample_parallel(const StateSpace& sys, const std::vector<double>& omegas)
{
    if (!sys.siso()) throw ScopeError("bode sampling requires a SISO system");
    const std::vector<Complex> spectrum = eigenvalues(sys.A);
    std::vector<BodeSample> out(omegas.size());
    const auto count = static_cast<std::ptrdiff_t>(omegas.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = bode_at(sys, omegas[i], spectrum);
    return out;
}

void unwrap_phase(std::vector<BodeSample>& samples)
{
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (BodeSample& sample : samples) {
        if (sample.skipped) continue;
        if (std::isnan(previous)) {
            previous = sample.phase_deg;
            continue;
        }
        while (sample.phase_deg - previous > 180.0) sample.phase_deg -= 360.0;
        while (sample.phase_deg - previous < -180.0) sample.phase_deg += 360.0;
        previous = sample.phase_deg;
    }
}

}  // namespace niforge

#pragma once

#include <vector>

#include "niforge/types.hpp"

namespace niforge {

struct FrequencyGrid
{
    std::vector<double> omegas;

    // Log-spaced [omega_min, omega_max] with `points` samples, optionally with
    // omega = 0 prepended.
    static FrequencyGrid log_space(double omega_min, double omega_max, int points, bool include_zero);

    // Module default: 1e-3 ... 1e3, 400 points, plus omega = 0.
    static FrequencyGrid ni_default();

    // Same band without the zero sample (strict checks want omega > 0).
    static FrequencyGrid sni_default();
};

// Default synthesis-verification shift grid {0, 0.01, 0.1, 0.5, 1, 2, 5, 10}.
std::vector<double> default_epsilon_grid();

}  // namespace niforge

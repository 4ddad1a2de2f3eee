#include "niforge/grids.hpp"

#include <cmath>

namespace niforge {

FrequencyGrid FrequencyGrid::log_space(double omega_min, double omega_max, int points, bool include_zero)
{
    if (!(omega_min > 0.0) || !(omega_max > omega_min)) throw Error("frequency band must satisfy 0 < min < max");
    if (points < 2) throw Error("frequency grid needs at least 2 points");

    FrequencyGrid grid;
    grid.omegas.reserve(static_cast<std::size_t>(points) + (include_zero ? 1 : 0));
    if (include_zero) grid.omegas.push_back(0.0);
    const double lmin = std::log10(omega_min);
    const double lmax = std::log10(omega_max);
    for (int i = 0; i < points; ++i)
        grid.omegas.push_back(std::pow(10.0, lmin + (lmax - lmin) * i / (points - 1)));
    return grid;
}

FrequencyGrid FrequencyGrid::ni_default()
{
    return log_space(1e-3, 1e3, 400, /*include_zero=*/true);
}

FrequencyGrid FrequencyGrid::sni_default()
{
    return log_space(1e-3, 1e3, 400, /*include_zero=*/false);
}

std::vector<double> default_epsilon_grid()
{
    return {0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
}

}  // namespace niforge

#pragma once

// Named test signals on a spatial grid. All generators are deterministic;
// random ones take an explicit seed.

#include "coorbit/grid.hpp"

namespace coorbit {

// exp(-d(x,c)^2 / (2 sigma^2)), peak 1, torus distance
GridSignal gaussian(const SpatialGrid& grid, double sigma, double center = 0.0);
// gaussian envelope times e^{i omega0 x}
GridSignal modulated_gaussian(const SpatialGrid& grid, double sigma, double omega0,
                              double center = 0.0);
// C-infinity bump exp(1 - 1/(1-u^2)) on |u| < 1, u = d(x,c)/width
GridSignal bump(const SpatialGrid& grid, double width, double center = 0.0);
// random smooth band-limited signal: spectrum supported on 0 < |xi| <= xi_max
// with gaussian taper, unit L2 norm
GridSignal random_bandlimited(const SpatialGrid& grid, std::uint64_t seed, double xi_max);

// battery of `count` signals band-limited within the first `octaves` dyadic
// bands: a few canonical shapes then random band-limited fields
std::vector<GridSignal> signal_battery(const SpatialGrid& grid, int octaves, int count,
                                       std::uint64_t seed);

// band limit used by signal_battery for the given grid and octave budget
double battery_band_limit(const SpatialGrid& grid, int octaves);

}  // namespace coorbit

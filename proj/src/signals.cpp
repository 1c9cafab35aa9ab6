#include "coorbit/signals.hpp"

namespace coorbit {

GridSignal gaussian(const SpatialGrid& grid, double sigma, double center) {
  require(sigma > 0.0, "gaussian: sigma must be positive");
  GridSignal f(grid);
  for (int i = 0; i < grid.n; ++i) {
    const double d = grid.torus_dist(grid.node(i) - center);
    f[i] = std::exp(-0.5 * d * d / (sigma * sigma));
  }
  return f;
}

GridSignal modulated_gaussian(const SpatialGrid& grid, double sigma, double omega0,
                              double center) {
  GridSignal f = gaussian(grid, sigma, center);
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.node(i);
    f[i] *= std::exp(cplx(0.0, omega0 * (x - center)));
  }
  return f;
}

GridSignal bump(const SpatialGrid& grid, double width, double center) {
  require(width > 0.0, "bump: width must be positive");
  GridSignal f(grid);
  for (int i = 0; i < grid.n; ++i) {
    const double u = grid.torus_dist(grid.node(i) - center) / width;
    if (u < 1.0) f[i] = std::exp(1.0 - 1.0 / (1.0 - u * u));
  }
  return f;
}

GridSignal random_bandlimited(const SpatialGrid& grid, std::uint64_t seed, double xi_max) {
  require(xi_max > 0.0, "random_bandlimited: xi_max must be positive");
  Rng rng(seed);
  cplx_vec spec(grid.n, cplx(0.0));
  for (int q = 0; q < grid.n; ++q) {
    const double xi = grid.freq(q);
    if (xi == 0.0 || std::abs(xi) > xi_max) continue;
    const double taper = std::exp(-2.0 * (xi / xi_max) * (xi / xi_max));
    spec[q] = taper * cplx(rng.normal(), rng.normal());
  }
  GridSignal f = to_space(grid, spec);
  const double nrm = signal_l2(f);
  if (nrm > 0.0)
    for (auto& z : f.v) z /= nrm;
  return f;
}

double battery_band_limit(const SpatialGrid& grid, int octaves) {
  // keep voice-transform mass above the truncated scale floor and inside the
  // resolvable band of the grid
  const double nyquist_safe = 0.75 * PI * grid.n / grid.period;
  const double scale_safe = (2.0 * PI / 3.0) * std::pow(2.0, octaves - 1);
  return std::min(nyquist_safe, scale_safe);
}

std::vector<GridSignal> signal_battery(const SpatialGrid& grid, int octaves, int count,
                                       std::uint64_t seed) {
  const double xi_max = battery_band_limit(grid, octaves);
  std::vector<GridSignal> out;
  out.reserve(count);
  const double L = grid.period;
  if (static_cast<int>(out.size()) < count) out.push_back(gaussian(grid, L / 16.0));
  if (static_cast<int>(out.size()) < count)
    out.push_back(modulated_gaussian(grid, L / 12.0, 0.5 * xi_max, -L / 8.0));
  if (static_cast<int>(out.size()) < count) out.push_back(bump(grid, L / 10.0, L / 6.0));
  for (auto& f : out) {
    // project the canonical shapes onto the working band
    cplx_vec s = to_frequency(f);
    for (int q = 0; q < grid.n; ++q)
      if (std::abs(grid.freq(q)) > xi_max) s[q] = 0.0;
    f = to_space(grid, s);
    const double nrm = signal_l2(f);
    if (nrm > 0.0)
      for (auto& z : f.v) z /= nrm;
  }
  std::uint64_t k = 0;
  while (static_cast<int>(out.size()) < count)
    out.push_back(random_bandlimited(grid, seed + 1000 * (k++), xi_max));
  return out;
}

}  // namespace coorbit

#include "coorbit/grid.hpp"

#include "coorbit/fft.hpp"

namespace coorbit {

double scale_integral(const ScaleAxis& axis, const std::function<double(int)>& g) {
  double acc = 0.0;
  for (int m = 0; m < axis.slots(); ++m) acc += g(m);
  return acc * axis.log_weight();
}

double scale_integral(const ScaleAxis& axis, const real_vec& per_slot) {
  require(static_cast<int>(per_slot.size()) == axis.slots(), "scale_integral: slot count");
  double acc = 0.0;
  for (double v : per_slot) acc += v;
  return acc * axis.log_weight();
}

double field_l2sq_mu(const XField& F) {
  double acc = 0.0;
  for (int s = 0; s < F.slots(); ++s) {
    const double w = F.mu_weight(s);
    const cplx* r = F.row(s);
    double row = 0.0;
    for (int i = 0; i < F.grid.n; ++i) row += std::norm(r[i]);
    acc += w * row;
  }
  return acc;
}

cplx field_inner_mu(const XField& F, const XField& G) {
  require(F.grid == G.grid && F.axis == G.axis, "field_inner_mu: mismatched fields");
  cplx acc = 0.0;
  for (int s = 0; s < F.slots(); ++s) {
    const double w = F.mu_weight(s);
    const cplx* a = F.row(s);
    const cplx* b = G.row(s);
    cplx row = 0.0;
    for (int i = 0; i < F.grid.n; ++i) row += a[i] * std::conj(b[i]);
    acc += w * row;
  }
  return acc;
}

// The nodes sit at x_i = -L/2 + i h, so the plain DFT picks up the alternating
// phase e^{-i xi_q (-L/2)} = (-1)^q relative to bin order.
cplx_vec to_frequency(const GridSignal& f) {
  const int n = f.grid.n;
  cplx_vec a = f.v;
  fft_forward(a);
  const double c = f.grid.step() / std::sqrt(2.0 * PI);
  for (int q = 0; q < n; ++q) a[q] *= (q % 2 == 0 ? c : -c);
  return a;
}

GridSignal to_space(const SpatialGrid& grid, const cplx_vec& spectrum) {
  require(static_cast<int>(spectrum.size()) == grid.n, "to_space: bin count");
  cplx_vec a = spectrum;
  const double c = std::sqrt(2.0 * PI) / grid.period;
  for (int q = 0; q < grid.n; ++q) a[q] *= (q % 2 == 0 ? c : -c);
  fft_inverse(a);
  return GridSignal(grid, std::move(a));
}

GridSignal convolve(const SpatialGrid& grid, const cplx_vec& filter_hat, const GridSignal& f) {
  require(static_cast<int>(filter_hat.size()) == grid.n, "convolve: bin count");
  cplx_vec s = to_frequency(f);
  const double c = std::sqrt(2.0 * PI);
  for (int q = 0; q < grid.n; ++q) s[q] *= c * filter_hat[q];
  return to_space(grid, s);
}

cplx_vec dilate_filter(const SpatialGrid& grid, const std::function<cplx(double)>& profile_hat,
                       double t, Dilation kind) {
  cplx_vec out(grid.n);
  if (is_inf(t)) {
    for (int q = 0; q < grid.n; ++q) out[q] = profile_hat(grid.freq(q));
    return out;
  }
  require(t > 0.0, "dilate_filter: scale must be positive");
  const double amp = kind == Dilation::L2 ? std::sqrt(t) : 1.0;
  for (int q = 0; q < grid.n; ++q) out[q] = amp * profile_hat(t * grid.freq(q));
  return out;
}

cplx signal_inner(const GridSignal& f, const GridSignal& g) {
  require(f.grid == g.grid, "signal_inner: mismatched grids");
  cplx acc = 0.0;
  for (int i = 0; i < f.grid.n; ++i) acc += f.v[i] * std::conj(g.v[i]);
  return acc * f.grid.step();
}

double signal_l2(const GridSignal& f) {
  double acc = 0.0;
  for (const cplx& z : f.v) acc += std::norm(z);
  return std::sqrt(acc * f.grid.step());
}

}  // namespace coorbit

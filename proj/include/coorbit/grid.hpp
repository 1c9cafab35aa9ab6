#pragma once

// Discretization of the index set X = R x ((0,1) u {inf}) at desk scale.
// Space is a flat torus of length `period` with n equispaced nodes; the scale
// axis carries log-spaced nodes with midpoint quadrature weights for dt/t.
//
// Fourier convention: f-hat(xi) = (2 pi)^{-1/2} integral e^{-i x xi} f(x) dx,
// sampled at xi_q = 2 pi q / period for signed bin index q in [-n/2, n/2).

#include <functional>

#include "coorbit/common.hpp"

namespace coorbit {

struct SpatialGrid {
  int n = 0;          // number of nodes, power of two
  double period = 0;  // torus length L

  double step() const { return period / n; }
  double node(int i) const { return -0.5 * period + i * step(); }
  int wrap(int i) const {
    int r = i % n;
    return r < 0 ? r + n : r;
  }
  // signed frequency index of FFT bin q in [0, n)
  int signed_index(int q) const { return q < n - n / 2 ? q : q - n; }
  double freq(int q) const { return 2.0 * PI * signed_index(q) / period; }
  // distance on the torus, in [0, period/2]
  double torus_dist(double u) const {
    double r = std::fmod(u, period);
    if (r < 0) r += period;
    return r > 0.5 * period ? period - r : r;
  }
  // nearest node index to position x
  int nearest_node(double x) const {
    const double s = (x + 0.5 * period) / step();
    return wrap(static_cast<int>(std::llround(s)));
  }
  bool operator==(const SpatialGrid&) const = default;
};

struct GridSignal {
  SpatialGrid grid;
  cplx_vec v;

  GridSignal() = default;
  explicit GridSignal(const SpatialGrid& g) : grid(g), v(g.n, cplx(0.0)) {}
  GridSignal(const SpatialGrid& g, cplx_vec values) : grid(g), v(std::move(values)) {}
  cplx& operator[](int i) { return v[i]; }
  const cplx& operator[](int i) const { return v[i]; }
};

// Log-spaced scale nodes on (beta^-octaves, 1): t_m = beta^{-(m+1/2)/per_octave}
// for m = 0..slots-1, midpoint rule in log t with weight log(beta)/per_octave,
// so sum_m g(t_m) * log_weight() approximates integral_{beta^-J}^1 g(t) dt/t.
struct ScaleAxis {
  double beta = 2.0;
  int per_octave = 8;
  int octaves = 4;

  int slots() const { return per_octave * octaves; }
  double log_weight() const { return std::log(beta) / per_octave; }
  double scale(int m) const { return std::pow(beta, -(m + 0.5) / per_octave); }
  double t_min() const { return std::pow(beta, -static_cast<double>(octaves)); }
  bool operator==(const ScaleAxis&) const = default;
};

// integral g(t) dt/t over the axis range (midpoint rule); `g` indexed by slot
double scale_integral(const ScaleAxis& axis, const std::function<double(int)>& g);
double scale_integral(const ScaleAxis& axis, const real_vec& per_slot);

// Field over the discretized X: finite-scale slots 0..axis.slots()-1 plus one
// slot for the infinite sheet (index axis.slots()). Row-major [slot][node].
struct XField {
  SpatialGrid grid;
  ScaleAxis axis;
  cplx_vec data;

  XField() = default;
  XField(const SpatialGrid& g, const ScaleAxis& ax)
      : grid(g), axis(ax), data(static_cast<std::size_t>(ax.slots() + 1) * g.n, cplx(0.0)) {}

  int slots() const { return axis.slots() + 1; }
  int inf_slot() const { return axis.slots(); }
  bool is_inf_slot(int s) const { return s == axis.slots(); }
  double slot_scale(int s) const { return is_inf_slot(s) ? INF : axis.scale(s); }
  cplx& at(int slot, int i) { return data[static_cast<std::size_t>(slot) * grid.n + i]; }
  const cplx& at(int slot, int i) const {
    return data[static_cast<std::size_t>(slot) * grid.n + i];
  }
  cplx* row(int slot) { return data.data() + static_cast<std::size_t>(slot) * grid.n; }
  const cplx* row(int slot) const { return data.data() + static_cast<std::size_t>(slot) * grid.n; }
  // mu weight of one cell in the given slot: h * Delta / t (finite), h (inf)
  double mu_weight(int slot) const {
    if (is_inf_slot(slot)) return grid.step();
    return grid.step() * axis.log_weight() / axis.scale(slot);
  }
};

// integral |F|^2 dmu over the discretized X
double field_l2sq_mu(const XField& F);
// integral F conj(G) dmu
cplx field_inner_mu(const XField& F, const XField& G);

// spectrum S_q = (2 pi)^{-1/2} h sum_i f_i e^{-i xi_q x_i}; bins in FFT order
cplx_vec to_frequency(const GridSignal& f);
// inverse of to_frequency
GridSignal to_space(const SpatialGrid& grid, const cplx_vec& spectrum);

// (filter * f) where `filter_hat` holds the filter's Fourier transform sampled
// at the grid's frequency bins; exact for band-limited data
GridSignal convolve(const SpatialGrid& grid, const cplx_vec& filter_hat, const GridSignal& f);

enum class Dilation { L1, L2 };

// Fourier samples of the t-dilated filter: L1 keeps integral (profile(t xi)),
// L2 keeps the L2 norm (t^{1/2} profile(t xi), d=1). t = INF means no dilation.
cplx_vec dilate_filter(const SpatialGrid& grid, const std::function<cplx(double)>& profile_hat,
                       double t, Dilation kind);

// h * sum_i f_i conj(g_i)
cplx signal_inner(const GridSignal& f, const GridSignal& g);
double signal_l2(const GridSignal& f);

}  // namespace coorbit

#pragma once

// Variable-exponent Lebesgue machinery on the spatial grid: semimodular,
// Luxemburg quasi-norm, log-Hoelder diagnostics, the centered maximal
// operator and convolution against the radial kernels
// eta_{nu,m}(x) = 2^nu (1 + 2^nu |x|)^{-m}.

#include "coorbit/grid.hpp"

namespace coorbit {

// exponent p(.) sampled at grid nodes; values in (0, inf], inf means the
// essential-sup part of the modular
struct ExponentField {
  SpatialGrid grid;
  real_vec p;

  ExponentField() = default;
  ExponentField(const SpatialGrid& g, real_vec values) : grid(g), p(std::move(values)) {
    require(static_cast<int>(p.size()) == g.n, "ExponentField: size");
    for (double v : p) require(v > 0.0, "ExponentField: exponents must be positive");
  }
  ExponentField(const SpatialGrid& g, double constant)
      : ExponentField(g, real_vec(g.n, constant)) {}

  // min over finite part; inf-only fields report inf
  double p_minus() const {
    double m = INF;
    for (double v : p) m = std::min(m, v);
    return m;
  }
  double p_plus_finite() const {
    double m = 0.0;
    for (double v : p)
      if (!is_inf(v)) m = std::max(m, v);
    return m;
  }
  bool has_inf() const {
    for (double v : p)
      if (is_inf(v)) return true;
    return false;
  }
  // pointwise conjugate exponent 1/p + 1/p' = 1; p <= 1 maps to inf so the
  // defect ratio stays defined (and recorded) outside the p >= 1 hypothesis
  ExponentField conjugate() const {
    real_vec c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (is_inf(p[i]))
        c[i] = 1.0;
      else if (p[i] <= 1.0)
        c[i] = INF;
      else
        c[i] = p[i] / (p[i] - 1.0);
    }
    return ExponentField(grid, std::move(c));
  }
};

// rho(f) = h * sum_{p_i < inf} |f_i|^{p_i} + max_{p_i = inf} |f_i|
double modular(const ExponentField& p, const GridSignal& f);

// inf{ lambda > 0 : rho(f / lambda) <= 1 }, log-domain bisection
double luxemburg_norm(const ExponentField& p, const GridSignal& f);

// same machinery for an arbitrary nonnegative sample vector with its own
// per-cell measure weights (used by the X-space norms)
double modular_weighted(const real_vec& p, const real_vec& absf, const real_vec& cellw);
double luxemburg_weighted(const real_vec& p, const real_vec& absf, const real_vec& cellw);

struct LogHolderReport {
  double c_local = 0.0;   // sup |g(x)-g(y)| log(e + 1/|x-y|) over grid pairs, g = 1/p
  double c_decay = 0.0;   // sup |g(x)-g_inf| log(e + |x|)
  double g_inf = 0.0;     // robust limit estimate of 1/p at the far nodes
  double c_nn_h = 0.0;    // nearest-neighbor constant at spacing h
  double c_nn_2h = 0.0;   // nearest-neighbor constant at spacing 2h
  bool fails = false;     // constant grows under refinement (jump detected)
};

LogHolderReport log_holder_report(const ExponentField& p);

// integral |f g| dx divided by luxemburg(f,p) * luxemburg(g,p'); flag records
// when p^- < 1 puts the bound outside its hypothesis
Flagged holder_defect(const ExponentField& p, const GridSignal& f, const GridSignal& g);

// centered maximal function sup over wrap intervals of the |f| average;
// prefix-sum fast path and an independent naive reference
real_vec hl_maximal(const GridSignal& f);
real_vec hl_maximal_reference(const GridSignal& f);

// exact cell-averaged, torus-wrapped samples of eta_{nu,m}; integer m >= 2
real_vec eta_kernel(const SpatialGrid& grid, int nu, int m);
// convolution f * eta_{nu,m} via the cell-averaged kernel
GridSignal eta_convolve(const SpatialGrid& grid, int nu, int m, const GridSignal& f);

// named exponents: "constant:p", "sin2:base:amp:freq:phase",
// "step:p_out:p_in:center:radius", "logdecay:p_inf:c"
ExponentField make_named_exponent(const SpatialGrid& grid, const std::string& spec);

}  // namespace coorbit

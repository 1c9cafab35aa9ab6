#pragma once

// 2-microlocal weights on X = R x ((0,1) u {inf}) with their admissibility
// class: W1 controls scale growth through exponents (alpha1, alpha2), W2 is
// a spatial translation bound with exponent alpha3. The associated scalar
// weight nu(x,t) = t^{alpha1 - d/p^-} (1+|x|)^{alpha3} feeds the kernel
// algebra through m_nu(a,b) = max(nu_a/nu_b, nu_b/nu_a).

#include <functional>

#include "coorbit/grid.hpp"

namespace coorbit {

struct Weight2ML {
  std::string name;
  double alpha1 = 0.0;  // declared scale exponents: s >= t implies
  double alpha2 = 0.0;  //   (s/t)^a1 w(x,s) <= w(x,t) <= (s/t)^a2 w(x,s)
  double alpha3 = 0.0;  // spatial bound w(x,t) <= w(y,t) (1+|x-y|/t)^a3
  std::function<double(double x, double t)> eval;  // t in (0,1) or INF

  double operator()(double x, double t) const { return eval(x, t); }
};

// w_{s,s'}(x,t) = t^{-s} (1 + d(x,x0)/t)^{s'} for t < 1, (1 + d(x,x0))^{s'}
// at t = inf; class parameters (s + min(s',0), s + max(s',0), |s'|)
Weight2ML make_w2ml(const SpatialGrid& grid, double s, double sprime, double x0 = 0.0);
Weight2ML constant_weight();
// "w2ml:s:sprime:x0" or "constant"
Weight2ML make_named_weight(const SpatialGrid& grid, const std::string& spec);

// t^{-d/2} w(x,t) on the finite sheet, unchanged at inf; shifts the scale
// exponents by d/2 (d = 1)
Weight2ML wtilde(const Weight2ML& w);

// w_0 = w(.,inf), w_j = w(., 2^-j) sampled at the grid nodes
std::vector<real_vec> weight_sequence(const Weight2ML& w, const SpatialGrid& grid, int J);

struct AdmissibilityWitness {
  double x = 0.0, y = 0.0, t = 0.0, s = 0.0;
  double excess = 0.0;  // log of the violated ratio
};

struct AdmissibilityReport {
  bool pass = false;
  double w1_excess = 0.0;  // worst log-violation of the scale bounds
  double w2_excess = 0.0;  // worst log-violation of the translation bound
  double alpha1_obs = 0.0;  // observed exponent range (upper bound for the
  double alpha2_obs = 0.0;  //   true class parameters, not proven sharp)
  double alpha3_obs = 0.0;
  AdmissibilityWitness worst_w1, worst_w2;
};

// samples W1 over slot pairs (plus the inf sheet) and W2 over node pairs,
// checking the declared exponents with relative tolerance 1e-12
AdmissibilityReport check_admissible(const Weight2ML& w, const SpatialGrid& grid,
                                     const ScaleAxis& axis);

inline double m_nu(double nu_a, double nu_b) {
  return std::max(nu_a / nu_b, nu_b / nu_a);
}

// associated weight nu over the discretized X, rescaled so its minimum over
// the working window is exactly 1
struct ReservoirWeight {
  SpatialGrid grid;
  ScaleAxis axis;
  real_vec values;  // slot-major, inf sheet last

  static ReservoirWeight from(const Weight2ML& w, const SpatialGrid& grid, const ScaleAxis& axis,
                              double p_minus);
  double at(int slot, int node) const {
    return values[static_cast<std::size_t>(slot) * grid.n + node];
  }
};

}  // namespace coorbit

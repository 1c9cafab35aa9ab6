#pragma once

#include <vector>

#include "coorbit/analyzers.hpp"
#include "coorbit/grid.hpp"

namespace coorbit {

// Continuous frame analysis against an admissible pair, sampled on the
// discretized index set: one slice per scale slot plus the infinite sheet.
// Analysis filters are cached in frequency; `analysis[s][q]` holds
// conj(t^{1/2} phi(t xi_q)) for finite slots and conj(phi0(xi_q)) at inf.
struct VoiceTransform {
  SpatialGrid grid;
  ScaleAxis axis;
  AnalyzerPair pair;
  std::vector<cplx_vec> analysis;

  static VoiceTransform make(const SpatialGrid& grid, const ScaleAxis& axis,
                             const AnalyzerPair& pair);
  // scale part of the mu quadrature weight: Delta/t (finite), 1 (inf)
  double scale_weight(int slot) const {
    return slot == axis.slots() ? 1.0 : axis.log_weight() / axis.scale(slot);
  }
};

// slice s of the output is the correlation of f with the slot-s analyzer
XField voice_transform(const VoiceTransform& vt, const GridSignal& f);

// adjoint of voice_transform w.r.t. the mu inner product on fields and the
// L2 inner product on signals
GridSignal voice_adjoint(const VoiceTransform& vt, const XField& F);

// sup over usable frequency bins of |2 pi (|phi0|^2 + midpoint scale sum) - 1|;
// bins beyond support_lo * beta^octaves are excluded (the scale axis cannot
// reach the dilations that cover them)
double tightness_defect(const VoiceTransform& vt);

// max over the battery of |energy of Vf under mu / squared L2 norm - 1|
double tightness_defect(const VoiceTransform& vt, const std::vector<GridSignal>& battery);

// max_j |row_j| (1 + d(i,j)/t)^{-a} at every node i, with d the torus metric;
// t = INF uses unit scale in the penalty. Exact (branch-and-bound over a
// range-max table), identical values to peetre_maximal_reference. a > 0.
real_vec peetre_maximal(const SpatialGrid& grid, const cplx* row, double t, double a);
real_vec peetre_maximal(const SpatialGrid& grid, const cplx_vec& row, double t, double a);
real_vec peetre_maximal_reference(const SpatialGrid& grid, const cplx_vec& row, double t,
                                  double a);
// slot-by-slot application over a field; values are real, stored re-only
XField peetre_maximal(const XField& F, double a);

// windowed max across scale slots: out[m] = max over slots m' with
// t_{m'} in [t_m/2, 2 t_m] (ties included) of per_slot[m']; empty window -> 0
std::vector<real_vec> scale_window_max(const ScaleAxis& axis,
                                       const std::vector<real_vec>& per_slot);

// P*F(x,t) = sup over z and tau in [t/2, 2t], tau < 1 of
// |F(x+z, tau)| (1 + |z|/tau)^{-a}; the inf sheet uses unit scale and no
// scale window. a > 0. Values are real, stored re-only.
XField peetre_wiener_maximal(const XField& F, double a);

}  // namespace coorbit

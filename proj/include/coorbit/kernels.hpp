#pragma once

// Discrete kernels on X x X for a voice-transform frame: the translation-
// invariant frame kernel held as per-slot-pair rings, covering-localized
// Gramian and oscillation kernels held as dense tables, the kernel-algebra
// norms, and mu-weighted kernel application.

#include "coorbit/covering.hpp"
#include "coorbit/spaces.hpp"
#include "coorbit/transform.hpp"
#include "coorbit/weights.hpp"

namespace coorbit {

struct KernelOp {
  SpatialGrid grid;
  ScaleAxis axis;
  bool invariant = false;
  // invariant: K(x,y) = rings[sx*S+sy][(ix-iy) mod n], S = slots+1
  std::vector<cplx_vec> rings;
  // dense: nonnegative values, row-major over cells (slot*n + node)
  real_vec dense;

  int sheet_count() const { return axis.slots() + 1; }
  int cells() const { return sheet_count() * grid.n; }
  double mu_cell(int slot) const {
    return slot == axis.slots() ? grid.step() : grid.step() * axis.log_weight() / axis.scale(slot);
  }
  cplx entry(int sx, int ix, int sy, int iy) const {
    if (invariant) {
      const int u = ix - iy < 0 ? ix - iy + grid.n : ix - iy;
      return rings[static_cast<std::size_t>(sx) * sheet_count() + sy][u];
    }
    return dense[static_cast<std::size_t>(sx * grid.n + ix) * cells() + (sy * grid.n + iy)];
  }

  static KernelOp dense_from(const SpatialGrid& grid, const ScaleAxis& axis, real_vec values);
};

// frame atom as a grid signal: phi_{x,t} with spectrum sqrt(t) Phi^(t xi) e^{-i xi x}
// (Phi0^ on the infinite sheet), so <f, phi_{x,t}> equals the voice transform
GridSignal frame_atom(const VoiceTransform& vt, int slot, int node);

// R(x,y) = <phi_y, phi_x>; hermitian by construction
KernelOp frame_kernel(const VoiceTransform& vt);

// (K F)(x) = sum_y K(x,y) F(y) mu(y)
XField kernel_apply(const KernelOp& K, const XField& F);

// |R(Vf) - Vf| / |Vf| in L2(X, mu); 0 for f = 0
double reproducing_defect(const KernelOp& R, const XField& F);
double reproducing_defect(const VoiceTransform& vt, const GridSignal& f);

// K_U[G,F](x,y) = sup_{z in box(y)} |<phi^F_x, psi^G_z>|; M_U with atoms = frame
KernelOp gram_cross_kernel(const VoiceTransform& atoms, const VoiceTransform& frame,
                           const Covering& cover);

enum class Phase { Trivial };

// osc(x,y) = sup_{z in box(y)} |R(x,y) - Gamma(y,z) R(x,z)|
KernelOp osc_kernel(const VoiceTransform& vt, const Covering& cover, Phase phase);

// K(y,x) values as a kernel (involution K*)
KernelOp kernel_transpose(const KernelOp& K);

// max of row and column mu-integrals of |K|
double kernel_a1_norm(const KernelOp& K);
// same with the m_nu(x,y) factor from the reservoir weight
double kernel_amnu_norm(const KernelOp& K, const ReservoirWeight& nu);

// max over battery fields of |KF|_Y / |F|_Y, a lower bound on the operator norm
double kernel_op_norm_estimate(const KernelOp& K, const SpaceSpec& spec,
                               const std::vector<XField>& battery);

}  // namespace coorbit

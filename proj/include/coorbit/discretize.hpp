#pragma once

// Discretization of the continuous frame over a covering: the sampled kernel
// operator U_Phi, its Neumann inversion, atomic decomposition through the
// induced dual family, orthonormal wavelet expansion on the dyadic covering,
// and the coorbit norm read off the voice transform.

#include "coorbit/kernels.hpp"
#include "coorbit/spaces.hpp"

namespace coorbit {

// U_Phi F = sum_i mu(U_i) F(x_i) R(., x_i), the frame kernel sampled at the
// covering points; rings are cached in frequency for repeated application
struct Discretizer {
  VoiceTransform vt;
  Covering cover;
  std::vector<cplx_vec> rings_hat;  // fft of frame-kernel rings, [sx*S+sy]

  static Discretizer make(const VoiceTransform& vt, const Covering& cover);
  XField apply(const XField& F) const;
};

XField discretization_op(const VoiceTransform& vt, const Covering& cover, const XField& F);

struct NeumannResult {
  XField G;
  int iters = 0;
  double residual = 0.0;  // |F - U_Phi G| / |F| at exit
  double ratio = 0.0;     // first-iterate residual contraction
};

// iterates G <- G + (F - U_Phi G) from G = F until the residual drops below
// tol; throws (with the measured ratio) when the first step does not contract
NeumannResult neumann_invert(const Discretizer& d, const XField& F, double tol, int max_iter);
XField neumann_invert(const VoiceTransform& vt, const Covering& cover, const XField& F,
                      double tol, int max_iter);

// lambda_i = mu(U_i) (U_Phi^{-1} V f)(x_i); the dual-frame coefficients
SeqCoeffs atomic_decompose(const Discretizer& d, const GridSignal& f, double tol, int max_iter);
// sum_i lambda_i phi_{x_i} via per-slot spike spectra
GridSignal atomic_synthesize(const Discretizer& d, const SeqCoeffs& coeffs);

// orthonormal wavelet expansion: base-level scaling and wavelet coefficients
// plus wavelet levels 1..levels, reconstruction, and coefficient sequence
// norms over the dyadic covering (alpha = 1, beta = 2)
struct WaveletExpansion {
  int levels = 0;
  cplx_vec base_scaling;          // <f, psi^0(. - k)>, k = 0..L-1
  std::vector<cplx_vec> wavelet;  // [j] <f, 2^{j/2} psi^1(2^j . - k)>, j = 0..levels
  GridSignal reconstruction;
  double rel_error = 0.0;
  SeqNorms seq;
};

WaveletExpansion wavelet_frame_expand(const GridSignal& f, const MeyerSystem& sys,
                                      const SpaceSpec& spec, const ScaleAxis& axis, int levels);

// X-field norm of V f: family F/P reads the pointwise norm, B/L the levelwise
// one, both against the scale-corrected weight
NormResult coorbit_norm(const VoiceTransform& vt, const SpaceSpec& spec, const GridSignal& f);

}  // namespace coorbit

#pragma once

// Analyzing-window constructions on the frequency side:
//  - smooth ramp glue and the Meyer scaling/wavelet profiles,
//  - dyadic partitions of unity for the decomposition-space norms,
//  - admissible low-pass/wavelet pairs with the closure
//      Phi0-hat(xi) = sqrt(C - int_0^1 |Phi-hat(t xi)|^2 dt/t),
//  - Tauberian and vanishing-moment diagnostics.

#include <functional>

#include "coorbit/grid.hpp"

namespace coorbit {

using FreqProfile = std::function<cplx(double)>;

// C-infinity glue: 0 on (-inf,0], 1 on [1,inf), r(x)/(r(x)+r(1-x)) between,
// r(x) = exp(-1/x); satisfies ramp(x) + ramp(1-x) = 1 exactly
double ramp(double x);
// second smooth glue (ramp composed with itself) for filter-independence tests
double ramp_alt(double x);

// Meyer profiles: psi0_mod = |psi0-hat| supported in |xi| <= 4pi/3 with
// psi0_mod(0) = (2pi)^{-1/2}; psi1_mod = |psi1-hat| supported in
// 2pi/3 <= |xi| <= 8pi/3; the wavelet carries the phase e^{i xi phase_shift}
struct MeyerSystem {
  std::function<double(double)> psi0_mod;
  std::function<double(double)> psi1_mod;
  double phase_shift = 0.5;

  cplx psi0_hat(double xi) const { return psi0_mod(xi); }
  cplx psi1_hat(double xi) const {
    return psi1_mod(xi) * std::exp(cplx(0.0, phase_shift * xi));
  }
};

MeyerSystem meyer_generators();

// component profile of the wavelet system: c = 0 gives the scaling profile,
// c = 1 the (phased) wavelet profile
FreqProfile tensor_wavelet(const MeyerSystem& sys, int c);

// grid samples of the L2-normalized atom 2^{j/2} psi^c(2^j x - k) periodized
// to the torus; exact when 2^j * 8pi/3 fits under the grid Nyquist band
GridSignal meyer_atom(const SpatialGrid& grid, const MeyerSystem& sys, int c, int j, long k);

// smooth dyadic partition of unity: phi0 supported in |xi| <= 2, phi supported
// in 1/2 <= |xi| <= 2, phi0(xi) + sum_{j>=1} phi(2^-j xi) = 1
struct DyadicPU {
  std::string name;
  std::function<double(double)> phi0;
  std::function<double(double)> phi;
};

// ramp_kind 0 uses ramp(), 1 uses ramp_alt(); both are valid partitions
DyadicPU dyadic_partition(int ramp_kind = 0);

struct AnalyzerPair {
  std::string name;
  FreqProfile phi0_hat;   // low-pass window
  FreqProfile phi_hat;    // wavelet window
  double support_lo = 0.0;   // |xi| support bounds of phi_hat
  double support_hi = 0.0;
  double support0_hi = 0.0;  // |xi| support bound of phi0_hat
  int moment_order = -1;     // -1: phi-hat vanishes identically near 0
  double parseval_const = 0.0;  // |phi0|^2 + int_0^1 |phi(t .)|^2 dt/t
};

// closure construction: given the wavelet window and its support band, build
// the low-pass so that |phi0|^2 + int_0^1 |phi(t xi)|^2 dt/t = C. C < 0 means
// "use the exact closure constant" int_0^inf |phi(u)|^2 du/u. When `normalize`
// is set, both windows are rescaled by (2 pi C)^{-1/2} so the resulting frame
// is Parseval for the voice transform (the constant becomes 1/(2 pi)).
// Throws when the radicand goes negative (C below the closure constant).
AnalyzerPair make_admissible_pair(const std::string& name, const FreqProfile& phi_hat,
                                  double support_lo, double support_hi, double C = -1.0,
                                  bool normalize = true);

// Meyer wavelet window with its closure low-pass (Parseval-normalized)
AnalyzerPair meyer_pair();
// real even bump window supported on 1/2 <= |xi| <= 2 with its closure
AnalyzerPair bump_band_pair();

// int_0^1 |phi-hat(t xi)|^2 dt/t by adaptive Simpson in log t (near-exact)
double scale_energy(const AnalyzerPair& pair, double xi);

struct TauberianReport {
  bool pass = false;
  double eps0 = 0.0;      // largest radius with |phi0| > 0 on |xi| < 2 eps0
  double eps = 0.0;       // largest eps with |phi| > 0 on eps/2 < |xi| < 2 eps
  double coverage_inf = 0.0;  // inf over the band of |phi0|^2 + scale energy
  double band = 0.0;          // working band used for the scan
};

TauberianReport tauberian_check(const AnalyzerPair& pair, double band);

struct MomentReport {
  bool pass = false;
  int requested = 0;
  int first_failed = -1;   // -1 when all orders up to `requested` vanish
  double max_excess = 0.0; // largest |D^k phi-hat(0)| estimate among failures
};

// checks D^k phi-hat(0) = 0 for k = 0..R via central differences
MomentReport moment_check(const AnalyzerPair& pair, int R);

}  // namespace coorbit

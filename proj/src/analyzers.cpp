#include "coorbit/analyzers.hpp"

#include <memory>
#include <sstream>

namespace coorbit {

double ramp(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double ramp_alt(double x) { return ramp(ramp(x)); }

namespace {

constexpr double TWO_PI = 2.0 * PI;

double meyer_angle(double u) { return 0.5 * PI * ramp(u); }

}  // namespace

MeyerSystem meyer_generators() {
  MeyerSystem sys;
  const double c0 = 1.0 / std::sqrt(TWO_PI);
  sys.psi0_mod = [c0](double xi) {
    const double a = std::abs(xi);
    if (a <= TWO_PI / 3.0) return c0;
    if (a >= 4.0 * PI / 3.0) return 0.0;
    return c0 * std::cos(meyer_angle(3.0 * a / TWO_PI - 1.0));
  };
  sys.psi1_mod = [c0](double xi) {
    const double a = std::abs(xi);
    if (a <= TWO_PI / 3.0 || a >= 8.0 * PI / 3.0) return 0.0;
    if (a <= 4.0 * PI / 3.0) return c0 * std::sin(meyer_angle(3.0 * a / TWO_PI - 1.0));
    return c0 * std::cos(meyer_angle(3.0 * a / (2.0 * TWO_PI) - 1.0));
  };
  sys.phase_shift = 0.5;
  return sys;
}

FreqProfile tensor_wavelet(const MeyerSystem& sys, int c) {
  require(c == 0 || c == 1, "tensor_wavelet: component must be 0 or 1");
  if (c == 0) return [sys](double xi) { return sys.psi0_hat(xi); };
  return [sys](double xi) { return sys.psi1_hat(xi); };
}

GridSignal meyer_atom(const SpatialGrid& grid, const MeyerSystem& sys, int c, int j, long k) {
  require(j >= 0, "meyer_atom: level must be nonnegative");
  const double scale = std::pow(2.0, -j);
  const double shift = k * scale;
  const double amp = std::pow(2.0, -0.5 * j);
  FreqProfile prof = tensor_wavelet(sys, c);
  cplx_vec spec(grid.n);
  for (int q = 0; q < grid.n; ++q) {
    const double xi = grid.freq(q);
    spec[q] = amp * prof(scale * xi) * std::exp(cplx(0.0, -xi * shift));
  }
  return to_space(grid, spec);
}

DyadicPU dyadic_partition(int ramp_kind) {
  auto rmp = ramp_kind == 0 ? ramp : ramp_alt;
  auto h0 = [rmp](double xi) {
    const double a = std::abs(xi);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return 1.0 - rmp(a - 1.0);
  };
  DyadicPU pu;
  pu.name = ramp_kind == 0 ? "dyadic-pu" : "dyadic-pu-alt";
  pu.phi0 = h0;
  // h0(xi) - h0(2 xi) evaluated per branch: the subtraction cancels
  // catastrophically near the lower support edge where h0(2 xi) ~ 1
  pu.phi = [rmp](double xi) {
    const double a = std::abs(xi);
    if (a <= 0.5 || a >= 2.0) return 0.0;
    if (a <= 1.0) return rmp(2.0 * a - 1.0);
    return 1.0 - rmp(a - 1.0);
  };
  return pu;
}

namespace {

// adaptive Simpson on [a,b] with absolute tolerance scaled by the whole call
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// int_{lo}^{min(v,hi)} |phi(sgn u)|^2 du/u in log coordinates
double band_energy(const FreqProfile& phi, double sgn, double lo, double hi, double v,
                   double tol) {
  const double top = std::min(v, hi);
  if (top <= lo) return 0.0;
  auto f = [&](double lam) {
    const double u = std::exp(lam);
    return std::norm(phi(sgn * u));
  };
  return adaptive_simpson(f, std::log(lo), std::log(top), tol);
}

}  // namespace

double scale_energy(const AnalyzerPair& pair, double xi) {
  if (xi == 0.0) return 0.0;
  const double a = std::abs(xi);
  const double sgn = xi > 0.0 ? 1.0 : -1.0;
  // substitute u = t|xi|: int_0^1 |phi(t xi)|^2 dt/t = int_0^{|xi|} |phi(sgn u)|^2 du/u
  return band_energy(pair.phi_hat, sgn, pair.support_lo, pair.support_hi, a, 1e-14);
}

namespace {

// cumulative band energy on a log grid over [lo, hi]; each cell is its own
// adaptive quadrature, so lookups stay exact up to quadrature tolerance
// (the partial cell is re-integrated, never interpolated)
struct EnergyTable {
  double log_lo = 0.0, log_hi = 0.0, step = 0.0;
  int cells = 0;
  double sgn = 1.0;
  FreqProfile base;
  real_vec cum;  // cum[k] = energy over the first k cells

  static EnergyTable build(const FreqProfile& phi, double sgn, double lo, double hi) {
    EnergyTable t;
    t.log_lo = std::log(lo);
    t.log_hi = std::log(hi);
    t.cells = 2048;
    t.step = (t.log_hi - t.log_lo) / t.cells;
    t.sgn = sgn;
    t.base = phi;
    t.cum.assign(t.cells + 1, 0.0);
    for (int k = 0; k < t.cells; ++k) {
      const double a = t.log_lo + k * t.step;
      t.cum[k + 1] =
          t.cum[k] + adaptive_simpson([&](double lam) { return std::norm(phi(sgn * std::exp(lam))); },
                                      a, a + t.step, 1e-16);
    }
    return t;
  }
  double total() const { return cum[cells]; }
  // energy over [lo, min(v, hi)]
  double upto(double v) const {
    if (v <= std::exp(log_lo)) return 0.0;
    const double lv = std::log(v);
    if (lv >= log_hi) return total();
    const double x = (lv - log_lo) / step;
    int k = static_cast<int>(x);
    k = std::min(std::max(k, 0), cells - 1);
    const double a = log_lo + k * step;
    return cum[k] + adaptive_simpson(
                        [&](double lam) { return std::norm(base(sgn * std::exp(lam))); }, a, lv,
                        1e-16);
  }
};

}  // namespace

AnalyzerPair make_admissible_pair(const std::string& name, const FreqProfile& phi_hat,
                                  double support_lo, double support_hi, double C,
                                  bool normalize) {
  require(support_lo > 0.0 && support_hi > support_lo,
          "make_admissible_pair: need 0 < support_lo < support_hi");
  auto pos = std::make_shared<EnergyTable>(
      EnergyTable::build(phi_hat, 1.0, support_lo, support_hi));
  auto neg = std::make_shared<EnergyTable>(
      EnergyTable::build(phi_hat, -1.0, support_lo, support_hi));
  const double c_pos = pos->total();
  const double c_neg = neg->total();
  require(std::abs(c_pos - c_neg) <= 1e-10 * std::max(c_pos, c_neg),
          "make_admissible_pair: wavelet energy differs between frequency signs");
  const double c_total = 0.5 * (c_pos + c_neg);
  require(c_total > 0.0, "make_admissible_pair: wavelet window has no energy");
  if (C < 0.0) C = c_total;
  {
    // radicand must stay nonnegative; the worst deficit is at large |xi|
    const double deficit = c_total - C;
    if (deficit > 1e-12 * c_total) {
      std::ostringstream msg;
      msg << "make_admissible_pair: negative radicand, C = " << C
          << " below closure constant " << c_total << " (witness xi = " << support_hi << ")";
      throw std::invalid_argument(msg.str());
    }
  }

  AnalyzerPair pair;
  pair.name = name;
  pair.support_lo = support_lo;
  pair.support_hi = support_hi;
  pair.support0_hi = support_hi;
  pair.moment_order = -1;
  const double gamma = normalize ? 1.0 / std::sqrt(TWO_PI * C) : 1.0;
  pair.parseval_const = normalize ? 1.0 / TWO_PI : C;
  FreqProfile base = phi_hat;
  const double hi = support_hi;
  pair.phi_hat = [base, gamma](double xi) { return gamma * base(xi); };
  pair.phi0_hat = [pos, neg, gamma, hi, C](double xi) -> cplx {
    const double a = std::abs(xi);
    if (a >= hi) return 0.0;
    const double rad = C - (xi >= 0.0 ? pos : neg)->upto(a);
    return gamma * std::sqrt(std::max(rad, 0.0));
  };
  return pair;
}

AnalyzerPair meyer_pair() {
  MeyerSystem sys = meyer_generators();
  FreqProfile w = [sys](double xi) { return sys.psi1_hat(xi); };
  AnalyzerPair pair =
      make_admissible_pair("meyer", w, TWO_PI / 3.0, 8.0 * PI / 3.0, -1.0, true);
  return pair;
}

AnalyzerPair bump_band_pair() {
  auto mod = [](double xi) {
    const double a = std::abs(xi);
    if (a <= 0.5 || a >= 2.0) return 0.0;
    if (a < 0.75) return ramp((a - 0.5) / 0.25);
    if (a <= 1.5) return 1.0;
    return 1.0 - ramp((a - 1.5) / 0.5);
  };
  FreqProfile w = [mod](double xi) { return cplx(mod(xi)); };
  return make_admissible_pair("bump-band", w, 0.5, 2.0, -1.0, true);
}

// The wavelet condition "|phi| > 0 on eps/2 < |xi| < 2 eps" is checked from
// the declared support bounds: deep-interior samples must be positive, samples
// outside the declared band must vanish, and the admissible radius comes from
// the bounds themselves. A raw positivity scan cannot work here because C-inf
// windows drop below machine range strictly inside their analytic support.
TauberianReport tauberian_check(const AnalyzerPair& pair, double band) {
  TauberianReport rep;
  rep.band = band;
  const int samples = 4096;

  // phi0: positivity up to the first sampled zero
  double r0 = band;
  for (int s = 1; s <= samples; ++s) {
    const double xi = band * s / samples;
    if (!(std::abs(pair.phi0_hat(xi)) > 0.0) || !(std::abs(pair.phi0_hat(-xi)) > 0.0)) {
      r0 = band * (s - 1) / samples;
      break;
    }
  }
  rep.eps0 = 0.5 * r0;

  // phi: interior positivity on [lo(1+c), hi(1-c)] and silence outside [lo,hi]
  const double c = 0.02;
  bool interior_ok = true;
  for (int s = 0; s <= samples; ++s) {
    const double xi = pair.support_lo * (1.0 + c) +
                      (pair.support_hi * (1.0 - c) - pair.support_lo * (1.0 + c)) * s / samples;
    if (!(std::abs(pair.phi_hat(xi)) > 0.0) || !(std::abs(pair.phi_hat(-xi)) > 0.0)) {
      interior_ok = false;
      break;
    }
  }
  bool outside_ok = true;
  for (int s = 0; s <= 64; ++s) {
    const double in = pair.support_lo * s / 65.0;
    const double out = pair.support_hi * (1.0 + s / 8.0);
    if (std::abs(pair.phi_hat(in)) > 0.0 || std::abs(pair.phi_hat(-in)) > 0.0 ||
        std::abs(pair.phi_hat(out)) > 0.0 || std::abs(pair.phi_hat(-out)) > 0.0) {
      outside_ok = false;
      break;
    }
  }
  const bool wavelet_ok =
      interior_ok && outside_ok && pair.support_hi >= 4.0 * pair.support_lo * (1.0 - 1e-12);
  rep.eps = wavelet_ok ? 0.5 * pair.support_hi : 0.0;

  rep.coverage_inf = INF;
  for (int s = 1; s <= samples; ++s) {
    const double xi = band * s / samples;
    const double cov = std::norm(pair.phi0_hat(xi)) + scale_energy(pair, xi);
    rep.coverage_inf = std::min(rep.coverage_inf, cov);
  }
  rep.pass = rep.eps0 > 0.0 && wavelet_ok && rep.coverage_inf > 0.0;
  return rep;
}

MomentReport moment_check(const AnalyzerPair& pair, int R) {
  MomentReport rep;
  rep.requested = R;
  const double scale = std::max({std::abs(pair.phi_hat(0.75 * pair.support_hi)),
                                 std::abs(pair.phi_hat(-0.75 * pair.support_hi)), 1e-30});
  for (int k = 0; k <= R; ++k) {
    // iterated central difference of order k around 0
    const double delta = 0.25 * pair.support_lo / (k + 1);
    cplx acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= k; ++i) {
      const double x = (i - 0.5 * k) * delta;
      acc += (((k - i) % 2 == 0) ? binom : -binom) * pair.phi_hat(x);
      binom = binom * (k - i) / (i + 1.0);
    }
    const double est = std::abs(acc) / std::pow(delta, k);
    // allow the fp noise amplified by the difference quotient
    const double noise = scale * std::pow(2.0, k) * 1e-15 / std::pow(delta, k);
    if (est > 1e-8 * scale + 16.0 * noise) {
      if (rep.first_failed < 0) rep.first_failed = k;
      rep.max_excess = std::max(rep.max_excess, est);
    }
  }
  rep.pass = rep.first_failed < 0;
  return rep;
}

}  // namespace coorbit

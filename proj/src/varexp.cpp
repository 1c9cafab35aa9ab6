#include "coorbit/varexp.hpp"

#include <gsl/gsl_sf_psi.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <sstream>

namespace coorbit {

double modular_weighted(const real_vec& p, const real_vec& absf, const real_vec& cellw) {
  double finite = 0.0;
  double suppart = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (is_inf(p[i]))
      suppart = std::max(suppart, absf[i]);
    else if (absf[i] != 0.0)
      finite += std::pow(absf[i], p[i]) * cellw[i];
  }
  return finite + suppart;
}

double luxemburg_weighted(const real_vec& p, const real_vec& absf, const real_vec& cellw) {
  double fmax = 0.0;
  for (double v : absf) fmax = std::max(fmax, v);
  if (fmax == 0.0) return 0.0;
  auto rho_over = [&](double lam) {
    real_vec scaled(absf.size());
    for (std::size_t i = 0; i < absf.size(); ++i) scaled[i] = absf[i] / lam;
    return modular_weighted(p, scaled, cellw) > 1.0;
  };
  // bracket the unit-modular level, then bisect in log lambda
  double lo = fmax;
  double hi = fmax;
  int guard = 0;
  while (!rho_over(lo)) {
    lo *= 0.5;
    if (++guard > 2000 || lo < 1e-300) return 0.0;
  }
  guard = 0;
  while (rho_over(hi)) {
    hi *= 2.0;
    require(++guard <= 2000, "luxemburg: no upper bracket");
  }
  for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-14; ++it) {
    const double mid = std::sqrt(lo * hi);
    (rho_over(mid) ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

double modular(const ExponentField& p, const GridSignal& f) {
  require(p.grid == f.grid, "modular: grid mismatch");
  real_vec absf(f.grid.n), cellw(f.grid.n, f.grid.step());
  for (int i = 0; i < f.grid.n; ++i) absf[i] = std::abs(f[i]);
  return modular_weighted(p.p, absf, cellw);
}

double luxemburg_norm(const ExponentField& p, const GridSignal& f) {
  require(p.grid == f.grid, "luxemburg_norm: grid mismatch");
  real_vec absf(f.grid.n), cellw(f.grid.n, f.grid.step());
  for (int i = 0; i < f.grid.n; ++i) absf[i] = std::abs(f[i]);
  return luxemburg_weighted(p.p, absf, cellw);
}

LogHolderReport log_holder_report(const ExponentField& p) {
  const SpatialGrid& g = p.grid;
  real_vec ginv(g.n);
  for (int i = 0; i < g.n; ++i) ginv[i] = is_inf(p.p[i]) ? 0.0 : 1.0 / p.p[i];

  LogHolderReport rep;
  const int stride = g.n > 2048 ? g.n / 2048 : 1;
  for (int i = 0; i < g.n; i += stride) {
    for (int j = i + 1; j < g.n; j += stride) {
      const double d = g.torus_dist(g.node(i) - g.node(j));
      if (d <= 0.0) continue;
      rep.c_local = std::max(rep.c_local, std::abs(ginv[i] - ginv[j]) * std::log(std::exp(1.0) + 1.0 / d));
    }
  }

  real_vec far;
  for (int i = 0; i < g.n; ++i)
    if (std::abs(g.node(i)) >= 0.4 * g.period) far.push_back(ginv[i]);
  std::sort(far.begin(), far.end());
  rep.g_inf = far.empty() ? ginv[0] : far[far.size() / 2];
  for (int i = 0; i < g.n; ++i)
    rep.c_decay = std::max(rep.c_decay,
                           std::abs(ginv[i] - rep.g_inf) * std::log(std::exp(1.0) + std::abs(g.node(i))));

  auto nn_const = [&](int k) {
    double c = 0.0;
    const double d = k * g.step();
    for (int i = 0; i < g.n; ++i)
      c = std::max(c, std::abs(ginv[g.wrap(i + k)] - ginv[i]) * std::log(std::exp(1.0) + 1.0 / d));
    return c;
  };
  rep.c_nn_h = nn_const(1);
  rep.c_nn_2h = nn_const(2);
  rep.fails = rep.c_nn_h > rep.c_nn_2h * (1.0 + 1e-6) + 1e-12;
  return rep;
}

Flagged holder_defect(const ExponentField& p, const GridSignal& f, const GridSignal& g) {
  Flagged out;
  double prod = 0.0;
  for (int i = 0; i < f.grid.n; ++i) prod += std::abs(f[i]) * std::abs(g[i]);
  prod *= f.grid.step();
  const double nf = luxemburg_norm(p, f);
  const double ng = luxemburg_norm(p.conjugate(), g);
  if (nf == 0.0 || ng == 0.0) {
    out.value = 0.0;
    return out;
  }
  out.value = prod / (nf * ng);
  if (p.p_minus() < 1.0) out.flags.push_back("p_minus<1: bound outside hypothesis, recorded only");
  return out;
}

real_vec hl_maximal(const GridSignal& f) {
  const int n = f.grid.n;
  // prefix sums over three wrapped periods keep every centered window
  // contiguous; long double keeps the cancellation error below 1e-15
  std::vector<long double> pre(3 * n + 1, 0.0L);
  for (int j = 0; j < 3 * n; ++j) pre[j + 1] = pre[j] + std::abs(f[j % n]);
  real_vec out(n, 0.0);
  const int kmax = (n - 1) / 2;  // larger windows would double-count on the torus
  for (int i = 0; i < n; ++i) {
    long double best = std::abs(f[i]);  // k = 0 window, exact
    for (int k = 1; k <= kmax; ++k) {
      const long double s = pre[i + k + n + 1] - pre[i - k + n];
      best = std::max(best, s / (2 * k + 1));
    }
    out[i] = static_cast<double>(best);
  }
  return out;
}

real_vec hl_maximal_reference(const GridSignal& f) {
  const int n = f.grid.n;
  real_vec out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double best = 0.0;
    for (int k = 0; k <= (n - 1) / 2; ++k) {
      double s = 0.0;
      for (int j = i - k; j <= i + k; ++j) s += std::abs(f[f.grid.wrap(j)]);
      best = std::max(best, s / (2 * k + 1));
    }
    out[i] = best;
  }
  return out;
}

namespace {

// antiderivative of eta_{nu,m} on x >= 0; odd extension handles x < 0
double eta_antideriv(double x, int nu, int m) {
  const double s = std::pow(2.0, nu);
  const double mag = (1.0 - std::pow(1.0 + s * std::abs(x), 1.0 - m)) / (m - 1);
  return x < 0.0 ? -mag : mag;
}

// sum_{k > K} [(k + ca)^{1-m} - (k + cb)^{1-m}]
double pair_tail(double ca, double cb, int K, int m) {
  if (m == 2) return gsl_sf_psi(K + 1 + cb) - gsl_sf_psi(K + 1 + ca);
  return gsl_sf_hzeta(m - 1, K + 1 + ca) - gsl_sf_hzeta(m - 1, K + 1 + cb);
}

}  // namespace

real_vec eta_kernel(const SpatialGrid& grid, int nu, int m) {
  require(m >= 2, "eta_kernel: integer order m >= 2");
  const double L = grid.period;
  const double h = grid.step();
  const double s = std::pow(2.0, nu);
  const int K = 8;
  const double coef = std::pow(s * L, 1.0 - m) / (m - 1);
  real_vec out(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double a = grid.node(i) - 0.5 * h;
    const double b = grid.node(i) + 0.5 * h;
    double acc = 0.0;
    for (int k = -K; k <= K; ++k)
      acc += eta_antideriv(b + k * L, nu, m) - eta_antideriv(a + k * L, nu, m);
    auto c = [&](double x) { return (1.0 + s * x) / (s * L); };
    acc += coef * pair_tail(c(a), c(b), K, m);   // k > K
    acc += coef * pair_tail(c(-b), c(-a), K, m); // k < -K, reflected
    out[i] = acc / h;
  }
  return out;
}

GridSignal eta_convolve(const SpatialGrid& grid, int nu, int m, const GridSignal& f) {
  require(grid == f.grid, "eta_convolve: grid mismatch");
  real_vec ker = eta_kernel(grid, nu, m);
  GridSignal k(grid);
  for (int i = 0; i < grid.n; ++i) k[i] = ker[i];
  return convolve(grid, to_frequency(k), f);
}

ExponentField make_named_exponent(const SpatialGrid& grid, const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  require(!parts.empty(), "make_named_exponent: empty spec");
  auto arg = [&](std::size_t i, double dflt) {
    return parts.size() > i ? std::stod(parts[i]) : dflt;
  };
  real_vec p(grid.n);
  const std::string& kind = parts[0];
  if (kind == "constant") {
    const double p0 = arg(1, 2.0);
    std::fill(p.begin(), p.end(), p0);
  } else if (kind == "sin2") {
    const double base = arg(1, 2.0), amp = arg(2, 1.0), freq = arg(3, 1.0), phase = arg(4, 0.0);
    for (int i = 0; i < grid.n; ++i) {
      const double sn = std::sin(freq * grid.node(i) + phase);
      p[i] = base + amp * sn * sn;
    }
  } else if (kind == "step") {
    const double p_out = arg(1, 2.0), p_in = arg(2, 3.0), center = arg(3, 0.0), radius = arg(4, 1.0);
    for (int i = 0; i < grid.n; ++i)
      p[i] = grid.torus_dist(grid.node(i) - center) < radius ? p_in : p_out;
  } else if (kind == "logdecay") {
    const double p_inf = arg(1, 2.0), c = arg(2, 1.0);
    for (int i = 0; i < grid.n; ++i)
      p[i] = p_inf + c / std::log(std::exp(1.0) + std::abs(grid.node(i)));
  } else {
    require(false, "make_named_exponent: unknown kind " + kind);
  }
  return ExponentField(grid, std::move(p));
}

}  // namespace coorbit

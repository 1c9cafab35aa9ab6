#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coorbit/signals.hpp"
#include "coorbit/varexp.hpp"

using namespace coorbit;

namespace {

const SpatialGrid G{1024, 64.0};  // h = 1/16, unit intervals hold 16 cells

// indicator of [lo, hi) in space
GridSignal box_signal(const SpatialGrid& g, double lo, double hi, cplx amp = 1.0) {
  GridSignal f(g);
  for (int i = 0; i < g.n; ++i)
    if (g.node(i) >= lo && g.node(i) < hi) f[i] = amp;
  return f;
}

void set_exponent_on(ExponentField& p, double lo, double hi, double value) {
  for (int i = 0; i < p.grid.n; ++i)
    if (p.grid.node(i) >= lo && p.grid.node(i) < hi) p.p[i] = value;
}

}  // namespace

TEST_CASE("constant exponents reduce to the classical norm") {
  for (double p0 : {0.5, 1.0, 2.0, 3.0}) {
    ExponentField p(G, p0);
    GridSignal f = random_bandlimited(G, 11 + static_cast<int>(10 * p0), 20.0);
    double classical = 0.0;
    for (int i = 0; i < G.n; ++i) classical += std::pow(std::abs(f[i]), p0) * G.step();
    classical = std::pow(classical, 1.0 / p0);
    CHECK(luxemburg_norm(p, f) == doctest::Approx(classical).epsilon(1e-9));
  }
}

TEST_CASE("two-level exponent against closed-form roots") {
  // f = 1 on two unit intervals A, B with exponents (pA, pB); the unit-modular
  // equation is lambda^-pA + lambda^-pB = 1
  GridSignal f = box_signal(G, 0.0, 1.0);
  GridSignal fb = box_signal(G, 2.0, 3.0);
  for (int i = 0; i < G.n; ++i) f[i] += fb[i];

  SUBCASE("pA=1, pB=2 gives the golden ratio") {
    ExponentField p(G, 5.0);
    set_exponent_on(p, 0.0, 1.0, 1.0);
    set_exponent_on(p, 2.0, 3.0, 2.0);
    const double golden = 0.5 * (1.0 + std::sqrt(5.0));
    CHECK(luxemburg_norm(p, f) == doctest::Approx(golden).epsilon(1e-10));
  }
  SUBCASE("pA=2, pB=3 gives the plastic number") {
    ExponentField p(G, 5.0);
    set_exponent_on(p, 0.0, 1.0, 2.0);
    set_exponent_on(p, 2.0, 3.0, 3.0);
    // independent oracle: Newton iteration on x^3 - x - 1 in long double
    long double x = 1.3L;
    for (int it = 0; it < 60; ++it) x -= (x * x * x - x - 1.0L) / (3.0L * x * x - 1.0L);
    CHECK(luxemburg_norm(p, f) == doctest::Approx(static_cast<double>(x)).epsilon(1e-10));
  }
}

TEST_CASE("luxemburg norm lands on the unit modular sphere") {
  const std::vector<std::string> shapes = {"constant:0.8", "constant:2", "sin2:2:1:1:0",
                                           "logdecay:1.5:1", "step:1.2:3:0:2"};
  int checked = 0;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    ExponentField p = make_named_exponent(G, shapes[s]);
    for (int k = 0; k < 6; ++k) {
      GridSignal f = random_bandlimited(G, 100 * s + k, 25.0);
      const double lam = luxemburg_norm(p, f);
      REQUIRE(lam > 0.0);
      GridSignal scaled = f;
      for (auto& z : scaled.v) z /= lam;
      const double rho = modular(p, scaled);
      CHECK(rho > 1.0 - 1e-8);
      CHECK(rho < 1.0 + 1e-8);
      ++checked;
    }
  }
  CHECK(checked == 30);
}

TEST_CASE("luxemburg norm basic properties") {
  ExponentField p = make_named_exponent(G, "sin2:1.3:0.9:0.7:0.3");
  GridSignal f = random_bandlimited(G, 5, 20.0);
  GridSignal g = random_bandlimited(G, 6, 20.0);
  const double nf = luxemburg_norm(p, f);

  SUBCASE("homogeneity") {
    GridSignal cf = f;
    for (auto& z : cf.v) z *= cplx(-2.5, 1.0);
    const double c = std::abs(cplx(-2.5, 1.0));
    CHECK(luxemburg_norm(p, cf) == doctest::Approx(c * nf).epsilon(1e-11));
  }
  SUBCASE("monotone in |f|") {
    GridSignal half = f;
    for (auto& z : half.v) z *= 0.5;
    CHECK(luxemburg_norm(p, half) <= nf * (1.0 + 1e-12));
  }
  SUBCASE("triangle inequality for p >= 1") {
    ExponentField p1 = make_named_exponent(G, "sin2:1.5:1:1:0");
    GridSignal sum = f;
    for (int i = 0; i < G.n; ++i) sum[i] += g[i];
    CHECK(luxemburg_norm(p1, sum) <=
          (luxemburg_norm(p1, f) + luxemburg_norm(p1, g)) * (1.0 + 1e-10));
  }
  SUBCASE("quasi-triangle constant for p^- < 1 stays under 2^{1/p^- - 1}") {
    ExponentField ph = make_named_exponent(G, "constant:0.5");
    GridSignal sum = f;
    for (int i = 0; i < G.n; ++i) sum[i] += g[i];
    const double c_bound = std::pow(2.0, 1.0 / 0.5 - 1.0);
    CHECK(luxemburg_norm(ph, sum) <=
          c_bound * (luxemburg_norm(ph, f) + luxemburg_norm(ph, g)) * (1.0 + 1e-10));
  }
}

TEST_CASE("modular with an essential-sup region") {
  SpatialGrid g{8, 8.0};
  ExponentField p(g, 2.0);
  for (int i = 4; i < 8; ++i) p.p[i] = INF;
  GridSignal f(g);
  f[0] = 1.0;
  f[1] = 1.0;
  f[4] = 3.0;
  f[5] = 0.5;
  CHECK(modular(p, f) == doctest::Approx(2.0 * g.step() + 3.0).epsilon(1e-15));
  ExponentField pinf(g, INF);
  CHECK(luxemburg_norm(pinf, f) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("Hoelder ratio stays under 4 when p >= 1") {
  std::vector<ExponentField> ps;
  ps.push_back(make_named_exponent(G, "constant:1.5"));
  ps.push_back(make_named_exponent(G, "sin2:2:1:1:0"));
  ps.push_back(make_named_exponent(G, "logdecay:2:1"));
  ps.push_back(make_named_exponent(G, "step:1.2:4:0:3"));
  ExponentField with_inf = make_named_exponent(G, "constant:2");
  for (int i = 0; i < 64; ++i) with_inf.p[i] = INF;
  ps.push_back(with_inf);
  int idx = 0;
  for (const auto& p : ps) {
    for (int k = 0; k < 10; ++k) {
      GridSignal f = random_bandlimited(G, 777 + 31 * idx + k, 22.0);
      GridSignal g = random_bandlimited(G, 999 + 17 * idx + k, 22.0);
      Flagged r = holder_defect(p, f, g);
      CHECK(r.flags.empty());
      CHECK(r.value <= 4.0);
      CHECK(r.value > 0.0);
    }
    ++idx;
  }
}

TEST_CASE("Hoelder ratio below 1 is only recorded, not asserted") {
  ExponentField p = make_named_exponent(G, "constant:0.7");
  GridSignal f = random_bandlimited(G, 1, 22.0);
  GridSignal g = random_bandlimited(G, 2, 22.0);
  Flagged r = holder_defect(p, f, g);
  REQUIRE(r.flags.size() == 1);
  CHECK(r.value > 0.0);
}

TEST_CASE("log-Hoelder diagnostics") {
  SUBCASE("constant exponent: zero constants, no failure") {
    LogHolderReport rep = log_holder_report(make_named_exponent(G, "constant:2"));
    CHECK(rep.c_local < 1e-12);
    CHECK(rep.c_decay < 1e-12);
    CHECK(!rep.fails);
  }
  SUBCASE("smooth exponent passes") {
    LogHolderReport rep = log_holder_report(make_named_exponent(G, "sin2:2:1:1:0"));
    CHECK(rep.c_local > 0.0);
    CHECK(!rep.fails);
  }
  SUBCASE("jump exponent is caught by the refinement test") {
    LogHolderReport rep = log_holder_report(make_named_exponent(G, "step:2:3:0:2"));
    CHECK(rep.fails);
  }
  SUBCASE("log-decay exponent has the expected decay constant") {
    const double c = 1.0, p_inf = 2.0;
    LogHolderReport rep = log_holder_report(make_named_exponent(G, "logdecay:2:1"));
    CHECK(rep.c_decay > 0.0);
    CHECK(rep.c_decay <= c / (p_inf * p_inf) * 1.1);
    CHECK(!rep.fails);
  }
}

TEST_CASE("maximal operator: fast path equals the naive reference") {
  SpatialGrid g{128, 16.0};
  GridSignal f = random_bandlimited(g, 31, 10.0);
  real_vec fast = hl_maximal(f);
  real_vec slow = hl_maximal_reference(f);
  for (int i = 0; i < g.n; ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-13));
}

TEST_CASE("maximal operator properties") {
  SpatialGrid g{256, 16.0};
  GridSignal f = random_bandlimited(g, 8, 15.0);
  real_vec mf = hl_maximal(f);
  SUBCASE("dominates |f| and constants are fixed points") {
    for (int i = 0; i < g.n; ++i) CHECK(mf[i] >= std::abs(f[i]) - 1e-15);
    GridSignal one(g);
    for (auto& z : one.v) z = 1.0;
    real_vec mone = hl_maximal(one);
    for (int i = 0; i < g.n; ++i) CHECK(mone[i] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("sublinear") {
    GridSignal q = random_bandlimited(g, 9, 15.0);
    GridSignal s = f;
    for (int i = 0; i < g.n; ++i) s[i] += q[i];
    real_vec ms = hl_maximal(s);
    real_vec mq = hl_maximal(q);
    for (int i = 0; i < g.n; ++i) CHECK(ms[i] <= mf[i] + mq[i] + 1e-14);
  }
  SUBCASE("single spike has the 1/(2k+1) profile") {
    GridSignal spike(g);
    const int j = 40;
    spike[j] = 1.0;
    real_vec m = hl_maximal(spike);
    for (int i = 0; i < g.n; ++i) {
      int d = std::abs(i - j);
      d = std::min(d, g.n - d);
      if (d > (g.n - 1) / 2) continue;  // out of reach of any valid window
      CHECK(m[i] == doctest::Approx(1.0 / (2 * d + 1)).epsilon(1e-14));
    }
  }
}

TEST_CASE("eta kernel mass, symmetry, positivity") {
  SpatialGrid g{512, 16.0};
  for (auto [nu, m] : std::vector<std::pair<int, int>>{{0, 2}, {2, 2}, {0, 3}, {3, 4}}) {
    real_vec ker = eta_kernel(g, nu, m);
    double mass = 0.0;
    for (double v : ker) {
      CHECK(v > 0.0);
      mass += v;
    }
    mass *= g.step();
    CHECK(mass == doctest::Approx(2.0 / (m - 1)).epsilon(1e-12));
    for (int k = 1; k < g.n / 2; ++k)
      CHECK(ker[g.n / 2 + k] == doctest::Approx(ker[g.n / 2 - k]).epsilon(1e-12));
    // radially decreasing away from the center node
    for (int k = 1; k < g.n / 2; ++k) CHECK(ker[g.n / 2 + k] <= ker[g.n / 2 + k - 1]);
  }
}

TEST_CASE("eta convolution: constant reproduces the total mass") {
  SpatialGrid g{256, 16.0};
  GridSignal one(g);
  for (auto& z : one.v) z = 1.0;
  for (int m : {2, 3}) {
    GridSignal out = eta_convolve(g, 1, m, one);
    for (int i = 0; i < g.n; ++i)
      CHECK(out[i].real() == doctest::Approx(2.0 / (m - 1)).epsilon(1e-12));
  }
}

TEST_CASE("eta convolution is dominated by the maximal function") {
  SpatialGrid g{256, 16.0};
  GridSignal f = random_bandlimited(g, 77, 15.0);
  GridSignal absf(g);
  for (int i = 0; i < g.n; ++i) absf[i] = std::abs(f[i]);
  real_vec mf = hl_maximal(f);
  for (int m : {2, 3, 4}) {
    real_vec ker = eta_kernel(g, 2, m);
    double mass = 0.0;
    for (double v : ker) mass += v;
    mass *= g.step();
    GridSignal conv = eta_convolve(g, 2, m, absf);
    for (int i = 0; i < g.n; ++i)
      CHECK(conv[i].real() <= mass * mf[i] * (1.0 + 1e-10) + 1e-15);
  }
}

TEST_CASE("named exponent generators") {
  ExponentField a = make_named_exponent(G, "sin2:2:1:1:0");
  ExponentField b = make_named_exponent(G, "sin2:2:1:1:0");
  for (int i = 0; i < G.n; ++i) CHECK(a.p[i] == b.p[i]);
  CHECK(a.p_minus() >= 2.0);
  CHECK(a.p_plus_finite() <= 3.0);
  ExponentField c = make_named_exponent(G, "constant:1.5");
  CHECK(c.p_minus() == 1.5);
  CHECK(!c.has_inf());
  // conjugate exponent pointwise identity 1/p + 1/p' = 1
  ExponentField cc = c.conjugate();
  CHECK(cc.p[0] == doctest::Approx(3.0));
}

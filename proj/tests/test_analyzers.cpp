#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coorbit/analyzers.hpp"
#include "coorbit/grid.hpp"

using namespace coorbit;

namespace {

constexpr double TWO_PI = 2.0 * PI;

}  // namespace

TEST_CASE("glue ramp: endpoints, symmetry, monotonicity") {
  CHECK(ramp(0.0) == 0.0);
  CHECK(ramp(-2.0) == 0.0);
  CHECK(ramp(1.0) == 1.0);
  CHECK(ramp(3.0) == 1.0);
  double prev = -1.0;
  for (int s = 0; s <= 200; ++s) {
    const double x = s / 200.0;
    const double r = ramp(x);
    CHECK(r >= prev);
    prev = r;
    CHECK(std::abs(ramp(x) + ramp(1.0 - x) - 1.0) < 1e-15);
    CHECK(std::abs(ramp_alt(x) + ramp_alt(1.0 - x) - 1.0) < 1e-14);
  }
  // the two glue profiles are genuinely different functions
  CHECK(std::abs(ramp(0.3) - ramp_alt(0.3)) > 1e-3);
}

TEST_CASE("band generators: pointwise window identities") {
  MeyerSystem sys = meyer_generators();
  const double c0 = 1.0 / std::sqrt(TWO_PI);
  CHECK(std::abs(sys.psi0_hat(0.0).real() - c0) == 0.0);
  CHECK(std::abs(sys.psi0_hat(10.0)) == 0.0);

  // |psi0|^2 + |psi1|^2 = 1/(2 pi) on the low band
  for (int s = 0; s <= 400; ++s) {
    const double xi = -4.0 * PI / 3.0 + s * (8.0 * PI / 3.0) / 400.0;
    const double tot = std::norm(sys.psi0_hat(xi)) + std::norm(sys.psi1_hat(xi));
    CHECK(std::abs(tot - 1.0 / TWO_PI) < 1e-15);
  }
  // dyadic modulus squares of psi1 partition 1/(2 pi) away from 0
  for (int s = 0; s <= 100; ++s) {
    const double xi = 2.2 + s * (8.0 - 2.2) / 100.0;
    double tot = 0.0;
    for (int j = -2; j <= 2; ++j) tot += std::norm(sys.psi1_hat(std::pow(2.0, -j) * xi));
    CHECK(std::abs(tot - 1.0 / TWO_PI) < 1e-15);
  }
  // linear phase factor of psi1
  const double xi = 3.0;
  const cplx expect = sys.psi1_mod(xi) * std::exp(cplx(0.0, 0.5 * xi));
  CHECK(std::abs(sys.psi1_hat(xi) - expect) == 0.0);
}

TEST_CASE("periodized wavelet atoms are orthonormal on an integer-length torus") {
  SpatialGrid g{2048, 16.0};
  MeyerSystem sys = meyer_generators();

  struct Idx {
    int c, j;
    long k;
  };
  const Idx atoms[] = {{0, 0, 0}, {0, 0, 5},  {0, 0, 15},  {1, 0, 0},   {1, 0, 3},
                       {1, 1, 0}, {1, 2, 7},  {1, 2, 8},   {1, 3, 1},   {1, 4, 0},
                       {1, 4, 33}, {1, 5, 0}, {1, 5, 100}, {1, 5, 511}};
  const int count = sizeof(atoms) / sizeof(atoms[0]);
  std::vector<GridSignal> sig;
  for (int i = 0; i < count; ++i)
    sig.push_back(meyer_atom(g, sys, atoms[i].c, atoms[i].j, atoms[i].k));
  for (int i = 0; i < count; ++i) {
    CHECK(std::abs(signal_inner(sig[i], sig[i]).real() - 1.0) < 1e-10);
    for (int l = i + 1; l < count; ++l) CHECK(std::abs(signal_inner(sig[i], sig[l])) < 1e-10);
  }
}

TEST_CASE("admissible pair: closure identity and compact supports") {
  AnalyzerPair pair = meyer_pair();
  CHECK(pair.parseval_const == 1.0 / TWO_PI);
  CHECK(pair.moment_order == -1);
  CHECK(std::abs(pair.phi_hat(1.0)) == 0.0);       // inside the low gap
  CHECK(std::abs(pair.phi0_hat(8.5)) == 0.0);      // beyond the declared band
  CHECK(std::abs(pair.phi0_hat(-9.0)) == 0.0);
  for (int s = 0; s <= 160; ++s) {
    const double xi = 0.1 + s * (10.0 - 0.1) / 160.0;
    for (double sgn : {1.0, -1.0}) {
      const double cov = std::norm(pair.phi0_hat(sgn * xi)) + scale_energy(pair, sgn * xi);
      CHECK(std::abs(cov - 1.0 / TWO_PI) < 1e-11);
    }
  }
}

TEST_CASE("admissible pair: unnormalized closure constant equals ln 2 / (2 pi)") {
  MeyerSystem sys = meyer_generators();
  FreqProfile w = [sys](double xi) { return sys.psi1_hat(xi); };
  AnalyzerPair u = make_admissible_pair("u", w, TWO_PI / 3.0, 8.0 * PI / 3.0, -1.0, false);
  CHECK(std::abs(u.parseval_const - std::log(2.0) / TWO_PI) < 1e-10);
  // explicit closure equal to the inferred one keeps the low-pass unchanged
  AnalyzerPair v =
      make_admissible_pair("v", w, TWO_PI / 3.0, 8.0 * PI / 3.0, u.parseval_const, false);
  for (double xi : {0.3, 1.0, 2.5, 4.0, 7.0})
    CHECK(std::abs(v.phi0_hat(xi) - u.phi0_hat(xi)) < 1e-12);
}

TEST_CASE("admissible pair: amplitude homogeneity of the derived low-pass") {
  MeyerSystem sys = meyer_generators();
  FreqProfile w = [sys](double xi) { return sys.psi1_hat(xi); };
  AnalyzerPair u = make_admissible_pair("u", w, TWO_PI / 3.0, 8.0 * PI / 3.0, -1.0, false);
  const double a = 1.7;
  FreqProfile wa = [sys, a](double xi) { return a * sys.psi1_hat(xi); };
  AnalyzerPair ua = make_admissible_pair("ua", wa, TWO_PI / 3.0, 8.0 * PI / 3.0,
                                         a * a * u.parseval_const, false);
  for (double xi : {0.2, 0.9, 2.2, 3.3, 6.0, 8.0}) {
    CHECK(std::abs(ua.phi_hat(xi) - a * u.phi_hat(xi)) < 1e-12);
    // sqrt near the band edge amplifies the quadrature tolerance
    CHECK(std::abs(ua.phi0_hat(xi) - a * u.phi0_hat(xi)) < 1e-9);
  }
}

TEST_CASE("admissible pair: rejects a closure constant below the wavelet energy") {
  MeyerSystem sys = meyer_generators();
  FreqProfile w = [sys](double xi) { return sys.psi1_hat(xi); };
  AnalyzerPair u = make_admissible_pair("u", w, TWO_PI / 3.0, 8.0 * PI / 3.0, -1.0, false);
  CHECK_THROWS_AS(make_admissible_pair("bad", w, TWO_PI / 3.0, 8.0 * PI / 3.0,
                                       0.5 * u.parseval_const, false),
                  std::invalid_argument);
}

TEST_CASE("tauberian scan: octave-quadruple band passes at the boundary radius") {
  AnalyzerPair pair = meyer_pair();
  TauberianReport rep = tauberian_check(pair, 10.0);
  CHECK(rep.pass);
  CHECK(std::abs(rep.eps - 4.0 * PI / 3.0) < 1e-12);
  CHECK(rep.eps0 > 4.0);
  CHECK(rep.eps0 <= 4.0 * PI / 3.0 * (1.0 + 1e-3));
  CHECK(std::abs(rep.coverage_inf - 1.0 / TWO_PI) < 1e-11);

  AnalyzerPair bb = bump_band_pair();
  TauberianReport rb = tauberian_check(bb, 5.0);
  CHECK(rb.pass);
  CHECK(std::abs(rb.eps - 1.0) < 1e-12);
  CHECK(rb.eps0 > 0.9);
  CHECK(rb.eps0 <= 1.0 + 1e-3);
  CHECK(std::abs(rb.coverage_inf - 1.0 / TWO_PI) < 1e-11);
}

TEST_CASE("moment scan: gap windows vanish to all orders, others fail at the right order") {
  AnalyzerPair pair = meyer_pair();
  MomentReport rep = moment_check(pair, 8);
  CHECK(rep.pass);
  CHECK(rep.first_failed == -1);
  CHECK(rep.max_excess == 0.0);

  AnalyzerPair odd;
  odd.phi_hat = [](double xi) { return cplx(xi * std::exp(-xi * xi)); };
  odd.support_lo = 1.0;
  odd.support_hi = 4.0;
  MomentReport ro = moment_check(odd, 2);
  CHECK(!ro.pass);
  CHECK(ro.first_failed == 1);
  CHECK(ro.max_excess > 0.9);

  AnalyzerPair even;
  even.phi_hat = [](double xi) { return cplx(std::exp(-xi * xi)); };
  even.support_lo = 1.0;
  even.support_hi = 4.0;
  MomentReport re = moment_check(even, 2);
  CHECK(!re.pass);
  CHECK(re.first_failed == 0);
}

TEST_CASE("dyadic partition: exact telescoping and level supports") {
  for (int kind : {0, 1}) {
    DyadicPU pu = dyadic_partition(kind);
    const int J = 6;
    for (int s = 0; s <= 300; ++s) {
      const double xi = -64.0 + s * 128.0 / 300.0;
      double tot = pu.phi0(xi);
      for (int j = 1; j <= J; ++j) tot += pu.phi(std::pow(2.0, -j) * xi);
      CHECK(std::abs(tot - 1.0) < 1e-15);
    }
    CHECK(pu.phi0(0.5) == 1.0);
    CHECK(pu.phi0(1.0) == 1.0);
    CHECK(pu.phi0(2.0) == 0.0);
    CHECK(pu.phi(0.5) == 0.0);
    CHECK(pu.phi(2.0) == 0.0);
    CHECK(pu.phi(1.3) > 0.0);
    // exactly two consecutive levels overlap at a generic point
    int active = 0;
    for (int j = 0; j <= 4; ++j)
      if (pu.phi(std::pow(2.0, -j) * 3.0) > 0.0) ++active;
    CHECK(active == 2);
  }
  CHECK(std::abs(dyadic_partition(0).phi0(1.3) - dyadic_partition(1).phi0(1.3)) > 1e-3);
}

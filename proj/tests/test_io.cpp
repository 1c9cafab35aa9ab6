#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "coorbit/config.hpp"
#include "coorbit/discretize.hpp"
#include "coorbit/io.hpp"

using namespace coorbit;

namespace {

GridSignal noisy(const SpatialGrid& g, std::uint64_t seed) {
  Rng rng(seed);
  GridSignal f(g);
  for (int i = 0; i < g.n; ++i) f[i] = cplx(rng.normal(), rng.normal());
  return f;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("fmt17 round-trips doubles exactly") {
  for (double v : {0.0, -0.0, 1.0, -1.5, 1e-300, -2.2250738585072014e-308, 1.7976931348623157e308,
                   3.141592653589793, 0.1, 1.0 / 3.0, INF}) {
    CHECK(std::stod(fmt17(v)) == v);
  }
  CHECK(fmt17(INF) == "inf");
}

TEST_CASE("signal and exponent csv round-trip bit-exactly") {
  SpatialGrid g{64, 8.0};
  GridSignal f = noisy(g, 7);
  GridSignal back = parse_signal_csv(g, signal_csv(f));
  for (int i = 0; i < g.n; ++i) {
    CHECK(back[i].real() == f[i].real());
    CHECK(back[i].imag() == f[i].imag());
  }

  real_vec pv(g.n, 2.0);
  pv[3] = 0.5;
  pv[10] = INF;
  pv[40] = 3.7519;
  ExponentField p(g, pv);
  const std::string text = exponent_csv(p);
  CHECK(text.find(",inf\n") != std::string::npos);
  ExponentField q = parse_exponent_csv(g, text);
  for (int i = 0; i < g.n; ++i) CHECK(q.p[i] == p.p[i]);

  CHECK_THROWS(parse_signal_csv(g, "index,re,im\n0,1,2\n"));
  CHECK_THROWS(parse_exponent_csv(g, exponent_csv(p) + "64,2\n"));
}

TEST_CASE("field csv and gnuplot matrix shapes") {
  SpatialGrid g{16, 4.0};
  ScaleAxis ax{2.0, 2, 2};
  XField F(g, ax);
  F.at(1, 5) = cplx(0.25, -3.0);
  const std::string csv = field_csv(F);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == static_cast<std::size_t>(F.slots() * g.n + 1));
  CHECK(csv.find("1,5,0.25,-3\n") != std::string::npos);

  const std::string mat = field_matrix(F);
  lines = 0;
  for (char c : mat) lines += c == '\n';
  CHECK(lines == static_cast<std::size_t>(F.slots()));
  const std::string first = mat.substr(0, mat.find('\n'));
  std::size_t cols = 1;
  for (char c : first) cols += c == ' ';
  CHECK(cols == static_cast<std::size_t>(g.n));
}

TEST_CASE("profile csv covers the grid bins in ascending order") {
  SpatialGrid g{16, 4.0};
  const std::string text = profile_csv(g, [](double xi) { return cplx(xi, 0.0); });
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == static_cast<std::size_t>(g.n + 1));
  CHECK(text.substr(0, text.find('\n')) == "xi,re,im");
  const std::string second = text.substr(text.find('\n') + 1);
  CHECK(second.substr(0, second.find(',')) == fmt17(-2.0 * PI * (g.n / 2) / g.period));
}

TEST_CASE("norm report json is stable") {
  NormResult r;
  r.value = 1.5;
  r.flags = {"truncation"};
  CHECK(norm_report_json("F", "def", r) ==
        "{\n  \"family\": \"F\",\n  \"flags\": [\n    \"truncation\"\n  ],\n"
        "  \"value\": 1.5,\n  \"variant\": \"def\"\n}\n");
}

TEST_CASE("sweep csv and plot data formatting") {
  SweepRow row;
  row.alpha = 0.5;
  row.beta = 2.0;
  row.osc_a1 = 0.125;
  row.osc_amnu = 0.25;
  row.ratio = 0.0625;
  row.resid = INF;
  CHECK(sweep_csv({row}) ==
        "alpha,beta,osc_a1,osc_amnu,contraction_ratio,recon_residual\n"
        "0.5,2,0.125,0.25,0.0625,inf\n");
  CHECK(plot_xy({1.0, 2.0}, {0.5, 0.25}) == "1 0.5\n2 0.25\n");
  CHECK_THROWS(plot_xy({1.0}, {0.5, 0.25}));
}

TEST_CASE("kernel tables round-trip through the binary layout") {
  SpatialGrid g{32, 4.0};
  ScaleAxis ax{2.0, 2, 2};
  VoiceTransform vt = VoiceTransform::make(g, ax, meyer_pair());
  KernelOp R = frame_kernel(vt);

  TempFile tf("io_test_kernel.bin");
  save_kernel_bin(tf.path, R);
  KernelOp back = load_kernel_bin(tf.path, g, ax);
  CHECK(back.invariant);
  REQUIRE(back.rings.size() == R.rings.size());
  for (std::size_t r = 0; r < R.rings.size(); ++r)
    for (int u = 0; u < g.n; ++u) {
      CHECK(back.rings[r][u].real() == R.rings[r][u].real());
      CHECK(back.rings[r][u].imag() == R.rings[r][u].imag());
    }
  CHECK_THROWS(load_kernel_bin(tf.path, g, ScaleAxis{2.0, 2, 3}));

  const int cells = (ax.slots() + 1) * g.n;
  real_vec vals(static_cast<std::size_t>(cells) * cells);
  Rng rng(3);
  for (double& v : vals) v = rng.uniform();
  KernelOp D = KernelOp::dense_from(g, ax, vals);
  TempFile td("io_test_dense.bin");
  save_kernel_bin(td.path, D);
  KernelOp dback = load_kernel_bin(td.path, g, ax);
  CHECK(!dback.invariant);
  for (std::size_t k = 0; k < vals.size(); ++k) CHECK(dback.dense[k] == vals[k]);
}

TEST_CASE("config text parses sections, comments and qualified keys") {
  ConfigMap kv = parse_config_text(
      "# comment\n\n[grid]\nn = 64   # inline\nlength = 8\n\r\n[run]\nout = results\n"
      "space.family = B\n");
  CHECK(kv.at("grid.n") == "64");
  CHECK(kv.at("grid.length") == "8");
  CHECK(kv.at("run.out") == "results");
  CHECK(kv.at("run.space.family") == "B");

  ConfigMap flat = parse_config_text("grid.n = 32\n");
  CHECK(flat.at("grid.n") == "32");

  CHECK_THROWS_WITH_AS(parse_config_text("[grid\nn = 4\n"), doctest::Contains("config line 1"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("\njust words\n"), doctest::Contains("config line 2"),
                       std::invalid_argument);
}

TEST_CASE("experiment config: defaults, fixpoint, located rejections") {
  ExperimentConfig cfg = ExperimentConfig::defaults();
  cfg.validate();
  const std::string text = cfg.print_config();
  ExperimentConfig cfg2 = ExperimentConfig::defaults();
  cfg2.apply(parse_config_text(text));
  CHECK(cfg2.print_config() == text);

  auto rejects = [](const ConfigMap& kv, const char* msg) {
    ExperimentConfig bad = ExperimentConfig::defaults();
    CHECK_THROWS_WITH_AS(bad.apply(kv), doctest::Contains(msg), std::invalid_argument);
  };
  rejects({{"grid.m", "64"}}, "unknown key");
  rejects({{"grid.n", "100"}}, "grid.n");
  rejects({{"space.variant", "5"}}, "space.variant");
  rejects({{"axis.beta", "0.5"}}, "axis.beta");
  rejects({{"grid.n", "abc"}}, "not a number");
}

TEST_CASE("named signal generators match their direct constructors") {
  SpatialGrid g{128, 16.0};
  const int oct = 3;

  GridSignal z = make_named_signal(g, "zero", oct, 1);
  for (int i = 0; i < g.n; ++i) CHECK(std::abs(z[i]) == 0.0);

  GridSignal ga = make_named_signal(g, "gaussian:2:1", oct, 1);
  GridSignal gb = gaussian(g, 2.0, 1.0);
  for (int i = 0; i < g.n; ++i) CHECK(ga[i] == gb[i]);

  GridSignal ma = make_named_signal(g, "meyer-wavelet:1:3", oct, 1);
  GridSignal mb = meyer_atom(g, meyer_generators(), 1, 1, 3);
  for (int i = 0; i < g.n; ++i) CHECK(ma[i] == mb[i]);

  GridSignal ra = make_named_signal(g, "random-bandlimited:42", oct, 1);
  GridSignal rb = random_bandlimited(g, 42, battery_band_limit(g, oct));
  for (int i = 0; i < g.n; ++i) CHECK(ra[i] == rb[i]);

  GridSignal f = noisy(g, 11);
  TempFile tf("io_test_signal.csv");
  write_text_file(tf.path, signal_csv(f));
  GridSignal fc = make_named_signal(g, "csv:" + tf.path, oct, 1);
  for (int i = 0; i < g.n; ++i) CHECK(fc[i] == f[i]);

  CHECK_THROWS(make_named_signal(g, "sawtooth", oct, 1));
}

TEST_CASE("named analyzers") {
  AnalyzerPair meyer = make_named_analyzer("meyer");
  CHECK(meyer.support_lo == doctest::Approx(2.0 * PI / 3.0).epsilon(1e-15));
  CHECK(meyer.support_hi == doctest::Approx(8.0 * PI / 3.0).epsilon(1e-15));

  AnalyzerPair dp = make_named_analyzer("dyadic-pu");
  CHECK(std::abs(dp.phi0_hat(0.0)) > 0.0);
  CHECK(std::abs(dp.phi_hat(1.0)) > 0.0);
  CHECK(std::abs(dp.phi_hat(3.0)) == 0.0);
  CHECK(tauberian_check(dp, 20.0).pass);

  CHECK(make_named_analyzer("bump-band").name == "bump-band");
  CHECK_THROWS(make_named_analyzer("shannon"));
}

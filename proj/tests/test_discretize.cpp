#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coorbit/discretize.hpp"
#include "coorbit/signals.hpp"

using namespace coorbit;

namespace {

double rel_l2(const GridSignal& a, const GridSignal& b) {
  GridSignal d(a.grid);
  for (int i = 0; i < a.grid.n; ++i) d[i] = a[i] - b[i];
  return signal_l2(d) / signal_l2(b);
}

double field_resid(const Discretizer& d, const XField& F) {
  XField UF = d.apply(F);
  for (std::size_t k = 0; k < UF.data.size(); ++k) UF.data[k] -= F.data[k];
  return std::sqrt(field_l2sq_mu(UF) / field_l2sq_mu(F));
}

}  // namespace

TEST_CASE("sampled kernel operator: zero field and dense-sum oracle") {
  SpatialGrid g{32, 4.0};
  ScaleAxis ax{2.0, 4, 2};
  VoiceTransform vt = VoiceTransform::make(g, ax, meyer_pair());
  Covering cov = Covering::make(g, ax, 1.0, 2.0);
  Discretizer d = Discretizer::make(vt, cov);

  XField zero(g, ax);
  XField uz = d.apply(zero);
  for (const cplx& v : uz.data) CHECK(std::abs(v) == 0.0);

  KernelOp R = frame_kernel(vt);
  const int s0 = 3, i0 = 11;
  XField F(g, ax);
  for (int s = 0; s < F.slots(); ++s)
    for (int i = 0; i < g.n; ++i) F.at(s, i) = R.entry(s, i, s0, i0);
  const XField got = d.apply(F);
  double err = 0.0, scale = 0.0;
  for (int s = 0; s < F.slots(); ++s)
    for (int i = 0; i < g.n; ++i) {
      cplx want(0.0);
      for (const CoverBox& b : cov.boxes)
        want += b.mu * F.at(b.cell_slot, b.cell_node) * R.entry(s, i, b.cell_slot, b.cell_node);
      err = std::max(err, std::abs(got.at(s, i) - want));
      scale = std::max(scale, std::abs(want));
    }
  CHECK(err < 1e-10 * scale);
}

TEST_CASE("discretization residual shrinks along the covering sweep") {
  SpatialGrid g{128, 16.0};
  ScaleAxis ax{2.0, 8, 3};
  VoiceTransform vt = VoiceTransform::make(g, ax, meyer_pair());
  const XField V = voice_transform(vt, random_bandlimited(g, 5, battery_band_limit(g, 3)));

  const double r2 = std::pow(2.0, 0.5), r4 = std::pow(2.0, 0.25);
  real_vec alpha_chain;
  for (double a : {1.0, 0.5, 0.25, 0.125})
    alpha_chain.push_back(field_resid(Discretizer::make(vt, Covering::make(g, ax, a, r2)), V));
  for (std::size_t k = 1; k < alpha_chain.size(); ++k)
    CHECK(alpha_chain[k] <= alpha_chain[k - 1] * (1.0 + 1e-9));

  real_vec beta_chain;
  for (double b : {2.0, r2, r4})
    beta_chain.push_back(field_resid(Discretizer::make(vt, Covering::make(g, ax, 0.5, b)), V));
  for (std::size_t k = 1; k < beta_chain.size(); ++k)
    CHECK(beta_chain[k] <= beta_chain[k - 1] * (1.0 + 1e-9));
  CHECK(beta_chain.back() < 0.2);
}

TEST_CASE("neumann inversion: contraction, self-consistency, divergence guard") {
  SpatialGrid g{128, 16.0};
  ScaleAxis ax{2.0, 8, 3};
  VoiceTransform vt = VoiceTransform::make(g, ax, meyer_pair());
  GridSignal f = random_bandlimited(g, 9, battery_band_limit(g, 3));
  const XField V = voice_transform(vt, f);

  Discretizer d = Discretizer::make(vt, Covering::make(g, ax, 0.5, std::pow(2.0, 0.5)));
  NeumannResult nr = neumann_invert(d, V, 1e-6, 200);
  CHECK(nr.ratio < 0.5);
  CHECK(nr.residual < 1e-6);
  XField back = d.apply(nr.G);
  for (std::size_t k = 0; k < back.data.size(); ++k) back.data[k] -= V.data[k];
  CHECK(std::sqrt(field_l2sq_mu(back) / field_l2sq_mu(V)) < 2e-6);

  NeumannResult zr = neumann_invert(d, XField(g, ax), 1e-6, 200);
  CHECK(zr.iters == 0);
  CHECK(field_l2sq_mu(zr.G) == 0.0);

  Discretizer coarse = Discretizer::make(vt, Covering::make(g, ax, 2.0, 2.0));
  CHECK_THROWS_WITH_AS(neumann_invert(coarse, V, 1e-6, 200),
                       doctest::Contains("no contraction"), std::runtime_error);
}

TEST_CASE("atomic decomposition: reconstruction, concentration, norm band") {
  SpatialGrid g{128, 16.0};
  ScaleAxis ax{2.0, 8, 3};
  VoiceTransform vt = VoiceTransform::make(g, ax, meyer_pair());
  Covering cov = Covering::make(g, ax, 0.25, std::pow(2.0, 0.25));
  Discretizer d = Discretizer::make(vt, cov);

  SeqCoeffs zero(cov);
  GridSignal z = atomic_synthesize(d, zero);
  CHECK(signal_l2(z) == 0.0);

  SpaceSpec fs;
  fs.family = Family::F;
  fs.p = ExponentField(g, 2.0);
  fs.q = ExponentField(g, 2.0);
  fs.w = constant_weight();
  fs.a = 2.0;
  DyadicPU pu = dyadic_partition(0);

  double ratio_lo = INF, ratio_hi = 0.0;
  for (const GridSignal& f : signal_battery(g, 3, 5, 31)) {
    SeqCoeffs lam = atomic_decompose(d, f, 1e-8, 300);
    CHECK(rel_l2(atomic_synthesize(d, lam), f) < 1e-5);
    const double fn = f_norm(fs, f, pu, 6).value;
    SpaceSpec ps = fs;
    ps.family = Family::P;
    ps.w = wtilde(fs.w);
    const double sn = seq_norms(ps, lam).natural;
    const double r = sn / fn;
    ratio_lo = std::min(ratio_lo, r);
    ratio_hi = std::max(ratio_hi, r);
  }
  CHECK(ratio_hi / ratio_lo < 5.0);

  // a frame atom planted at a covering point concentrates its coefficients
  const CoverBox& home = cov.boxes[cov.box_count() / 2];
  GridSignal atom = frame_atom(vt, home.cell_slot, home.cell_node);
  SeqCoeffs lam = atomic_decompose(d, atom, 1e-8, 300);
  CHECK(rel_l2(atomic_synthesize(d, lam), atom) < 1e-5);
  double peak = 0.0;
  int arg = -1;
  for (int b = 0; b < cov.box_count(); ++b)
    if (std::abs(lam.entries[b]) > peak) {
      peak = std::abs(lam.entries[b]);
      arg = b;
    }
  const CoverBox& found = cov.boxes[arg];
  CHECK(found.level == home.level);
  CHECK(std::abs(found.sample_x - home.sample_x) <= 2.0 * (home.x_hi - home.x_lo) + 1e-12);
}

TEST_CASE("wavelet expansion: completeness, single-atom delta, homogeneity") {
  SpatialGrid g{2048, 8.0};
  MeyerSystem sys = meyer_generators();
  ScaleAxis ax{2.0, 2, 6};
  SpaceSpec spec;
  spec.family = Family::F;
  spec.p = ExponentField(g, 2.0);
  spec.q = ExponentField(g, 2.0);
  spec.w = constant_weight();
  spec.a = 2.0;

  for (std::uint64_t seed : {21, 22}) {
    GridSignal f = random_bandlimited(g, seed, 150.0);
    WaveletExpansion ex = wavelet_frame_expand(f, sys, spec, ax, 6);
    CHECK(ex.rel_error < 1e-8);
    CHECK(ex.seq.flat > 0.0);
    CHECK(ex.seq.natural > 0.0);

    GridSignal f2(g);
    for (int i = 0; i < g.n; ++i) f2[i] = 2.0 * f[i];
    WaveletExpansion ex2 = wavelet_frame_expand(f2, sys, spec, ax, 6);
    CHECK(std::abs(ex2.seq.flat / (2.0 * ex.seq.flat) - 1.0) < 1e-10);
    CHECK(std::abs(ex2.seq.natural / (2.0 * ex.seq.natural) - 1.0) < 1e-10);
  }

  GridSignal atom = meyer_atom(g, sys, 1, 3, 37);
  WaveletExpansion ex = wavelet_frame_expand(atom, sys, spec, ax, 6);
  CHECK(ex.rel_error < 1e-10);
  CHECK(std::abs(ex.wavelet[3][37] - 1.0) < 1e-10);
  double off = 0.0;
  for (int j = 0; j <= 6; ++j)
    for (std::size_t k = 0; k < ex.wavelet[j].size(); ++k)
      if (j != 3 || k != 37) off = std::max(off, std::abs(ex.wavelet[j][k]));
  for (const cplx& v : ex.base_scaling) off = std::max(off, std::abs(v));
  CHECK(off < 1e-10);
}

TEST_CASE("coorbit norm is the field norm of the transform") {
  SpatialGrid g{512, 16.0};
  ScaleAxis ax{2.0, 6, 5};
  VoiceTransform vt = VoiceTransform::make(g, ax, meyer_pair());
  SpaceSpec spec;
  spec.family = Family::F;
  spec.p = ExponentField(g, 2.0);
  spec.q = ExponentField(g, 1.5);
  spec.w = make_w2ml(g, 0.5, 0.0, 0.0);
  spec.a = 3.0;

  CHECK(coorbit_norm(vt, spec, GridSignal(g)).value == 0.0);

  GridSignal f = random_bandlimited(g, 12, battery_band_limit(g, 5));
  SpaceSpec ps = spec;
  ps.family = Family::P;
  ps.w = wtilde(spec.w);
  CHECK(coorbit_norm(vt, spec, f).value == pw_norm(ps, voice_transform(vt, f)).value);

  SpaceSpec bs = spec;
  bs.family = Family::B;
  bs.qtilde = 2.0;
  SpaceSpec ls = bs;
  ls.family = Family::L;
  ls.w = wtilde(bs.w);
  CHECK(coorbit_norm(vt, bs, f).value == lw_norm(ls, voice_transform(vt, f)).value);

  DyadicPU pu = dyadic_partition(0);
  double lo = INF, hi = 0.0;
  for (const GridSignal& s : signal_battery(g, 5, 6, 555)) {
    const double r = coorbit_norm(vt, spec, s).value / f_norm(spec, s, pu, 8).value;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo < 5.0);
}

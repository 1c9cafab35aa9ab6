#include "coorbit/discretize.hpp"

#include <stdexcept>

#include "coorbit/fft.hpp"

namespace coorbit {

namespace {

constexpr double SQRT_TWO_PI = 2.5066282746310005;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double field_norm_mu(const XField& F) { return std::sqrt(field_l2sq_mu(F)); }

}  // namespace

Discretizer Discretizer::make(const VoiceTransform& vt, const Covering& cover) {
  require(vt.grid.n == cover.grid.n && vt.axis.slots() == cover.axis.slots(),
          "discretizer: transform and covering disagree");
  Discretizer d;
  d.vt = vt;
  d.cover = cover;
  KernelOp R = frame_kernel(vt);
  d.rings_hat.resize(R.rings.size());
  for (std::size_t k = 0; k < R.rings.size(); ++k) {
    d.rings_hat[k] = std::move(R.rings[k]);
    fft_forward(d.rings_hat[k]);
  }
  return d;
}

XField Discretizer::apply(const XField& F) const {
  const SpatialGrid& g = vt.grid;
  const int n = g.n;
  const int S = vt.axis.slots() + 1;
  require(F.grid.n == n && F.axis.slots() == vt.axis.slots(),
          "discretizer: field window mismatch");
  // spike train of weighted samples per slot
  std::vector<cplx_vec> spike_hat(S);
  for (const CoverBox& b : cover.boxes) {
    if (spike_hat[b.cell_slot].empty()) spike_hat[b.cell_slot].assign(n, cplx(0.0));
    spike_hat[b.cell_slot][b.cell_node] += b.mu * F.at(b.cell_slot, b.cell_node);
  }
  for (int s = 0; s < S; ++s)
    if (!spike_hat[s].empty()) fft_forward(spike_hat[s]);

  XField out(g, F.axis);
  cplx_vec acc(n);
  for (int sx = 0; sx < S; ++sx) {
    std::fill(acc.begin(), acc.end(), cplx(0.0));
    for (int s = 0; s < S; ++s) {
      if (spike_hat[s].empty()) continue;
      const cplx_vec& rh = rings_hat[static_cast<std::size_t>(sx) * S + s];
      for (int q = 0; q < n; ++q) acc[q] += rh[q] * spike_hat[s][q];
    }
    fft_inverse(acc);
    for (int i = 0; i < n; ++i) out.at(sx, i) = acc[i] / static_cast<double>(n);
  }
  return out;
}

XField discretization_op(const VoiceTransform& vt, const Covering& cover, const XField& F) {
  return Discretizer::make(vt, cover).apply(F);
}

NeumannResult neumann_invert(const Discretizer& d, const XField& F, double tol, int max_iter) {
  require(tol > 0.0 && max_iter >= 1, "neumann_invert: bad tolerance or iteration cap");
  NeumannResult r;
  const double fn = field_norm_mu(F);
  if (fn == 0.0) {
    r.G = XField(F.grid, F.axis);
    return r;
  }
  XField G = F;
  XField res = F;
  {
    const XField UG = d.apply(G);
    for (std::size_t k = 0; k < res.data.size(); ++k) res.data[k] = F.data[k] - UG.data[k];
  }
  double res_norm = field_norm_mu(res);
  const double res0 = res_norm;
  for (int it = 1; it <= max_iter && res_norm / fn >= tol; ++it) {
    for (std::size_t k = 0; k < G.data.size(); ++k) G.data[k] += res.data[k];
    const XField UG = d.apply(G);
    for (std::size_t k = 0; k < res.data.size(); ++k) res.data[k] = F.data[k] - UG.data[k];
    res_norm = field_norm_mu(res);
    if (it == 1) {
      r.ratio = res0 == 0.0 ? 0.0 : res_norm / res0;
      if (r.ratio >= 1.0)
        throw std::runtime_error("neumann_invert: no contraction at this (alpha, beta), ratio " +
                                 std::to_string(r.ratio));
    }
    r.iters = it;
  }
  r.G = std::move(G);
  r.residual = res_norm / fn;
  return r;
}

XField neumann_invert(const VoiceTransform& vt, const Covering& cover, const XField& F,
                      double tol, int max_iter) {
  return neumann_invert(Discretizer::make(vt, cover), F, tol, max_iter).G;
}

SeqCoeffs atomic_decompose(const Discretizer& d, const GridSignal& f, double tol, int max_iter) {
  const XField V = voice_transform(d.vt, f);
  const NeumannResult inv = neumann_invert(d, V, tol, max_iter);
  SeqCoeffs out(d.cover);
  for (int b = 0; b < d.cover.box_count(); ++b) {
    const CoverBox& box = d.cover.boxes[b];
    out.entries[b] = box.mu * inv.G.at(box.cell_slot, box.cell_node);
  }
  return out;
}

GridSignal atomic_synthesize(const Discretizer& d, const SeqCoeffs& coeffs) {
  require(coeffs.cover != nullptr &&
              coeffs.entries.size() == static_cast<std::size_t>(d.cover.box_count()),
          "atomic_synthesize: coefficients do not match the covering");
  const SpatialGrid& g = d.vt.grid;
  const int n = g.n;
  const int S = d.vt.axis.slots() + 1;
  std::vector<cplx_vec> spike(S);
  for (int b = 0; b < d.cover.box_count(); ++b) {
    const CoverBox& box = d.cover.boxes[b];
    if (spike[box.cell_slot].empty()) spike[box.cell_slot].assign(n, cplx(0.0));
    spike[box.cell_slot][box.cell_node] += coeffs.entries[b];
  }
  cplx_vec spec(n, cplx(0.0));
  const double c = SQRT_TWO_PI / g.step();
  for (int s = 0; s < S; ++s) {
    if (spike[s].empty()) continue;
    GridSignal row(g);
    for (int i = 0; i < n; ++i) row[i] = spike[s][i];
    const cplx_vec w = to_frequency(row);
    for (int q = 0; q < n; ++q) spec[q] += std::conj(d.vt.analysis[s][q]) * (c * w[q]);
  }
  return to_space(g, spec);
}

WaveletExpansion wavelet_frame_expand(const GridSignal& f, const MeyerSystem& sys,
                                      const SpaceSpec& spec, const ScaleAxis& axis, int levels) {
  const SpatialGrid& g = f.grid;
  const long L = std::lround(g.period);
  require(std::abs(g.period - L) < 1e-12 && L >= 2 && L % 2 == 0,
          "wavelet_frame_expand: period must be an even integer");
  require(levels >= 0 && (L << levels) <= g.n, "wavelet_frame_expand: level range too deep");

  WaveletExpansion out;
  out.levels = levels;
  out.reconstruction = GridSignal(g);
  const double h = g.step();

  auto inner = [&](const GridSignal& atom) {
    cplx acc(0.0);
    for (int i = 0; i < g.n; ++i) acc += f[i] * std::conj(atom[i]);
    return acc * h;
  };

  out.base_scaling.resize(L);
  for (long k = 0; k < L; ++k) {
    const GridSignal atom = meyer_atom(g, sys, 0, 0, k);
    out.base_scaling[k] = inner(atom);
    for (int i = 0; i < g.n; ++i) out.reconstruction[i] += out.base_scaling[k] * atom[i];
  }
  out.wavelet.resize(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    const long K = L << j;
    out.wavelet[j].resize(K);
    for (long k = 0; k < K; ++k) {
      const GridSignal atom = meyer_atom(g, sys, 1, j, k);
      out.wavelet[j][k] = inner(atom);
      for (int i = 0; i < g.n; ++i) out.reconstruction[i] += out.wavelet[j][k] * atom[i];
    }
  }

  GridSignal diff(g);
  for (int i = 0; i < g.n; ++i) diff[i] = f[i] - out.reconstruction[i];
  const double fn = signal_l2(f);
  out.rel_error = fn == 0.0 ? 0.0 : signal_l2(diff) / fn;

  // coefficient sequence over the dyadic covering; base-level scaling and
  // wavelet parts combine at the infinite sheet
  const Covering cov = Covering::make(g, axis, 1.0, 2.0);
  require(cov.levels >= levels, "wavelet_frame_expand: axis does not reach the level range");
  SeqCoeffs lam(cov);
  auto wrap = [](long k, long K) { return (k + K / 2) % K; };
  for (long k = 0; k < L; ++k)
    lam.entries[cov.level_first[0] + wrap(k, L)] =
        std::sqrt(std::norm(out.base_scaling[k]) + std::norm(out.wavelet[0][k]));
  for (int j = 1; j <= levels; ++j) {
    const long K = L << j;
    for (long k = 0; k < K; ++k)
      lam.entries[cov.level_first[j] + wrap(k, K)] = out.wavelet[j][k];
  }
  SpaceSpec field_spec = spec;
  field_spec.w = wtilde(spec.w);
  field_spec.family = spec.family == Family::B || spec.family == Family::L ? Family::L : Family::P;
  out.seq = seq_norms(field_spec, lam);
  return out;
}

NormResult coorbit_norm(const VoiceTransform& vt, const SpaceSpec& spec, const GridSignal& f) {
  SpaceSpec field_spec = spec;
  field_spec.w = wtilde(spec.w);
  field_spec.family = spec.family == Family::B || spec.family == Family::L ? Family::L : Family::P;
  const XField V = voice_transform(vt, f);
  return field_spec.family == Family::P ? pw_norm(field_spec, V) : lw_norm(field_spec, V);
}

}  // namespace coorbit

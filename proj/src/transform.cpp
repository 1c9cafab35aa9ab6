#include "coorbit/transform.hpp"

#include <algorithm>

namespace coorbit {

namespace {

constexpr double SQRT_TWO_PI = 2.5066282746310002;

}  // namespace

VoiceTransform VoiceTransform::make(const SpatialGrid& grid, const ScaleAxis& axis,
                                    const AnalyzerPair& pair) {
  VoiceTransform vt;
  vt.grid = grid;
  vt.axis = axis;
  vt.pair = pair;
  vt.analysis.resize(axis.slots() + 1);
  for (int m = 0; m < axis.slots(); ++m) {
    cplx_vec filt = dilate_filter(grid, pair.phi_hat, axis.scale(m), Dilation::L2);
    for (cplx& c : filt) c = std::conj(c);
    vt.analysis[m] = std::move(filt);
  }
  cplx_vec filt0 = dilate_filter(grid, pair.phi0_hat, INF, Dilation::L2);
  for (cplx& c : filt0) c = std::conj(c);
  vt.analysis[axis.slots()] = std::move(filt0);
  return vt;
}

XField voice_transform(const VoiceTransform& vt, const GridSignal& f) {
  require(f.grid == vt.grid, "voice_transform: grid mismatch");
  XField out(vt.grid, vt.axis);
  const cplx_vec S = to_frequency(f);
  cplx_vec spec(vt.grid.n);
  for (int s = 0; s < out.slots(); ++s) {
    for (int q = 0; q < vt.grid.n; ++q) spec[q] = SQRT_TWO_PI * vt.analysis[s][q] * S[q];
    GridSignal slice = to_space(vt.grid, spec);
    std::copy(slice.v.begin(), slice.v.end(), out.row(s));
  }
  return out;
}

GridSignal voice_adjoint(const VoiceTransform& vt, const XField& F) {
  require(F.grid == vt.grid && F.axis == vt.axis, "voice_adjoint: geometry mismatch");
  cplx_vec acc(vt.grid.n, cplx(0.0));
  GridSignal slice(vt.grid);
  for (int s = 0; s < F.slots(); ++s) {
    std::copy(F.row(s), F.row(s) + vt.grid.n, slice.v.begin());
    const cplx_vec Shat = to_frequency(slice);
    const double wmu = vt.scale_weight(s);
    for (int q = 0; q < vt.grid.n; ++q)
      acc[q] += wmu * SQRT_TWO_PI * std::conj(vt.analysis[s][q]) * Shat[q];
  }
  return to_space(vt.grid, acc);
}

double tightness_defect(const VoiceTransform& vt, const std::vector<GridSignal>& battery) {
  require(!battery.empty(), "tightness_defect: empty battery");
  double worst = 0.0;
  for (const GridSignal& f : battery) {
    const double e_sig = signal_l2(f) * signal_l2(f);
    require(e_sig > 0.0, "tightness_defect: zero signal in battery");
    const double e_field = field_l2sq_mu(voice_transform(vt, f));
    worst = std::max(worst, std::abs(e_field / e_sig - 1.0));
  }
  return worst;
}

double tightness_defect(const VoiceTransform& vt) {
  const double cap =
      vt.pair.support_lo * std::pow(vt.axis.beta, static_cast<double>(vt.axis.octaves));
  double worst = 0.0;
  for (int q = 0; q < vt.grid.n; ++q) {
    const double xi = vt.grid.freq(q);
    if (std::abs(xi) > cap * (1.0 + 1e-12)) continue;
    double tot = 0.0;
    for (int s = 0; s <= vt.axis.slots(); ++s)
      tot += vt.scale_weight(s) * std::norm(vt.analysis[s][q]);
    worst = std::max(worst, std::abs(2.0 * PI * tot - 1.0));
  }
  return worst;
}

namespace {

// range-max table over the doubled modulus array
struct RangeMax {
  int size = 0;
  std::vector<real_vec> level;

  void build(const real_vec& d) {
    size = static_cast<int>(d.size());
    int logs = 1;
    while ((1 << logs) <= size) ++logs;
    level.assign(logs, {});
    level[0] = d;
    for (int k = 1; k < logs; ++k) {
      const int len = size - (1 << k) + 1;
      if (len <= 0) break;
      level[k].resize(len);
      for (int i = 0; i < len; ++i)
        level[k][i] = std::max(level[k - 1][i], level[k - 1][i + (1 << (k - 1))]);
    }
  }
  double query(int l, int r) const {  // inclusive, l <= r
    const int k = 31 - __builtin_clz(static_cast<unsigned>(r - l + 1));
    return std::max(level[k][l], level[k][r - (1 << k) + 1]);
  }
};

struct PeetreScan {
  const real_vec& d2;
  const RangeMax& rm;
  double h, te, a;
  int i;
  double best;

  double weight(int ring) const { return std::pow(1.0 + ring * h / te, -a); }

  // monotone run with the closest element at l (ring grows to the right)
  void right(int l, int r) {
    if (l > r) return;
    const double bound = rm.query(l, r) * weight(l - i);
    if (bound <= best) return;
    if (l == r) {
      best = bound;
      return;
    }
    const int mid = (l + r) / 2;
    right(l, mid);
    right(mid + 1, r);
  }
  // monotone run with the closest element at r (ring grows to the left)
  void left(int l, int r, int n) {
    if (l > r) return;
    const double bound = rm.query(l, r) * weight(i + n - r);
    if (bound <= best) return;
    if (l == r) {
      best = bound;
      return;
    }
    const int mid = (l + r) / 2;
    left(mid + 1, r, n);
    left(l, mid, n);
  }
};

}  // namespace

real_vec peetre_maximal(const SpatialGrid& grid, const cplx* row, double t, double a) {
  require(a > 0.0, "peetre_maximal: decay exponent must be positive");
  const int n = grid.n;
  const double h = grid.step();
  const double te = is_inf(t) ? 1.0 : t;
  real_vec d2(2 * n);
  for (int k = 0; k < n; ++k) d2[k] = d2[k + n] = std::abs(row[k]);
  RangeMax rm;
  rm.build(d2);
  real_vec out(n);
  for (int i = 0; i < n; ++i) {
    PeetreScan scan{d2, rm, h, te, a, i, d2[i]};
    scan.right(i + 1, i + n / 2);
    scan.left(i + n / 2 + 1, i + n - 1, n);
    out[i] = scan.best;
  }
  return out;
}

real_vec peetre_maximal(const SpatialGrid& grid, const cplx_vec& row, double t, double a) {
  require(static_cast<int>(row.size()) == grid.n, "peetre_maximal: size mismatch");
  return peetre_maximal(grid, row.data(), t, a);
}

XField peetre_maximal(const XField& F, double a) {
  XField out(F.grid, F.axis);
  for (int s = 0; s < F.slots(); ++s) {
    const real_vec vals = peetre_maximal(F.grid, F.row(s), F.slot_scale(s), a);
    for (int i = 0; i < F.grid.n; ++i) out.at(s, i) = vals[i];
  }
  return out;
}

real_vec peetre_maximal_reference(const SpatialGrid& grid, const cplx_vec& row, double t,
                                  double a) {
  require(static_cast<int>(row.size()) == grid.n, "peetre_maximal_reference: size mismatch");
  require(a > 0.0, "peetre_maximal_reference: decay exponent must be positive");
  const int n = grid.n;
  const double h = grid.step();
  const double te = is_inf(t) ? 1.0 : t;
  real_vec out(n);
  for (int i = 0; i < n; ++i) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
      const int ring = std::min(std::abs(i - j), n - std::abs(i - j));
      best = std::max(best, std::abs(row[j]) * std::pow(1.0 + ring * h / te, -a));
    }
    out[i] = best;
  }
  return out;
}

std::vector<real_vec> scale_window_max(const ScaleAxis& axis,
                                       const std::vector<real_vec>& per_slot) {
  require(static_cast<int>(per_slot.size()) == axis.slots(),
          "scale_window_max: slot count mismatch");
  std::vector<real_vec> out(per_slot.size());
  for (int m = 0; m < axis.slots(); ++m) {
    const double tm = axis.scale(m);
    real_vec acc(per_slot[m].size(), 0.0);
    for (int mp = 0; mp < axis.slots(); ++mp) {
      const double tp = axis.scale(mp);
      if (tp > 2.0 * tm * (1.0 + 1e-12) || tp < 0.5 * tm * (1.0 - 1e-12)) continue;
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], per_slot[mp][i]);
    }
    out[m] = std::move(acc);
  }
  return out;
}

XField peetre_wiener_maximal(const XField& F, double a) {
  std::vector<real_vec> per_slot(F.axis.slots());
  for (int m = 0; m < F.axis.slots(); ++m)
    per_slot[m] = peetre_maximal(F.grid, F.row(m), F.axis.scale(m), a);
  const std::vector<real_vec> win = scale_window_max(F.axis, per_slot);
  XField out(F.grid, F.axis);
  for (int m = 0; m < F.axis.slots(); ++m)
    for (int i = 0; i < F.grid.n; ++i) out.at(m, i) = win[m][i];
  const real_vec top = peetre_maximal(F.grid, F.row(F.inf_slot()), INF, a);
  for (int i = 0; i < F.grid.n; ++i) out.at(F.inf_slot(), i) = top[i];
  return out;
}

}  // namespace coorbit

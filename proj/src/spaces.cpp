#include "coorbit/spaces.hpp"

#include <algorithm>

namespace coorbit {

namespace {

// max-factored (sum_m c_m v_m^qi)^{1/qi}; qi = inf means the plain sup.
// Factoring out the max keeps every power argument in [0,1], so small qi
// cannot overflow and large qi cannot underflow the result.
double power_combine(const real_vec& v, const real_vec& c, double qi) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  if (m == 0.0 || is_inf(qi)) return m;
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0.0) s += c[k] * std::pow(v[k] / m, qi);
  return m * std::pow(s, 1.0 / qi);
}

// fraction of the squared spectral mass at |xi_q| >= xi_cut
double high_band_fraction(const GridSignal& f, double xi_cut) {
  const cplx_vec S = to_frequency(f);
  double tot = 0.0, hi = 0.0;
  for (int q = 0; q < f.grid.n; ++q) {
    const double e = std::norm(S[q]);
    tot += e;
    if (std::abs(f.grid.freq(q)) >= xi_cut) hi += e;
  }
  return tot == 0.0 ? 0.0 : hi / tot;
}

real_vec weight_row(const Weight2ML& w, const SpatialGrid& grid, double t) {
  real_vec row(grid.n);
  for (int i = 0; i < grid.n; ++i) row[i] = w.eval(grid.node(i), t);
  return row;
}

// band slices f_j = (window_j . fhat)^inverse for j = 0..levels
std::vector<GridSignal> band_slices(const GridSignal& f, const DyadicPU& pu, int levels) {
  const SpatialGrid& g = f.grid;
  const cplx_vec S = to_frequency(f);
  std::vector<GridSignal> out;
  out.reserve(levels + 1);
  cplx_vec spec(g.n);
  for (int j = 0; j <= levels; ++j) {
    for (int q = 0; q < g.n; ++q) {
      const double xi = g.freq(q);
      const double win = j == 0 ? pu.phi0(xi) : pu.phi(std::pow(2.0, -j) * xi);
      spec[q] = win * S[q];
    }
    out.push_back(to_space(g, spec));
  }
  return out;
}

// correlation field against the pair's analyzers over the axis slots + inf
XField analyzer_field(const SpatialGrid& grid, const ScaleAxis& axis, const AnalyzerPair& pair,
                      const GridSignal& f) {
  constexpr double SQRT_TWO_PI = 2.5066282746310002;
  XField A(grid, axis);
  const cplx_vec S = to_frequency(f);
  cplx_vec spec(grid.n);
  for (int s = 0; s <= axis.slots(); ++s) {
    const double t = s == axis.slots() ? INF : axis.scale(s);
    const cplx_vec filt =
        dilate_filter(grid, s == axis.slots() ? pair.phi0_hat : pair.phi_hat, t, Dilation::L1);
    for (int q = 0; q < grid.n; ++q) spec[q] = SQRT_TWO_PI * filt[q] * S[q];
    GridSignal slice = to_space(grid, spec);
    std::copy(slice.v.begin(), slice.v.end(), A.row(s));
  }
  return A;
}

void check_standing(const SpaceSpec& spec) {
  if (spec.family == Family::F || spec.family == Family::P) {
    require(!spec.p.has_inf(), "space norm: p must stay finite for this family");
    require(!spec.q.has_inf(), "space norm: q must stay finite for this family");
    require(spec.p.grid == spec.q.grid, "space norm: p and q live on different grids");
  }
  if (spec.family == Family::B || spec.family == Family::L)
    require(spec.qtilde > 0.0, "space norm: outer exponent must be positive");
}

// weighted modulus rows of an X field; slot order: finite 0..slots-1, inf last
std::vector<real_vec> weighted_rows(const XField& F, const Weight2ML& w) {
  std::vector<real_vec> rows(F.slots());
  for (int s = 0; s < F.slots(); ++s) {
    const real_vec wr = weight_row(w, F.grid, F.slot_scale(s));
    real_vec v(F.grid.n);
    for (int i = 0; i < F.grid.n; ++i) v[i] = wr[i] * std::abs(F.at(s, i));
    rows[s] = std::move(v);
  }
  return rows;
}

// F-type combine: lux_p of the pointwise q(x)-sum over finite slots with the
// given per-slot weights, plus lux_p of the inf row
double combine_pointwise(const SpaceSpec& spec, const std::vector<real_vec>& rows,
                         const real_vec& slot_weights, const SpatialGrid& grid) {
  const int n = grid.n;
  const int finite = static_cast<int>(rows.size()) - 1;
  const real_vec cellw(n, grid.step());
  real_vec inner(n), v(finite), c(slot_weights);
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < finite; ++m) v[m] = rows[m][i];
    inner[i] = power_combine(v, c, spec.q.p[i]);
  }
  return luxemburg_weighted(spec.p.p, rows[finite], cellw) +
         luxemburg_weighted(spec.p.p, inner, cellw);
}

// B-type combine: qtilde sum of per-slot lux_p norms with the given weights,
// plus the inf-row lux_p term
double combine_levelwise(const SpaceSpec& spec, const std::vector<real_vec>& rows,
                         const real_vec& slot_weights, const SpatialGrid& grid) {
  const int finite = static_cast<int>(rows.size()) - 1;
  const real_vec cellw(grid.n, grid.step());
  real_vec norms(finite);
  for (int m = 0; m < finite; ++m) norms[m] = luxemburg_weighted(spec.p.p, rows[m], cellw);
  return luxemburg_weighted(spec.p.p, rows[finite], cellw) +
         power_combine(norms, slot_weights, spec.qtilde);
}

}  // namespace

double decay_threshold(const SpaceSpec& spec) {
  const double pm = 1.0 / spec.p.p_minus() + spec.w.alpha3;
  if (spec.family == Family::B || spec.family == Family::L) return pm;
  return std::max(1.0 / spec.p.p_minus(), 1.0 / spec.q.p_minus()) + spec.w.alpha3;
}

NormResult f_norm(const SpaceSpec& spec, const GridSignal& f, const DyadicPU& pu, int levels) {
  require(spec.family == Family::F, "f_norm: family mismatch");
  require(levels >= 1, "f_norm: need at least one band");
  check_standing(spec);
  NormResult out;
  const SpatialGrid& g = f.grid;
  const std::vector<GridSignal> slices = band_slices(f, pu, levels);

  const real_vec cellw(g.n, g.step());
  real_vec inner(g.n), v(levels + 1);
  const real_vec ones(levels + 1, 1.0);
  std::vector<real_vec> wrows(levels + 1);
  for (int j = 0; j <= levels; ++j)
    wrows[j] = weight_row(spec.w, g, j == 0 ? INF : std::pow(2.0, -j));
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j <= levels; ++j) v[j] = wrows[j][i] * std::abs(slices[j][i]);
    inner[i] = power_combine(v, ones, spec.q.p[i]);
  }
  out.value = luxemburg_weighted(spec.p.p, inner, cellw);
  if (high_band_fraction(f, std::pow(2.0, levels - 1)) > 1e-10)
    out.flags.push_back("truncation");
  return out;
}

NormResult b_norm(const SpaceSpec& spec, const GridSignal& f, const DyadicPU& pu, int levels) {
  require(spec.family == Family::B, "b_norm: family mismatch");
  require(levels >= 1, "b_norm: need at least one band");
  check_standing(spec);
  NormResult out;
  const SpatialGrid& g = f.grid;
  const std::vector<GridSignal> slices = band_slices(f, pu, levels);

  const real_vec cellw(g.n, g.step());
  real_vec norms(levels + 1);
  real_vec row(g.n);
  for (int j = 0; j <= levels; ++j) {
    const real_vec wr = weight_row(spec.w, g, j == 0 ? INF : std::pow(2.0, -j));
    for (int i = 0; i < g.n; ++i) row[i] = wr[i] * std::abs(slices[j][i]);
    norms[j] = luxemburg_weighted(spec.p.p, row, cellw);
  }
  out.value = power_combine(norms, real_vec(levels + 1, 1.0), spec.qtilde);
  if (high_band_fraction(f, std::pow(2.0, levels - 1)) > 1e-10)
    out.flags.push_back("truncation");
  return out;
}

NormResult norm_variant(const SpaceSpec& spec, const GridSignal& f, const AnalyzerPair& pair,
                        const ScaleAxis& axis) {
  require(spec.variant != Variant::Def, "norm_variant: use f_norm/b_norm for the def variant");
  require(spec.family == Family::B || spec.family == Family::F,
          "norm_variant: only the B and F families have these characterizations");
  check_standing(spec);
  NormResult out;
  const SpatialGrid& g = f.grid;
  const bool uses_maximal = spec.variant != Variant::Norm1;

  if (uses_maximal && spec.a <= decay_threshold(spec)) out.flags.push_back("hypothesis");
  {
    // cheap admissibility screen: octave-quadruple band, live low-pass,
    // enough vanishing moments for the weight's upper type
    const int moments_needed = std::max(0, static_cast<int>(std::floor(spec.w.alpha2)));
    const bool band_ok = pair.support_hi >= 4.0 * pair.support_lo * (1.0 - 1e-12);
    const bool lowpass_ok = std::abs(pair.phi0_hat(0.0)) > 0.0;
    if (!band_ok || !lowpass_ok || !moment_check(pair, moments_needed).pass)
      out.flags.push_back("analyzer");
  }

  if (spec.variant == Variant::Norm4) {
    const int J = axis.octaves;
    if (high_band_fraction(f, pair.support_lo * std::pow(2.0, J)) > 1e-10)
      out.flags.push_back("truncation");
    const cplx_vec S = to_frequency(f);
    constexpr double SQRT_TWO_PI = 2.5066282746310002;
    cplx_vec spec_buf(g.n);
    std::vector<real_vec> rows(J + 1);
    for (int j = 1; j <= J; ++j) {
      const double t = std::pow(2.0, -j);
      const cplx_vec filt = dilate_filter(g, pair.phi_hat, t, Dilation::L1);
      for (int q = 0; q < g.n; ++q) spec_buf[q] = SQRT_TWO_PI * filt[q] * S[q];
      const GridSignal slice = to_space(g, spec_buf);
      const real_vec pm = peetre_maximal(g, slice.v, t, spec.a);
      const real_vec wr = weight_row(spec.w, g, t);
      real_vec row(g.n);
      for (int i = 0; i < g.n; ++i) row[i] = wr[i] * pm[i];
      rows[j - 1] = std::move(row);
    }
    {
      const cplx_vec filt = dilate_filter(g, pair.phi0_hat, INF, Dilation::L1);
      for (int q = 0; q < g.n; ++q) spec_buf[q] = SQRT_TWO_PI * filt[q] * S[q];
      const GridSignal slice = to_space(g, spec_buf);
      const real_vec pm = peetre_maximal(g, slice.v, INF, spec.a);
      const real_vec wr = weight_row(spec.w, g, INF);
      real_vec row(g.n);
      for (int i = 0; i < g.n; ++i) row[i] = wr[i] * pm[i];
      rows[J] = std::move(row);
    }
    const real_vec ones(J, 1.0);
    out.value = spec.family == Family::F ? combine_pointwise(spec, rows, ones, g)
                                         : combine_levelwise(spec, rows, ones, g);
    return out;
  }

  if (high_band_fraction(f, pair.support_lo *
                                std::pow(axis.beta, static_cast<double>(axis.octaves))) > 1e-10)
    out.flags.push_back("truncation");
  XField A = analyzer_field(g, axis, pair, f);
  if (spec.variant == Variant::Norm2) A = peetre_maximal(A, spec.a);
  if (spec.variant == Variant::Norm3) A = peetre_wiener_maximal(A, spec.a);
  const std::vector<real_vec> rows = weighted_rows(A, spec.w);
  const real_vec delta(axis.slots(), axis.log_weight());
  out.value = spec.family == Family::F ? combine_pointwise(spec, rows, delta, g)
                                       : combine_levelwise(spec, rows, delta, g);
  return out;
}

NormResult pw_norm(const SpaceSpec& spec, const XField& F) {
  require(spec.family == Family::P, "pw_norm: family mismatch");
  check_standing(spec);
  NormResult out;
  if (spec.a <= decay_threshold(spec)) out.flags.push_back("hypothesis");
  const XField M = peetre_wiener_maximal(F, spec.a);
  const std::vector<real_vec> rows = weighted_rows(M, spec.w);
  const real_vec delta(F.axis.slots(), F.axis.log_weight());
  out.value = combine_pointwise(spec, rows, delta, F.grid);
  return out;
}

NormResult lw_norm(const SpaceSpec& spec, const XField& F) {
  require(spec.family == Family::L, "lw_norm: family mismatch");
  check_standing(spec);
  NormResult out;
  if (spec.a <= decay_threshold(spec)) out.flags.push_back("hypothesis");
  const XField M = peetre_wiener_maximal(F, spec.a);
  const std::vector<real_vec> rows = weighted_rows(M, spec.w);
  const real_vec delta(F.axis.slots(), F.axis.log_weight());
  out.value = combine_levelwise(spec, rows, delta, F.grid);
  return out;
}

namespace {

// step field with value v[i] on every cell of box i; boxes partition the
// window, so assignment builds the sum of indicators exactly
XField step_field(const Covering& cover, const real_vec& v) {
  XField G(cover.grid, cover.axis);
  for (int b = 0; b < cover.box_count(); ++b) {
    const CoverBox& box = cover.boxes[b];
    for (int s = box.slot_lo; s < box.slot_lo + box.slot_count; ++s)
      for (int i = box.node_lo; i < box.node_lo + box.node_count; ++i) G.at(s, i) = v[b];
  }
  return G;
}

double y_norm(const SpaceSpec& spec, const XField& G) {
  if (spec.family == Family::P) return pw_norm(spec, G).value;
  if (spec.family == Family::L) return lw_norm(spec, G).value;
  throw std::invalid_argument("sequence norms need an X-field family (P or L)");
}

}  // namespace

SeqNorms seq_norms(const SpaceSpec& spec, const SeqCoeffs& coeffs) {
  require(coeffs.cover != nullptr, "seq_norms: coefficients carry no covering");
  const Covering& cover = *coeffs.cover;
  require(coeffs.entries.size() == cover.boxes.size(), "seq_norms: entry count mismatch");
  real_vec flat(cover.boxes.size()), natural(cover.boxes.size());
  for (int b = 0; b < cover.box_count(); ++b) {
    flat[b] = std::abs(coeffs.entries[b]);
    natural[b] = flat[b] / cover.boxes[b].mu;
  }
  SeqNorms out;
  out.flat = y_norm(spec, step_field(cover, flat));
  out.natural = y_norm(spec, step_field(cover, natural));
  return out;
}

NormResult decomposition_norm(const SpaceSpec& spec, const XField& F, const Covering& cover) {
  require(F.grid.n == cover.grid.n && F.axis.slots() == cover.axis.slots(),
          "decomposition_norm: field and covering disagree");
  real_vec v(cover.boxes.size(), 0.0);
  for (int b = 0; b < cover.box_count(); ++b) {
    const CoverBox& box = cover.boxes[b];
    for (int s = box.slot_lo; s < box.slot_lo + box.slot_count; ++s)
      for (int i = box.node_lo; i < box.node_lo + box.node_count; ++i)
        v[b] = std::max(v[b], std::abs(F.at(s, i)));
  }
  NormResult out;
  out.value = y_norm(spec, step_field(cover, v));
  return out;
}

real_vec geometric_smoothing(double delta, const real_vec& g) {
  require(delta > 0.0, "geometric_smoothing: decay must be positive");
  const int n = static_cast<int>(g.size());
  real_vec out(n, 0.0);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) out[l] += std::pow(2.0, -std::abs(l - k) * delta) * g[k];
  return out;
}

}  // namespace coorbit

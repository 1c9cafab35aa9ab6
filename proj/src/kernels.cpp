#include "coorbit/kernels.hpp"

#include <stdexcept>

#include "coorbit/fft.hpp"

namespace coorbit {

namespace {

constexpr double TWO_PI = 2.0 * PI;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// ring(u) = (2 pi / L) sum_q conj(A_sy[q]) A_sx[q] e^{+2 pi i q u / n}, the
// kernel value at node difference u = ix - iy
cplx_vec cross_ring(const VoiceTransform& vt, int sx, int sy) {
  const int n = vt.grid.n;
  cplx_vec spec(n);
  for (int q = 0; q < n; ++q) spec[q] = std::conj(vt.analysis[sy][q]) * vt.analysis[sx][q];
  fft_inverse(spec);
  const double c = TWO_PI / vt.grid.period;
  for (auto& v : spec) v *= c;
  return spec;
}

int ring_index(int d, int n) { return d < 0 ? d + n : d; }

// per-(x, box) values of an invariant kernel over the box cells
void box_values(const KernelOp& R, const CoverBox& box, int sx, int ix, cplx_vec& out) {
  out.clear();
  for (int s = box.slot_lo; s < box.slot_lo + box.slot_count; ++s) {
    const cplx_vec& ring = R.rings[static_cast<std::size_t>(sx) * R.sheet_count() + s];
    for (int i = box.node_lo; i < box.node_lo + box.node_count; ++i)
      out.push_back(ring[ring_index(ix - i, R.grid.n)]);
  }
}

}  // namespace

KernelOp KernelOp::dense_from(const SpatialGrid& grid, const ScaleAxis& axis, real_vec values) {
  KernelOp K;
  K.grid = grid;
  K.axis = axis;
  K.invariant = false;
  if (values.size() != static_cast<std::size_t>(K.cells()) * K.cells())
    throw std::invalid_argument("kernel: dense table size mismatch");
  K.dense = std::move(values);
  return K;
}

GridSignal frame_atom(const VoiceTransform& vt, int slot, int node) {
  const SpatialGrid& g = vt.grid;
  const double x = g.node(node);
  cplx_vec spec(g.n);
  for (int q = 0; q < g.n; ++q)
    spec[q] = std::conj(vt.analysis[slot][q]) * std::exp(cplx(0.0, -g.freq(q) * x));
  return to_space(g, spec);
}

KernelOp frame_kernel(const VoiceTransform& vt) {
  KernelOp K;
  K.grid = vt.grid;
  K.axis = vt.axis;
  K.invariant = true;
  const int S = K.sheet_count();
  K.rings.resize(static_cast<std::size_t>(S) * S);
  for (int sx = 0; sx < S; ++sx) {
    for (int sy = sx; sy < S; ++sy)
      K.rings[static_cast<std::size_t>(sx) * S + sy] = cross_ring(vt, sx, sy);
    // hermitian by construction: R(x,y) = conj(R(y,x))
    for (int sy = 0; sy < sx; ++sy) {
      const cplx_vec& src = K.rings[static_cast<std::size_t>(sy) * S + sx];
      cplx_vec r(vt.grid.n);
      for (int u = 0; u < vt.grid.n; ++u) r[u] = std::conj(src[ring_index(-u, vt.grid.n)]);
      K.rings[static_cast<std::size_t>(sx) * S + sy] = std::move(r);
    }
  }
  return K;
}

XField kernel_apply(const KernelOp& K, const XField& F) {
  require(K.grid.n == F.grid.n && K.axis.slots() == F.axis.slots(),
          "kernel_apply: field and kernel disagree");
  const int n = K.grid.n;
  const int S = K.sheet_count();
  XField out(F.grid, F.axis);
  if (K.invariant) {
    std::vector<cplx_vec> fh(S);
    for (int sy = 0; sy < S; ++sy) {
      fh[sy].assign(F.row(sy), F.row(sy) + n);
      fft_forward(fh[sy]);
    }
    cplx_vec acc(n), rh(n);
    for (int sx = 0; sx < S; ++sx) {
      std::fill(acc.begin(), acc.end(), cplx(0.0));
      for (int sy = 0; sy < S; ++sy) {
        rh = K.rings[static_cast<std::size_t>(sx) * S + sy];
        fft_forward(rh);
        const double mu = K.mu_cell(sy);
        for (int q = 0; q < n; ++q) acc[q] += mu * rh[q] * fh[sy][q];
      }
      fft_inverse(acc);
      for (int i = 0; i < n; ++i) out.at(sx, i) = acc[i] / static_cast<double>(n);
    }
    return out;
  }
  const int C = K.cells();
  for (int cx = 0; cx < C; ++cx) {
    cplx acc(0.0);
    for (int sy = 0; sy < S; ++sy) {
      const double mu = K.mu_cell(sy);
      const cplx* row = F.row(sy);
      const double* kr = K.dense.data() + static_cast<std::size_t>(cx) * C + sy * n;
      for (int iy = 0; iy < n; ++iy) acc += mu * kr[iy] * row[iy];
    }
    out.at(cx / n, cx % n) = acc;
  }
  return out;
}

double reproducing_defect(const KernelOp& R, const XField& F) {
  const double denom = field_l2sq_mu(F);
  if (denom == 0.0) return 0.0;
  XField G = kernel_apply(R, F);
  for (std::size_t i = 0; i < G.data.size(); ++i) G.data[i] -= F.data[i];
  return std::sqrt(field_l2sq_mu(G) / denom);
}

double reproducing_defect(const VoiceTransform& vt, const GridSignal& f) {
  return reproducing_defect(frame_kernel(vt), voice_transform(vt, f));
}

KernelOp gram_cross_kernel(const VoiceTransform& atoms, const VoiceTransform& frame,
                           const Covering& cover) {
  require(atoms.grid.n == frame.grid.n && atoms.axis.slots() == frame.axis.slots(),
          "gram_cross_kernel: families disagree");
  const int n = frame.grid.n;
  const int S = frame.axis.slots() + 1;
  // cross(x,z) = <phi^F_x, psi^G_z> = ring'[iz - ix]
  std::vector<cplx_vec> cross(static_cast<std::size_t>(S) * S);
  for (int sx = 0; sx < S; ++sx)
    for (int sz = 0; sz < S; ++sz) {
      cplx_vec spec(n);
      for (int q = 0; q < n; ++q)
        spec[q] = std::conj(frame.analysis[sx][q]) * atoms.analysis[sz][q];
      fft_inverse(spec);
      const double c = TWO_PI / frame.grid.period;
      for (auto& v : spec) v *= c;
      cross[static_cast<std::size_t>(sx) * S + sz] = std::move(spec);
    }

  KernelOp K;
  K.grid = frame.grid;
  K.axis = frame.axis;
  K.invariant = false;
  const int C = K.cells();
  K.dense.assign(static_cast<std::size_t>(C) * C, 0.0);
  parallel_for(static_cast<std::size_t>(C), worker_threads(), [&](std::size_t xc) {
    const int sx = static_cast<int>(xc) / n;
    const int ix = static_cast<int>(xc) % n;
    const std::size_t rowbase = xc * C;
    for (const CoverBox& box : cover.boxes) {
      double sup = 0.0;
      for (int s = box.slot_lo; s < box.slot_lo + box.slot_count; ++s) {
        const cplx_vec& ring = cross[static_cast<std::size_t>(sx) * S + s];
        for (int iz = box.node_lo; iz < box.node_lo + box.node_count; ++iz)
          sup = std::max(sup, std::abs(ring[ring_index(iz - ix, n)]));
      }
      for (int s = box.slot_lo; s < box.slot_lo + box.slot_count; ++s)
        for (int iy = box.node_lo; iy < box.node_lo + box.node_count; ++iy)
          K.dense[rowbase + s * n + iy] = sup;
    }
  });
  return K;
}

KernelOp osc_kernel(const VoiceTransform& vt, const Covering& cover, Phase phase) {
  (void)phase;  // only the trivial phase is supported
  const KernelOp R = frame_kernel(vt);
  const int n = vt.grid.n;
  const int S = R.sheet_count();
  double im_max = 0.0;
  for (const cplx_vec& r : R.rings)
    for (const cplx& v : r) im_max = std::max(im_max, std::abs(v.imag()));
  const bool real_path = im_max < 1e-12;

  KernelOp K;
  K.grid = vt.grid;
  K.axis = vt.axis;
  K.invariant = false;
  const int C = K.cells();
  K.dense.assign(static_cast<std::size_t>(C) * C, 0.0);
  parallel_for(static_cast<std::size_t>(C), worker_threads(), [&](std::size_t xc) {
    const int sx = static_cast<int>(xc) / n;
    const int ix = static_cast<int>(xc) % n;
    const std::size_t rowbase = xc * C;
    cplx_vec vals;
    for (const CoverBox& box : cover.boxes) {
      if (box.slot_count == 0 || box.node_count == 0) continue;
      box_values(R, box, sx, ix, vals);
      double vmin = INF, vmax = -INF;
      if (real_path)
        for (const cplx& v : vals) {
          vmin = std::min(vmin, v.real());
          vmax = std::max(vmax, v.real());
        }
      for (int s = box.slot_lo; s < box.slot_lo + box.slot_count; ++s) {
        const cplx_vec& ring = R.rings[static_cast<std::size_t>(sx) * S + s];
        for (int iy = box.node_lo; iy < box.node_lo + box.node_count; ++iy) {
          const cplx ry = ring[ring_index(ix - iy, n)];
          double osc;
          if (real_path) {
            osc = std::max(ry.real() - vmin, vmax - ry.real());
          } else {
            osc = 0.0;
            for (const cplx& v : vals) osc = std::max(osc, std::abs(ry - v));
          }
          K.dense[rowbase + s * n + iy] = osc;
        }
      }
    }
  });
  return K;
}

KernelOp kernel_transpose(const KernelOp& K) {
  KernelOp T;
  T.grid = K.grid;
  T.axis = K.axis;
  T.invariant = K.invariant;
  const int n = K.grid.n;
  const int S = K.sheet_count();
  if (K.invariant) {
    T.rings.resize(K.rings.size());
    for (int sx = 0; sx < S; ++sx)
      for (int sy = 0; sy < S; ++sy) {
        const cplx_vec& src = K.rings[static_cast<std::size_t>(sy) * S + sx];
        cplx_vec r(n);
        for (int u = 0; u < n; ++u) r[u] = src[ring_index(-u, n)];
        T.rings[static_cast<std::size_t>(sx) * S + sy] = std::move(r);
      }
    return T;
  }
  const int C = K.cells();
  T.dense.resize(K.dense.size());
  for (int a = 0; a < C; ++a)
    for (int b = 0; b < C; ++b)
      T.dense[static_cast<std::size_t>(a) * C + b] =
          K.dense[static_cast<std::size_t>(b) * C + a];
  return T;
}

double kernel_a1_norm(const KernelOp& K) {
  const int n = K.grid.n;
  const int S = K.sheet_count();
  double best = 0.0;
  if (K.invariant) {
    real_vec ring_abs(static_cast<std::size_t>(S) * S, 0.0);
    for (int a = 0; a < S * S; ++a)
      for (const cplx& v : K.rings[a]) ring_abs[a] += std::abs(v);
    for (int sx = 0; sx < S; ++sx) {
      double row = 0.0, col = 0.0;
      for (int sy = 0; sy < S; ++sy) {
        row += K.mu_cell(sy) * ring_abs[static_cast<std::size_t>(sx) * S + sy];
        col += K.mu_cell(sy) * ring_abs[static_cast<std::size_t>(sy) * S + sx];
      }
      best = std::max(best, std::max(row, col));
    }
    return best;
  }
  const int C = K.cells();
  real_vec col(C, 0.0);
  for (int a = 0; a < C; ++a) {
    double row = 0.0;
    const double mu_a = K.mu_cell(a / n);
    for (int b = 0; b < C; ++b) {
      const double v = std::abs(K.dense[static_cast<std::size_t>(a) * C + b]);
      row += v * K.mu_cell(b / n);
      col[b] += v * mu_a;
    }
    best = std::max(best, row);
  }
  for (double v : col) best = std::max(best, v);
  return best;
}

double kernel_amnu_norm(const KernelOp& K, const ReservoirWeight& nu) {
  require(nu.grid.n == K.grid.n && nu.axis.slots() == K.axis.slots(),
          "kernel_amnu_norm: weight window mismatch");
  const int n = K.grid.n;
  const int C = K.cells();
  real_vec col(C, 0.0);
  double best = 0.0;
  for (int a = 0; a < C; ++a) {
    const double nu_a = nu.at(a / n, a % n);
    const double mu_a = K.mu_cell(a / n);
    double row = 0.0;
    for (int b = 0; b < C; ++b) {
      const double v =
          std::abs(K.entry(a / n, a % n, b / n, b % n)) * m_nu(nu_a, nu.at(b / n, b % n));
      row += v * K.mu_cell(b / n);
      col[b] += v * mu_a;
    }
    best = std::max(best, row);
  }
  for (double v : col) best = std::max(best, v);
  return best;
}

double kernel_op_norm_estimate(const KernelOp& K, const SpaceSpec& spec,
                               const std::vector<XField>& battery) {
  double best = 0.0;
  for (const XField& F : battery) {
    const double denom =
        spec.family == Family::P ? pw_norm(spec, F).value : lw_norm(spec, F).value;
    if (denom == 0.0) continue;
    const XField G = kernel_apply(K, F);
    const double num = spec.family == Family::P ? pw_norm(spec, G).value : lw_norm(spec, G).value;
    best = std::max(best, num / denom);
  }
  return best;
}

}  // namespace coorbit

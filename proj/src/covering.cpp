#include "coorbit/covering.hpp"

#include <stdexcept>

namespace coorbit {

namespace {

// band index of a finite scale: t in [beta^-j, beta^-j+1) <=> j = ceil(log_beta 1/t),
// with a tie guard so t sitting on a band edge joins the band it bounds below
int band_of_scale(double t, double beta, int levels) {
  const double v = -std::log(t) / std::log(beta);
  int j = static_cast<int>(std::ceil(v - 1e-12));
  return std::min(std::max(j, 1), levels);
}

}  // namespace

Covering Covering::make(const SpatialGrid& grid, const ScaleAxis& axis, double alpha,
                        double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("covering: alpha must be positive");
  if (!(beta > 1.0)) throw std::invalid_argument("covering: beta must exceed 1");

  Covering c;
  c.grid = grid;
  c.axis = axis;
  c.alpha = alpha;
  c.beta = beta;

  const double t_last = axis.scale(axis.slots() - 1);
  int levels = static_cast<int>(std::ceil(-std::log(t_last) / std::log(beta) - 1e-12));
  levels = std::max(levels, 1);
  c.levels = levels;

  c.band_of_slot_tab.resize(axis.slots() + 1);
  for (int m = 0; m < axis.slots(); ++m)
    c.band_of_slot_tab[m] = band_of_scale(axis.scale(m), beta, levels);
  c.band_of_slot_tab[axis.slots()] = 0;

  // per-level contiguous slot ranges (slots are ordered by decreasing scale)
  std::vector<int> slot_lo(levels + 1, 0), slot_count(levels + 1, 0);
  slot_lo[0] = axis.slots();
  slot_count[0] = 1;
  for (int j = 1; j <= levels; ++j) {
    int lo = axis.slots(), cnt = 0;
    for (int m = 0; m < axis.slots(); ++m)
      if (c.band_of_slot_tab[m] == j) {
        lo = std::min(lo, m);
        ++cnt;
      }
    slot_lo[j] = cnt ? lo : 0;
    slot_count[j] = cnt;
  }

  const double L = grid.period;
  const double h = grid.step();
  c.node_box.assign(levels + 1, std::vector<int>(grid.n, -1));
  c.sigma = 0;

  for (int j = 0; j <= levels; ++j) {
    c.level_first.push_back(c.box_count());
    const double width = j == 0 ? alpha : alpha * std::pow(beta, -j);
    int K = static_cast<int>(std::ceil(L / width - 1e-9));
    K = std::max(K, 1);
    std::vector<double> edge(K + 1);
    for (int k = 0; k < K; ++k) edge[k] = -0.5 * L + k * width;
    edge[K] = 0.5 * L;
    if (K >= 2 && edge[K] - edge[K - 1] < 0.5 * h) {
      edge.erase(edge.begin() + (K - 1));
      --K;
    }

    // node index of each edge; an edge within 1e-9 of a node snaps to it, so
    // consecutive ranges partition the nodes exactly
    std::vector<int> enode(K + 1);
    enode[0] = 0;
    enode[K] = grid.n;
    for (int k = 1; k < K; ++k)
      enode[k] = std::min(grid.n, std::max(0, static_cast<int>(std::ceil(
                                                  (edge[k] + 0.5 * L) / h - 1e-9))));

    const double scale_mass = j == 0 ? 1.0 : std::pow(beta, j) - std::pow(beta, j - 1);
    const double t_lo = j == 0 ? INF : std::pow(beta, -j);
    const double t_hi = j == 0 ? INF : std::pow(beta, -(j - 1));

    // sample slot: nearest slot to the band bottom in log scale, ties landing
    // inside the band
    int samp_slot;
    if (j == 0) {
      samp_slot = axis.slots();
    } else if (slot_count[j] > 0) {
      samp_slot = slot_lo[j] + slot_count[j] - 1;
      const int below = samp_slot + 1;
      if (below < axis.slots() &&
          std::abs(std::log(axis.scale(below) / t_lo)) <
              std::abs(std::log(axis.scale(samp_slot) / t_lo)) - 1e-12)
        samp_slot = below;
    } else {
      samp_slot = 0;
      double best = INF;
      for (int m = 0; m < axis.slots(); ++m) {
        const double d = std::abs(std::log(axis.scale(m) / t_lo));
        if (d < best) best = d, samp_slot = m;
      }
    }

    for (int k = 0; k < K; ++k) {
      CoverBox b;
      b.level = j;
      b.k = k;
      b.x_lo = edge[k];
      b.x_hi = edge[k + 1];
      b.t_lo = t_lo;
      b.t_hi = t_hi;
      b.mu = (edge[k + 1] - edge[k]) * scale_mass;
      b.sample_x = b.x_lo;
      b.sample_t = t_lo;
      b.node_lo = enode[k];
      b.node_count = enode[k + 1] - enode[k];
      b.slot_lo = slot_lo[j];
      b.slot_count = slot_count[j];
      b.cell_slot = samp_slot;
      int nn = grid.nearest_node(b.sample_x);
      if (b.node_count > 0)
        nn = std::min(std::max(nn, b.node_lo), b.node_lo + b.node_count - 1);
      b.cell_node = nn;
      const int idx = c.box_count();
      for (int i = enode[k]; i < enode[k + 1]; ++i) c.node_box[j][i] = idx;
      c.boxes.push_back(b);
    }
    c.sigma = std::max(c.sigma, std::min(3, K));
  }
  return c;
}

}  // namespace coorbit

#pragma once

// Structured admissible coverings of the discretized index set X: level 0
// tiles the infinite sheet with boxes of width alpha, level j >= 1 tiles the
// scale band [beta^-j, beta^-j+1) with boxes of width alpha beta^-j. Boxes
// partition the window; each carries its analytic mu measure, a sample point
// at its anchor corner, and the nearest discrete cell to that point.

#include "coorbit/grid.hpp"

namespace coorbit {

struct CoverBox {
  int level = 0;  // 0 = infinite sheet, j >= 1 finite scale bands
  long k = 0;     // spatial index within the level
  double x_lo = 0.0, x_hi = 0.0;  // spatial interval [x_lo, x_hi)
  double t_lo = 0.0, t_hi = 0.0;  // scale band [t_lo, t_hi); INF sheet: both INF
  double mu = 0.0;                // analytic measure of the box
  double sample_x = 0.0;          // covering point (anchor corner, band bottom)
  double sample_t = 0.0;
  int cell_node = 0;  // discrete cell of the sample point
  int cell_slot = 0;
  int node_lo = 0, node_count = 0;  // grid nodes whose center lies in the box
  int slot_lo = 0, slot_count = 0;  // scale slots whose node lies in the band
};

struct Covering {
  SpatialGrid grid;
  ScaleAxis axis;
  double alpha = 1.0;
  double beta = 2.0;
  int levels = 0;  // finite levels 1..levels; level 0 is the inf sheet
  int sigma = 0;   // intersection number of the continuous box family
  std::vector<CoverBox> boxes;         // level-major, k ascending
  std::vector<int> level_first;        // first box index of each level
  std::vector<int> band_of_slot_tab;   // slot -> level
  std::vector<std::vector<int>> node_box;  // [level][node] -> box index

  int box_count() const { return static_cast<int>(boxes.size()); }
  int band_of_slot(int slot) const { return band_of_slot_tab[slot]; }
  int box_of_cell(int slot, int node) const {
    const int lvl = slot == axis.slots() ? 0 : band_of_slot_tab[slot];
    return node_box[lvl][node];
  }

  // boxes tile the window; sliver narrower than half a grid step at the
  // clipped end of a level is merged into its neighbor
  static Covering make(const SpatialGrid& grid, const ScaleAxis& axis, double alpha, double beta);
};

}  // namespace coorbit

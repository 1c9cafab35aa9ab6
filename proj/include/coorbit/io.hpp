#pragma once

// File formats: CSV for signals, exponents, fields, and sweep tables; JSON
// for norm and diagnostic reports; a binary layout for kernel tables. Every
// floating-point number is written with %.17g so fixed-seed runs emit
// byte-identical files.

#include <string>
#include <vector>

#include "coorbit/analyzers.hpp"
#include "coorbit/grid.hpp"
#include "coorbit/kernels.hpp"
#include "coorbit/spaces.hpp"
#include "coorbit/varexp.hpp"

namespace coorbit {

std::string fmt17(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// header "index,re,im"
std::string signal_csv(const GridSignal& f);
GridSignal parse_signal_csv(const SpatialGrid& grid, const std::string& text);

// header "index,value"; unbounded entries as the literal "inf"
std::string exponent_csv(const ExponentField& p);
ExponentField parse_exponent_csv(const SpatialGrid& grid, const std::string& text);

// header "slot,node,re,im"; the last slot is the infinite sheet
std::string field_csv(const XField& F);
// gnuplot matrix of |F|: one text row per slot, nodes across
std::string field_matrix(const XField& F);

// header "xi,re,im", grid frequency bins in ascending order
std::string profile_csv(const SpatialGrid& grid, const FreqProfile& prof);

// {"family": ..., "variant": ..., "value": ..., "flags": [...]}
std::string norm_report_json(const std::string& family, const std::string& variant,
                             const NormResult& r);

struct SweepRow {
  double alpha = 0.0, beta = 0.0;
  double osc_a1 = 0.0, osc_amnu = 0.0;
  double ratio = 0.0, resid = 0.0;
};
// header "alpha,beta,osc_a1,osc_amnu,contraction_ratio,recon_residual"
std::string sweep_csv(const std::vector<SweepRow>& rows);

// two-column plot data, one "x y" line per point
std::string plot_xy(const real_vec& x, const real_vec& y);

// binary kernel table, little-endian 64-bit payload:
//   u64 layout (0 dense, 1 invariant), u64 d1, u64 d2,
//   then d1*d2 complex pairs (re, im) row-major.
// dense: d1 = d2 = cells; invariant: d1 = sheets^2 rings of length d2 = n.
void save_kernel_bin(const std::string& path, const KernelOp& K);
KernelOp load_kernel_bin(const std::string& path, const SpatialGrid& grid,
                         const ScaleAxis& axis);

}  // namespace coorbit

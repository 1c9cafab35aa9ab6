#pragma once

// Quasi-norm evaluators over the spatial grid and the discretized X: the
// smoothness-space norms built from dyadic band decompositions, their four
// equivalent characterizations through an admissible analyzer pair, and the
// scale-windowed maximal-function space norms on X fields.

#include "coorbit/analyzers.hpp"
#include "coorbit/covering.hpp"
#include "coorbit/transform.hpp"
#include "coorbit/varexp.hpp"
#include "coorbit/weights.hpp"

namespace coorbit {

enum class Family { B, F, P, L };
enum class Variant { Def, Norm1, Norm2, Norm3, Norm4 };

// B/L: outer scalar exponent qtilde in (0, inf]; F/P: pointwise inner
// exponent q(x) with q+ < inf and p+ < inf
struct SpaceSpec {
  Family family = Family::F;
  ExponentField p;
  ExponentField q;
  double qtilde = 2.0;
  Weight2ML w;
  double a = 0.0;
  Variant variant = Variant::Def;
};

// value + flags; flags: "truncation" (top band holds > 1e-10 of the
// spectral mass), "hypothesis" (maximal decay exponent at or below the
// admissible threshold), "analyzer" (pair fails its admissibility scans)
using NormResult = Flagged;

// lowest admissible maximal decay exponent for the spec's family
double decay_threshold(const SpaceSpec& spec);

// band-decomposition norms over dyadic levels 0..levels
NormResult f_norm(const SpaceSpec& spec, const GridSignal& f, const DyadicPU& pu, int levels);
NormResult b_norm(const SpaceSpec& spec, const GridSignal& f, const DyadicPU& pu, int levels);

// characterizations through an analyzer pair: Norm1 plain correlations,
// Norm2 distance-penalized maxima, Norm3 additionally scale-windowed,
// Norm4 discrete dyadic scales with penalized maxima
NormResult norm_variant(const SpaceSpec& spec, const GridSignal& f, const AnalyzerPair& pair,
                        const ScaleAxis& axis);

// X-field space norms: P (pointwise inner exponent) and L (outer scalar)
NormResult pw_norm(const SpaceSpec& spec, const XField& F);
NormResult lw_norm(const SpaceSpec& spec, const XField& F);

// coefficient sequence over the boxes of a covering
struct SeqCoeffs {
  const Covering* cover = nullptr;  // non-owning
  cplx_vec entries;                 // one per covering box

  SeqCoeffs() = default;
  explicit SeqCoeffs(const Covering& c) : cover(&c), entries(c.boxes.size(), cplx(0.0)) {}
};

struct SeqNorms {
  double flat = 0.0;     // norm of sum_i |lambda_i| chi_{U_i}
  double natural = 0.0;  // same with a mu(U_i)^{-1} factor per box
};

// sequence-space norms through the step field aligned with the covering;
// spec.family selects the X-field norm (P or L)
SeqNorms seq_norms(const SpaceSpec& spec, const SeqCoeffs& coeffs);

// norm of the per-box local sup of |F| spread back over the boxes
NormResult decomposition_norm(const SpaceSpec& spec, const XField& F, const Covering& cover);

// G_l = sum_k 2^{-|l-k| delta} g_k, exact finite sum
real_vec geometric_smoothing(double delta, const real_vec& g);

}  // namespace coorbit

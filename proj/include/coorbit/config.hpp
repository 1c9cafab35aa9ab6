#pragma once

// Flat key=value experiment configuration. "[section]" headers prefix the
// keys that follow as "section.key"; '#' starts a comment; keys outside any
// section are taken verbatim. Every key has a default and print_defaults()
// emits the complete normalized file.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coorbit/analyzers.hpp"
#include "coorbit/signals.hpp"
#include "coorbit/spaces.hpp"

namespace coorbit {

using ConfigMap = std::map<std::string, std::string>;

// located parse errors: "config line N: ..."
ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

struct ExperimentConfig {
  int n = 128;
  double length = 16.0;

  double beta = 2.0;
  int per_octave = 8;
  int octaves = 3;

  std::string family = "F";
  std::string variant = "def";
  std::string p_spec = "constant:2";
  std::string q_spec = "constant:2";
  double qtilde = 2.0;
  double a = 2.0;
  int levels = 8;

  std::string weight_name = "w2ml";
  double weight_s = 0.0;
  double weight_sprime = 0.0;
  double weight_x0 = 0.0;

  std::string analyzer = "meyer";
  std::string signal = "gaussian";

  int battery_count = 6;
  int battery_octaves = 3;

  std::vector<double> sweep_alpha = {1.0, 0.5, 0.25, 0.125};
  std::vector<double> sweep_beta = {2.0, 1.4142135623730951, 1.189207115002721};

  double tol = 1e-6;
  int max_iter = 300;
  int recon_levels = 1;

  std::uint64_t seed = 1234;
  int threads = 1;
  std::string out_dir = "out";

  static ExperimentConfig defaults() { return {}; }
  // unknown keys and malformed values abort with the offending key named
  void apply(const ConfigMap& kv);
  void validate() const;
  // normalized config text for *this (defaults() yields the documented file)
  std::string print_config() const;

  SpatialGrid make_grid() const { return SpatialGrid{n, length}; }
  ScaleAxis make_axis() const { return ScaleAxis{beta, per_octave, octaves}; }
  AnalyzerPair make_analyzer() const;
  Weight2ML make_weight(const SpatialGrid& grid) const;
  SpaceSpec make_space(const SpatialGrid& grid) const;
  GridSignal make_signal(const SpatialGrid& grid) const;
  std::vector<GridSignal> make_battery(const SpatialGrid& grid) const;
};

// "meyer" | "dyadic-pu" | "bump-band"
AnalyzerPair make_named_analyzer(const std::string& name);

// "zero", "gaussian[:sigma[:center]]", "modulated-gaussian[:sigma:omega0[:center]]",
// "bump[:width[:center]]", "meyer-wavelet[:j:k]", "random-bandlimited[:seed[:xi_max]]",
// "csv:PATH"; omitted parameters fall back to grid-proportioned values
GridSignal make_named_signal(const SpatialGrid& grid, const std::string& spec, int octaves,
                             std::uint64_t default_seed);

Family parse_family(const std::string& s);
Variant parse_variant(const std::string& s);
std::string variant_name(Variant v);

}  // namespace coorbit

#include "coorbit/config.hpp"

#include <fstream>
#include <sstream>

#include "coorbit/io.hpp"

namespace coorbit {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    require(used == s.size(), "config key '" + key + "': trailing characters in '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("config key '" + key + "': not a number: '" + s + "'");
  }
}

long to_long(const std::string& key, const std::string& s) {
  const double v = to_double(key, s);
  require(v == static_cast<double>(static_cast<long>(v)),
          "config key '" + key + "': expected an integer, got '" + s + "'");
  return static_cast<long>(v);
}

std::vector<double> to_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  for (const std::string& part : split(s, ',')) {
    const std::string t = trim(part);
    require(!t.empty(), "config key '" + key + "': empty list entry");
    out.push_back(to_double(key, t));
  }
  return out;
}

std::string join17(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt17(v[i]);
  }
  return out;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string line, prefix;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(lineno);
    if (line.front() == '[') {
      require(line.back() == ']', where + ": unterminated section header");
      prefix = trim(line.substr(1, line.size() - 2));
      require(!prefix.empty(), where + ": empty section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    require(eq != std::string::npos, where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    require(!key.empty(), where + ": empty key");
    out[prefix.empty() ? key : prefix + "." + key] = val;
  }
  return out;
}

ConfigMap load_config_file(const std::string& path) {
  return parse_config_text(read_text_file(path));
}

void ExperimentConfig::apply(const ConfigMap& kv) {
  for (const auto& [key, val] : kv) {
    if (key == "grid.n")
      n = static_cast<int>(to_long(key, val));
    else if (key == "grid.length")
      length = to_double(key, val);
    else if (key == "axis.beta")
      beta = to_double(key, val);
    else if (key == "axis.per_octave")
      per_octave = static_cast<int>(to_long(key, val));
    else if (key == "axis.octaves")
      octaves = static_cast<int>(to_long(key, val));
    else if (key == "space.family")
      family = val;
    else if (key == "space.variant")
      variant = val;
    else if (key == "space.p")
      p_spec = val;
    else if (key == "space.q")
      q_spec = val;
    else if (key == "space.qtilde")
      qtilde = to_double(key, val);
    else if (key == "space.a")
      a = to_double(key, val);
    else if (key == "space.levels")
      levels = static_cast<int>(to_long(key, val));
    else if (key == "weight.name")
      weight_name = val;
    else if (key == "weight.s")
      weight_s = to_double(key, val);
    else if (key == "weight.sprime")
      weight_sprime = to_double(key, val);
    else if (key == "weight.x0")
      weight_x0 = to_double(key, val);
    else if (key == "analyzer.name")
      analyzer = val;
    else if (key == "signal.name")
      signal = val;
    else if (key == "battery.count")
      battery_count = static_cast<int>(to_long(key, val));
    else if (key == "battery.octaves")
      battery_octaves = static_cast<int>(to_long(key, val));
    else if (key == "sweep.alpha")
      sweep_alpha = to_list(key, val);
    else if (key == "sweep.beta")
      sweep_beta = to_list(key, val);
    else if (key == "neumann.tol")
      tol = to_double(key, val);
    else if (key == "neumann.max_iter")
      max_iter = static_cast<int>(to_long(key, val));
    else if (key == "recon.levels")
      recon_levels = static_cast<int>(to_long(key, val));
    else if (key == "run.seed") {
      try {
        std::size_t used = 0;
        seed = std::stoull(val, &used);
        require(used == val.size(), "config key 'run.seed': trailing characters in '" + val + "'");
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("config key 'run.seed': not an integer: '" + val + "'");
      }
    }
    else if (key == "run.threads")
      threads = static_cast<int>(to_long(key, val));
    else if (key == "run.out")
      out_dir = val;
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  validate();
}

void ExperimentConfig::validate() const {
  require(n > 0 && (n & (n - 1)) == 0, "config key 'grid.n': must be a positive power of two");
  require(length > 0.0, "config key 'grid.length': must be positive");
  require(beta > 1.0, "config key 'axis.beta': must exceed 1");
  require(per_octave >= 1, "config key 'axis.per_octave': must be at least 1");
  require(octaves >= 1, "config key 'axis.octaves': must be at least 1");
  parse_family(family);
  parse_variant(variant);
  require(qtilde > 0.0, "config key 'space.qtilde': must be positive");
  require(a > 0.0, "config key 'space.a': must be positive");
  require(levels >= 1, "config key 'space.levels': must be at least 1");
  require(battery_count >= 0, "config key 'battery.count': must be nonnegative");
  require(battery_octaves >= 1, "config key 'battery.octaves': must be at least 1");
  require(!sweep_alpha.empty(), "config key 'sweep.alpha': must be nonempty");
  require(!sweep_beta.empty(), "config key 'sweep.beta': must be nonempty");
  for (double v : sweep_alpha)
    require(v > 0.0, "config key 'sweep.alpha': entries must be positive");
  for (double v : sweep_beta)
    require(v > 1.0, "config key 'sweep.beta': entries must exceed 1");
  require(tol > 0.0, "config key 'neumann.tol': must be positive");
  require(max_iter >= 1, "config key 'neumann.max_iter': must be at least 1");
  require(recon_levels >= 0, "config key 'recon.levels': must be nonnegative");
  require(threads >= 1, "config key 'run.threads': must be at least 1");
  require(!out_dir.empty(), "config key 'run.out': must be nonempty");
}

std::string ExperimentConfig::print_config() const {
  std::string out;
  out += "[grid]\n";
  out += "n = " + std::to_string(n) + "\n";
  out += "length = " + fmt17(length) + "\n\n";
  out += "[axis]\n";
  out += "beta = " + fmt17(beta) + "\n";
  out += "per_octave = " + std::to_string(per_octave) + "\n";
  out += "octaves = " + std::to_string(octaves) + "\n\n";
  out += "[space]\n";
  out += "family = " + family + "\n";
  out += "variant = " + variant + "\n";
  out += "p = " + p_spec + "\n";
  out += "q = " + q_spec + "\n";
  out += "qtilde = " + fmt17(qtilde) + "\n";
  out += "a = " + fmt17(a) + "\n";
  out += "levels = " + std::to_string(levels) + "\n\n";
  out += "[weight]\n";
  out += "name = " + weight_name + "\n";
  out += "s = " + fmt17(weight_s) + "\n";
  out += "sprime = " + fmt17(weight_sprime) + "\n";
  out += "x0 = " + fmt17(weight_x0) + "\n\n";
  out += "[analyzer]\n";
  out += "name = " + analyzer + "\n\n";
  out += "[signal]\n";
  out += "name = " + signal + "\n\n";
  out += "[battery]\n";
  out += "count = " + std::to_string(battery_count) + "\n";
  out += "octaves = " + std::to_string(battery_octaves) + "\n\n";
  out += "[sweep]\n";
  out += "alpha = " + join17(sweep_alpha) + "\n";
  out += "beta = " + join17(sweep_beta) + "\n\n";
  out += "[neumann]\n";
  out += "tol = " + fmt17(tol) + "\n";
  out += "max_iter = " + std::to_string(max_iter) + "\n\n";
  out += "[recon]\n";
  out += "levels = " + std::to_string(recon_levels) + "\n\n";
  out += "[run]\n";
  out += "seed = " + std::to_string(seed) + "\n";
  out += "threads = " + std::to_string(threads) + "\n";
  out += "out = " + out_dir + "\n";
  return out;
}

AnalyzerPair ExperimentConfig::make_analyzer() const { return make_named_analyzer(analyzer); }

Weight2ML ExperimentConfig::make_weight(const SpatialGrid& grid) const {
  if (weight_name == "constant") return constant_weight();
  require(weight_name == "w2ml",
          "config key 'weight.name': expected 'w2ml' or 'constant', got '" + weight_name + "'");
  return make_w2ml(grid, weight_s, weight_sprime, weight_x0);
}

SpaceSpec ExperimentConfig::make_space(const SpatialGrid& grid) const {
  SpaceSpec spec;
  spec.family = parse_family(family);
  spec.variant = parse_variant(variant);
  spec.p = make_named_exponent(grid, p_spec);
  spec.q = make_named_exponent(grid, q_spec);
  spec.qtilde = qtilde;
  spec.a = a;
  spec.w = make_weight(grid);
  return spec;
}

GridSignal ExperimentConfig::make_signal(const SpatialGrid& grid) const {
  return make_named_signal(grid, signal, battery_octaves, seed);
}

std::vector<GridSignal> ExperimentConfig::make_battery(const SpatialGrid& grid) const {
  require(battery_count >= 1, "battery is empty: set battery.count >= 1");
  return signal_battery(grid, battery_octaves, battery_count, seed);
}

AnalyzerPair make_named_analyzer(const std::string& name) {
  if (name == "meyer") return meyer_pair();
  if (name == "bump-band") return bump_band_pair();
  if (name == "dyadic-pu") {
    const DyadicPU pu = dyadic_partition(0);
    return make_admissible_pair(
        "dyadic-pu", [pu](double xi) { return cplx(pu.phi(std::abs(xi))); }, 0.5, 2.0);
  }
  throw std::invalid_argument("analyzer: expected 'meyer', 'dyadic-pu' or 'bump-band', got '" +
                              name + "'");
}

GridSignal make_named_signal(const SpatialGrid& grid, const std::string& spec, int octaves,
                             std::uint64_t default_seed) {
  const auto parts = split(spec, ':');
  const std::string& name = parts[0];
  const std::size_t argc = parts.size() - 1;
  auto arg = [&](std::size_t k, double fallback) {
    return k < argc ? to_double("signal '" + spec + "'", parts[k + 1]) : fallback;
  };
  const double L = grid.period;
  if (name == "zero") return GridSignal(grid);
  if (name == "gaussian") return gaussian(grid, arg(0, L / 16.0), arg(1, 0.0));
  if (name == "modulated-gaussian") {
    const double band = battery_band_limit(grid, octaves);
    return modulated_gaussian(grid, arg(0, L / 12.0), arg(1, 0.5 * band), arg(2, 0.0));
  }
  if (name == "bump") return bump(grid, arg(0, L / 10.0), arg(1, 0.0));
  if (name == "meyer-wavelet") {
    const long j = static_cast<long>(arg(0, 1.0));
    const long k = static_cast<long>(arg(1, 0.0));
    return meyer_atom(grid, meyer_generators(), 1, static_cast<int>(j), k);
  }
  if (name == "random-bandlimited") {
    const double seed = arg(0, static_cast<double>(default_seed));
    const double band = arg(1, battery_band_limit(grid, octaves));
    return random_bandlimited(grid, static_cast<std::uint64_t>(seed), band);
  }
  if (name == "csv") {
    require(argc >= 1, "signal 'csv': missing path");
    std::string path = parts[1];
    for (std::size_t k = 2; k < parts.size(); ++k) path += ":" + parts[k];
    return parse_signal_csv(grid, read_text_file(path));
  }
  throw std::invalid_argument("signal: unknown generator '" + name + "'");
}

Family parse_family(const std::string& s) {
  if (s == "B") return Family::B;
  if (s == "F") return Family::F;
  throw std::invalid_argument("config key 'space.family': expected 'B' or 'F', got '" + s + "'");
}

Variant parse_variant(const std::string& s) {
  if (s == "def") return Variant::Def;
  if (s == "1") return Variant::Norm1;
  if (s == "2") return Variant::Norm2;
  if (s == "3") return Variant::Norm3;
  if (s == "4") return Variant::Norm4;
  throw std::invalid_argument(
      "config key 'space.variant': expected 'def', '1', '2', '3' or '4', got '" + s + "'");
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Def:
      return "def";
    case Variant::Norm1:
      return "1";
    case Variant::Norm2:
      return "2";
    case Variant::Norm3:
      return "3";
    case Variant::Norm4:
      return "4";
  }
  return "def";
}

}  // namespace coorbit

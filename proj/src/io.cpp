#include "coorbit/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coorbit {

static_assert(std::endian::native == std::endian::little,
              "binary kernel tables assume a little-endian host");

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open for writing: " + path);
  out << text;
  require(out.good(), "write failed: " + path);
}

namespace {

// non-empty, non-comment lines after an optional header line
std::vector<std::string> data_lines(const std::string& text, const std::string& header) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (first && line == header) {
      first = false;
      continue;
    }
    first = false;
    out.push_back(line);
  }
  return out;
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

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    require(used == s.size(), where + ": trailing characters in '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(where + ": not a number: '" + s + "'");
  }
}

}  // namespace

std::string signal_csv(const GridSignal& f) {
  std::string out = "index,re,im\n";
  for (int i = 0; i < f.grid.n; ++i)
    out += std::to_string(i) + "," + fmt17(f[i].real()) + "," + fmt17(f[i].imag()) + "\n";
  return out;
}

GridSignal parse_signal_csv(const SpatialGrid& grid, const std::string& text) {
  GridSignal f(grid);
  const auto lines = data_lines(text, "index,re,im");
  require(static_cast<int>(lines.size()) == grid.n,
          "signal csv: expected " + std::to_string(grid.n) + " rows, got " +
              std::to_string(lines.size()));
  for (const std::string& line : lines) {
    const auto cols = split(line, ',');
    require(cols.size() == 3, "signal csv: expected 3 columns in '" + line + "'");
    const int i = static_cast<int>(parse_double(cols[0], "signal csv index"));
    require(i >= 0 && i < grid.n, "signal csv: index out of range in '" + line + "'");
    f[i] = cplx(parse_double(cols[1], "signal csv re"), parse_double(cols[2], "signal csv im"));
  }
  return f;
}

std::string exponent_csv(const ExponentField& p) {
  std::string out = "index,value\n";
  for (int i = 0; i < p.grid.n; ++i)
    out += std::to_string(i) + "," + fmt17(p.p[i]) + "\n";
  return out;
}

ExponentField parse_exponent_csv(const SpatialGrid& grid, const std::string& text) {
  real_vec v(grid.n, 0.0);
  const auto lines = data_lines(text, "index,value");
  require(static_cast<int>(lines.size()) == grid.n,
          "exponent csv: expected " + std::to_string(grid.n) + " rows, got " +
              std::to_string(lines.size()));
  for (const std::string& line : lines) {
    const auto cols = split(line, ',');
    require(cols.size() == 2, "exponent csv: expected 2 columns in '" + line + "'");
    const int i = static_cast<int>(parse_double(cols[0], "exponent csv index"));
    require(i >= 0 && i < grid.n, "exponent csv: index out of range in '" + line + "'");
    v[i] = parse_double(cols[1], "exponent csv value");
  }
  return ExponentField(grid, std::move(v));
}

std::string field_csv(const XField& F) {
  std::string out = "slot,node,re,im\n";
  for (int s = 0; s < F.slots(); ++s)
    for (int i = 0; i < F.grid.n; ++i)
      out += std::to_string(s) + "," + std::to_string(i) + "," + fmt17(F.at(s, i).real()) + "," +
             fmt17(F.at(s, i).imag()) + "\n";
  return out;
}

std::string field_matrix(const XField& F) {
  std::string out;
  for (int s = 0; s < F.slots(); ++s) {
    for (int i = 0; i < F.grid.n; ++i) {
      if (i) out += ' ';
      out += fmt17(std::abs(F.at(s, i)));
    }
    out += '\n';
  }
  return out;
}

std::string profile_csv(const SpatialGrid& grid, const FreqProfile& prof) {
  std::string out = "xi,re,im\n";
  for (int k = -grid.n / 2; k < grid.n / 2; ++k) {
    const double xi = 2.0 * PI * k / grid.period;
    const cplx v = prof(xi);
    out += fmt17(xi) + "," + fmt17(v.real()) + "," + fmt17(v.imag()) + "\n";
  }
  return out;
}

std::string norm_report_json(const std::string& family, const std::string& variant,
                             const NormResult& r) {
  nlohmann::json j;
  j["family"] = family;
  j["variant"] = variant;
  j["value"] = r.value;
  j["flags"] = r.flags;
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "alpha,beta,osc_a1,osc_amnu,contraction_ratio,recon_residual\n";
  for (const SweepRow& r : rows)
    out += fmt17(r.alpha) + "," + fmt17(r.beta) + "," + fmt17(r.osc_a1) + "," +
           fmt17(r.osc_amnu) + "," + fmt17(r.ratio) + "," + fmt17(r.resid) + "\n";
  return out;
}

std::string plot_xy(const real_vec& x, const real_vec& y) {
  require(x.size() == y.size(), "plot_xy: length mismatch");
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) out += fmt17(x[i]) + " " + fmt17(y[i]) + "\n";
  return out;
}

void save_kernel_bin(const std::string& path, const KernelOp& K) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open for writing: " + path);
  const std::uint64_t layout = K.invariant ? 1 : 0;
  std::uint64_t d1 = 0, d2 = 0;
  if (K.invariant) {
    d1 = K.rings.size();
    d2 = static_cast<std::uint64_t>(K.grid.n);
  } else {
    d1 = d2 = static_cast<std::uint64_t>(K.cells());
  }
  auto put_u64 = [&out](std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
  };
  put_u64(layout);
  put_u64(d1);
  put_u64(d2);
  auto put_pair = [&out](double re, double im) {
    out.write(reinterpret_cast<const char*>(&re), sizeof(re));
    out.write(reinterpret_cast<const char*>(&im), sizeof(im));
  };
  if (K.invariant) {
    for (const cplx_vec& ring : K.rings)
      for (const cplx& v : ring) put_pair(v.real(), v.imag());
  } else {
    for (double v : K.dense) put_pair(v, 0.0);
  }
  require(out.good(), "write failed: " + path);
}

KernelOp load_kernel_bin(const std::string& path, const SpatialGrid& grid,
                         const ScaleAxis& axis) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open for reading: " + path);
  auto get_u64 = [&in, &path]() {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    require(in.good(), "truncated kernel table: " + path);
    return v;
  };
  const std::uint64_t layout = get_u64();
  const std::uint64_t d1 = get_u64();
  const std::uint64_t d2 = get_u64();
  auto get_pair = [&in, &path]() {
    double re = 0.0, im = 0.0;
    in.read(reinterpret_cast<char*>(&re), sizeof(re));
    in.read(reinterpret_cast<char*>(&im), sizeof(im));
    require(in.good(), "truncated kernel table: " + path);
    return cplx(re, im);
  };
  KernelOp K;
  K.grid = grid;
  K.axis = axis;
  const std::uint64_t sheets = static_cast<std::uint64_t>(axis.slots()) + 1;
  if (layout == 1) {
    require(d1 == sheets * sheets && d2 == static_cast<std::uint64_t>(grid.n),
            "kernel table dims do not match the grid/axis: " + path);
    K.invariant = true;
    K.rings.assign(d1, cplx_vec(grid.n));
    for (cplx_vec& ring : K.rings)
      for (cplx& v : ring) v = get_pair();
  } else {
    require(layout == 0, "unknown kernel table layout: " + path);
    const std::uint64_t cells = sheets * static_cast<std::uint64_t>(grid.n);
    require(d1 == cells && d2 == cells,
            "kernel table dims do not match the grid/axis: " + path);
    K.invariant = false;
    K.dense.resize(d1 * d2);
    for (double& v : K.dense) {
      const cplx z = get_pair();
      require(z.imag() == 0.0, "dense kernel table with nonzero imaginary part: " + path);
      v = z.real();
    }
  }
  return K;
}

}  // namespace coorbit

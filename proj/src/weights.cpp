#include "coorbit/weights.hpp"

#include <sstream>

namespace coorbit {

Weight2ML make_w2ml(const SpatialGrid& grid, double s, double sprime, double x0) {
  Weight2ML w;
  std::ostringstream name;
  name << "w2ml(" << s << "," << sprime << ")";
  w.name = name.str();
  w.alpha1 = s + std::min(sprime, 0.0);
  w.alpha2 = s + std::max(sprime, 0.0);
  w.alpha3 = std::abs(sprime);
  w.eval = [grid, s, sprime, x0](double x, double t) {
    const double d = grid.torus_dist(x - x0);
    if (is_inf(t)) return std::pow(1.0 + d, sprime);
    return std::pow(t, -s) * std::pow(1.0 + d / t, sprime);
  };
  return w;
}

Weight2ML constant_weight() {
  Weight2ML w;
  w.name = "constant";
  w.eval = [](double, double) { return 1.0; };
  return w;
}

Weight2ML make_named_weight(const SpatialGrid& grid, const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  require(!parts.empty(), "make_named_weight: empty spec");
  if (parts[0] == "constant") return constant_weight();
  if (parts[0] == "w2ml") {
    const double s = parts.size() > 1 ? std::stod(parts[1]) : 0.0;
    const double sp = parts.size() > 2 ? std::stod(parts[2]) : 0.0;
    const double x0 = parts.size() > 3 ? std::stod(parts[3]) : 0.0;
    return make_w2ml(grid, s, sp, x0);
  }
  require(false, "make_named_weight: unknown kind " + parts[0]);
  return {};
}

Weight2ML wtilde(const Weight2ML& w) {
  Weight2ML out;
  out.name = w.name + "~";
  out.alpha1 = w.alpha1 + 0.5;
  out.alpha2 = w.alpha2 + 0.5;
  out.alpha3 = w.alpha3;
  auto base = w.eval;
  out.eval = [base](double x, double t) {
    if (is_inf(t)) return base(x, t);
    return base(x, t) / std::sqrt(t);
  };
  return out;
}

std::vector<real_vec> weight_sequence(const Weight2ML& w, const SpatialGrid& grid, int J) {
  std::vector<real_vec> seq(J + 1, real_vec(grid.n));
  for (int i = 0; i < grid.n; ++i) seq[0][i] = w(grid.node(i), INF);
  for (int j = 1; j <= J; ++j) {
    const double t = std::pow(2.0, -j);
    for (int i = 0; i < grid.n; ++i) seq[j][i] = w(grid.node(i), t);
  }
  return seq;
}

AdmissibilityReport check_admissible(const Weight2ML& w, const SpatialGrid& grid,
                                     const ScaleAxis& axis) {
  AdmissibilityReport rep;
  const double tol = 1e-12;
  const int node_stride = std::max(1, grid.n / 64);

  std::vector<double> scales;
  for (int m = 0; m < axis.slots(); ++m) scales.push_back(axis.scale(m));

  rep.alpha1_obs = INF;
  rep.alpha2_obs = -INF;

  // W1 over ordered scale pairs t < s, plus s = inf
  for (int i = 0; i < grid.n; i += node_stride) {
    const double x = grid.node(i);
    for (std::size_t a = 0; a < scales.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        const double t = scales[a], s = scales[b];  // t < s
        const double ratio = std::log(w(x, t) / w(x, s)) / std::log(s / t);
        rep.alpha1_obs = std::min(rep.alpha1_obs, ratio);
        rep.alpha2_obs = std::max(rep.alpha2_obs, ratio);
        const double lo = w.alpha1 * std::log(s / t);
        const double hi = w.alpha2 * std::log(s / t);
        const double lw = std::log(w(x, t) / w(x, s));
        const double excess = std::max(lo - lw, lw - hi);
        if (excess > rep.w1_excess) {
          rep.w1_excess = excess;
          rep.worst_w1 = {x, x, t, s, excess};
        }
      }
      const double t = scales[a];
      const double ratio = std::log(w(x, t) / w(x, INF)) / std::log(1.0 / t);
      rep.alpha1_obs = std::min(rep.alpha1_obs, ratio);
      rep.alpha2_obs = std::max(rep.alpha2_obs, ratio);
      const double lw = std::log(w(x, t) / w(x, INF));
      const double excess =
          std::max(w.alpha1 * std::log(1.0 / t) - lw, lw - w.alpha2 * std::log(1.0 / t));
      if (excess > rep.w1_excess) {
        rep.w1_excess = excess;
        rep.worst_w1 = {x, x, t, INF, excess};
      }
    }
  }

  // W2 over node pairs at every slot and the inf sheet
  rep.alpha3_obs = 0.0;
  std::vector<double> all_scales = scales;
  all_scales.push_back(INF);
  for (double t : all_scales) {
    const double teff = is_inf(t) ? 1.0 : t;
    for (int i = 0; i < grid.n; i += node_stride) {
      for (int j = 0; j < grid.n; j += node_stride) {
        if (i == j) continue;
        const double x = grid.node(i), y = grid.node(j);
        const double d = grid.torus_dist(x - y);
        const double lr = std::log(w(x, t) / w(y, t));
        const double la = std::log(1.0 + d / teff);
        rep.alpha3_obs = std::max(rep.alpha3_obs, lr / la);
        const double excess = lr - w.alpha3 * la;
        if (excess > rep.w2_excess) {
          rep.w2_excess = excess;
          rep.worst_w2 = {x, y, t, t, excess};
        }
      }
    }
  }

  rep.pass = rep.w1_excess <= tol && rep.w2_excess <= tol;
  return rep;
}

ReservoirWeight ReservoirWeight::from(const Weight2ML& w, const SpatialGrid& grid,
                                      const ScaleAxis& axis, double p_minus) {
  require(p_minus > 0.0, "ReservoirWeight: p_minus must be positive");
  ReservoirWeight r;
  r.grid = grid;
  r.axis = axis;
  r.values.assign(static_cast<std::size_t>(axis.slots() + 1) * grid.n, 0.0);
  const double e = w.alpha1 - 1.0 / p_minus;  // d = 1
  double mn = INF;
  for (int m = 0; m <= axis.slots(); ++m) {
    const bool inf_sheet = m == axis.slots();
    const double t = inf_sheet ? 1.0 : axis.scale(m);
    for (int i = 0; i < grid.n; ++i) {
      const double dx = grid.torus_dist(grid.node(i));
      const double v = (inf_sheet ? 1.0 : std::pow(t, e)) * std::pow(1.0 + dx, w.alpha3);
      r.values[static_cast<std::size_t>(m) * grid.n + i] = v;
      mn = std::min(mn, v);
    }
  }
  for (double& v : r.values) v /= mn;
  return r;
}

}  // namespace coorbit

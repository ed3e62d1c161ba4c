#include "qclt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "qclt/cascade.hpp"
#include "qclt/charfun.hpp"
#include "qclt/metrics.hpp"
#include "qclt/states.hpp"

namespace qclt {

namespace {

constexpr const char* kVersion = "qclt 1.0";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c))
    return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) return fmt_double(std::get<double>(c));
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "1" : "0";
  return std::get<std::string>(c);
}

std::string resolved_state_id(const ExperimentConfig& c) {
  if (c.state_id == "thermal")
    return "thermal:" + fmt_double(c.photon_N);
  return c.state_id;
}

double base_scale(const ExperimentConfig& c) {
  if (c.log_base == "bits") return 1.0 / std::numbers::ln2;
  if (c.log_base != "nats")
    throw std::invalid_argument("log_base must be nats or bits");
  return 1.0;
}

std::vector<int> default_n_list(const std::string& subcommand) {
  if (subcommand == "cascade") return {2, 4, 8, 16, 32, 64};
  if (subcommand == "capacity") return {32};
  if (subcommand == "counterexample") return {10, 100, 1000, 10000};
  return {4, 8, 16, 32, 64, 128, 256};
}

std::vector<int> n_list_for(const ExperimentConfig& c,
                            const std::string& subcommand) {
  std::vector<int> ns = c.n_list.empty() ? default_n_list(subcommand) : c.n_list;
  for (size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1])
      throw std::invalid_argument("n list must be strictly increasing");
  if (!ns.empty() && ns.front() < 1)
    throw std::invalid_argument("n must be positive");
  return ns;
}

void common_meta(Table& t, const ExperimentConfig& c,
                 const std::string& subcommand) {
  t.meta.emplace_back("version", kVersion);
  t.meta.emplace_back("subcommand", subcommand);
  t.meta.emplace_back("state", resolved_state_id(c));
  t.meta.emplace_back("dim", std::to_string(c.dim));
  t.meta.emplace_back("grid_extent", fmt_double(c.grid_extent));
  t.meta.emplace_back("grid_points", std::to_string(c.grid_points));
  t.meta.emplace_back("log_base", c.log_base);
  t.meta.emplace_back("seed", std::to_string(c.seed));
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ",";
    out += columns[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += cell_to_string(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string Table::to_json() const {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) j["meta"][k] = v;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<std::int64_t>(c))
        obj[columns[i]] = std::get<std::int64_t>(c);
      else if (std::holds_alternative<double>(c))
        obj[columns[i]] = std::get<double>(c);
      else if (std::holds_alternative<bool>(c))
        obj[columns[i]] = std::get<bool>(c);
      else
        obj[columns[i]] = std::get<std::string>(c);
    }
    j["rows"].push_back(std::move(obj));
  }
  return j.dump(2) + "\n";
}

std::string Table::render(const std::string& format) const {
  if (format == "json") return to_json();
  if (format == "csv") return to_csv();
  throw std::invalid_argument("format must be csv or json");
}

Table run_rates(const ExperimentConfig& config) {
  const auto ns = n_list_for(config, "rates");
  const auto state = resolve_state(resolved_state_id(config), config.dim);
  if (!state.matrix)
    throw std::invalid_argument("rates: state must be Fock-representable");
  const GaussianSpec gspec = gaussification(*state.matrix);
  const CharFunction chi_g = charfun_gaussian(gspec);
  const bool thermal = gspec.thermal_N.has_value();
  FockDensityMatrix tau;
  if (thermal) tau = thermal_state(*gspec.thermal_N, config.dim);
  const double s = base_scale(config);

  Table t;
  t.name = "rates";
  common_meta(t, config, "rates");
  t.columns = {"n",      "hs",     "trace",     "relent",
               "grid_R", "grid_K", "trunc_tol"};
  const PhaseGrid base(config.grid_extent, config.grid_points);
  std::vector<std::pair<int, double>> pts;
  for (const int n : ns) {
    const CharFunction chi_n = self_convolution_power(state.chi, n);
    const PhaseGrid grid = choose_extent({chi_n, chi_g}, base);
    const double hs =
        hs_distance_plancherel(chi_n, chi_g, grid, config.threads);
    double trace = std::numeric_limits<double>::quiet_NaN();
    double relent = std::numeric_limits<double>::quiet_NaN();
    double tol = state.matrix->trunc_tol;
    if (thermal) {
      const FockDensityMatrix recon =
          reconstruct_density(chi_n, config.dim, grid, config.threads);
      trace = trace_distance(recon, tau);
      try {
        relent = s * relative_entropy_vs_gaussification(recon, gspec);
      } catch (const std::invalid_argument&) {
        // Moments of the reconstruction drift once the truncation bites;
        // the entropy identity is then unreliable and the cell stays empty.
      }
      tol = recon.trunc_tol;
    }
    pts.emplace_back(n, hs);
    t.rows.push_back({std::int64_t(n), hs, trace, relent, grid.half_extent,
                      std::int64_t(grid.points_per_axis), tol});
  }
  const RateFit fit = rate_fit(pts);
  t.meta.emplace_back("fit_slope", fmt_double(fit.slope));
  t.meta.emplace_back("fit_intercept", fmt_double(fit.intercept));
  t.meta.emplace_back("fit_r2", fmt_double(fit.r_squared));
  return t;
}

Table run_cascade(const ExperimentConfig& config) {
  const auto ns = n_list_for(config, "cascade");
  const auto env = resolve_state(resolved_state_id(config), config.dim);
  if (!env.matrix)
    throw std::invalid_argument("cascade: environment must be Fock-representable");
  const GaussianSpec gspec = gaussification(*env.matrix);
  if (!gspec.thermal_N)
    throw std::invalid_argument(
        "cascade: environment Gaussification must be thermal");
  const double N = *gspec.thermal_N;
  const CharFunction chi_g = charfun_gaussian(gspec);
  const FockDensityMatrix tau = thermal_state(N, config.dim);

  Table t;
  t.name = "cascade";
  common_meta(t, config, "cascade");
  t.meta.emplace_back("lambda", fmt_double(config.lambda));
  t.meta.emplace_back("env_N", fmt_double(N));
  t.columns = {"n",      "hs",     "trace",     "diamond_bound",
               "grid_R", "grid_K", "trunc_tol"};
  const PhaseGrid base(config.grid_extent, config.grid_points);
  std::vector<std::pair<int, double>> pts;
  for (const int n : ns) {
    const CharFunction eff =
        cascade_environment_charfun(env.chi, config.lambda, n);
    const PhaseGrid grid = choose_extent({eff, chi_g}, base);
    const double hs = hs_distance_plancherel(eff, chi_g, grid, config.threads);
    const FockDensityMatrix recon =
        reconstruct_density(eff, config.dim, grid, config.threads);
    const double trace = trace_distance(recon, tau);
    const double diamond = diamond_distance_bound(recon, tau);
    pts.emplace_back(n, hs);
    t.rows.push_back({std::int64_t(n), hs, trace, diamond, grid.half_extent,
                      std::int64_t(grid.points_per_axis), recon.trunc_tol});
  }
  if (pts.size() >= 4) {
    const RateFit fit = rate_fit(pts);
    t.meta.emplace_back("fit_slope", fmt_double(fit.slope));
    t.meta.emplace_back("fit_intercept", fmt_double(fit.intercept));
    t.meta.emplace_back("fit_r2", fmt_double(fit.r_squared));
  }
  return t;
}

Table run_capacity(const ExperimentConfig& config) {
  const auto ns = n_list_for(config, "capacity");
  const int n = ns.back();
  const auto env = resolve_state(resolved_state_id(config), config.dim);
  if (!env.matrix)
    throw std::invalid_argument("capacity: environment must be Fock-representable");
  const GaussianSpec gspec = gaussification(*env.matrix);
  if (!gspec.thermal_N)
    throw std::invalid_argument(
        "capacity: environment Gaussification must be thermal");
  const double N = *gspec.thermal_N;
  const double lambda = config.lambda;
  const double E = config.energy_E;
  const FockDensityMatrix tau = thermal_state(N, config.dim);

  CapacityReport r;
  r.lambda = lambda;
  r.N = N;
  r.E = E;
  double grid_R = config.grid_extent;
  int grid_K = config.grid_points;
  double tol = 0.0;
  if (lambda == 1.0) {
    r.eps = 0.0;  // the cascade is the identity channel at every n
  } else if (lambda == 0.0) {
    r.eps = 0.5 * trace_distance(*env.matrix, tau);
  } else {
    const CharFunction eff = cascade_environment_charfun(env.chi, lambda, n);
    const PhaseGrid base(config.grid_extent, config.grid_points);
    const PhaseGrid grid = choose_extent({eff}, base);
    const FockDensityMatrix recon =
        reconstruct_density(eff, config.dim, grid, config.threads);
    r.eps = 0.5 * diamond_distance_bound(recon, tau);
    grid_R = grid.half_extent;
    grid_K = grid.points_per_axis;
    tol = recon.trunc_tol;
  }
  r.classical = classical_capacity_thermal(lambda, N, E);
  const QuantumBand band = quantum_capacity_band(lambda, N, E);
  r.q_lower = band.lower;
  r.q_upper = band.upper;
  r.f1_skipped = band.f1_skipped;
  r.f2_skipped = band.f2_skipped;
  const CapacityDeltas deltas = capacity_error_terms(r.eps, lambda, N, E);
  r.delta_c = deltas.delta_c;
  r.delta_q = deltas.delta_q;

  const double s = base_scale(config);
  Table t;
  t.name = "capacity";
  common_meta(t, config, "capacity");
  t.columns = {"lambda",  "N",       "E",          "n",
               "classical", "q_lower", "q_upper",  "f1_skipped",
               "f2_skipped", "eps",    "delta_c",  "delta_q",
               "grid_R",  "grid_K",  "trunc_tol"};
  t.rows.push_back({r.lambda, r.N, r.E, std::int64_t(n), s * r.classical,
                    s * r.q_lower, s * r.q_upper, r.f1_skipped, r.f2_skipped,
                    r.eps, s * r.delta_c, s * r.delta_q, grid_R,
                    std::int64_t(grid_K), tol});
  return t;
}

Table run_counterexample(const ExperimentConfig& config) {
  const std::string id = config.state_id;
  if (id != "cauchy" && id != "heavy_tail")
    throw std::invalid_argument(
        "counterexample: state must be cauchy or heavy_tail");
  const auto st = resolve_state(id, config.dim);
  std::vector<std::pair<std::string, Complex>> probes = {
      {"i", Complex(0, 1)}, {"2i", Complex(0, 2)}};
  if (id == "cauchy") probes.emplace_back("1+i", Complex(1, 1));

  Table t;
  t.name = "counterexample";
  common_meta(t, config, "counterexample");
  t.columns = {"n", "probe", "value", "chi_at_zero"};
  for (const int n : n_list_for(config, "counterexample")) {
    const CharFunction chin = self_convolution_power(st.chi, n);
    const double chi0 = std::abs(chin(Complex(0, 0)));
    for (const auto& [label, z0] : probes)
      t.rows.push_back(
          {std::int64_t(n), label, std::abs(chin(z0)), chi0});
  }
  return t;
}

Table run_decay(const ExperimentConfig& config) {
  std::vector<std::string> battery = {"vacuum", "fock1", "thermal:1",
                                      "squeezed:0.1"};
  const std::string extra = resolved_state_id(config);
  if (std::find(battery.begin(), battery.end(), extra) == battery.end() &&
      extra != "cauchy" && extra != "heavy_tail")
    battery.push_back(extra);

  std::vector<double> radii;
  for (int i = 0; i < 25; ++i) radii.push_back(0.1 + i * (4.9 / 24));

  Table t;
  t.name = "decay";
  common_meta(t, config, "decay");
  t.columns = {"state", "delta", "min_margin", "pass"};
  for (const auto& id : battery) {
    const auto st = resolve_state(id, config.dim);
    if (st.analytic_only)
      throw std::invalid_argument("decay: state must have finite energy");
    for (int k = 1; k <= 9; ++k) {
      const double delta = 0.1 * k;
      const double margin =
          verify_decay_bound(st.chi, st.energy, radii, {delta});
      t.rows.push_back({id, delta, margin, margin >= -1e-9});
    }
  }
  return t;
}

Table run_verify(const ExperimentConfig& config, VerifySummary* summary_out) {
  VerifyOptions opt;
  opt.seed = config.seed;
  opt.dim = std::min(config.dim, 24);
  opt.threads = config.threads;
  opt.grid_extent = config.grid_extent;
  opt.grid_points = config.grid_points;
  const VerifySummary summary = run_verify_battery(opt);
  if (summary_out) *summary_out = summary;

  Table t;
  t.name = "verify";
  common_meta(t, config, "verify");
  t.meta.emplace_back("verify_dim", std::to_string(opt.dim));
  t.meta.emplace_back("all_pass", summary.all_pass ? "1" : "0");
  t.columns = {"group", "pass", "worst_residual", "detail"};
  for (const auto& g : summary.groups)
    t.rows.push_back({g.name, g.pass, g.worst, g.detail});
  return t;
}

}  // namespace qclt

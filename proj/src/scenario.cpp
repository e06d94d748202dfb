#include "condkin/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "condkin/errors.hpp"
#include "condkin/mellin.hpp"

namespace condkin {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\'')))
    return v.substr(1, v.size() - 2);
  return v;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config field '" + key + "': not a number: " + v);
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config field '" + key + "': not an integer: " + v);
  }
}

bool to_bool(const std::string& key, std::string v) {
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config field '" + key + "': not a boolean: " + v);
}

void set_field(ScenarioConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string v = unquote(raw);
  std::string lv = v;
  std::transform(lv.begin(), lv.end(), lv.begin(), ::tolower);
  if (key == "grid.n")
    cfg.grid_n = std::size_t(to_long(key, v));
  else if (key == "grid.x_max")
    cfg.x_max = to_double(key, v);
  else if (key == "grid.grading")
    cfg.grading = to_double(key, v);
  else if (key == "initial") {
    if (lv == "example1")
      cfg.initial = InitialKind::Example1;
    else if (lv == "example2")
      cfg.initial = InitialKind::Example2;
    else if (lv == "constant")
      cfg.initial = InitialKind::Constant;
    else if (lv == "bump")
      cfg.initial = InitialKind::Bump;
    else if (lv == "file")
      cfg.initial = InitialKind::File;
    else
      throw ConfigError("config field 'initial': unknown kind " + v);
  } else if (key == "initial.constant")
    cfg.constant_value = to_double(key, v);
  else if (key == "initial.center")
    cfg.bump_center = to_double(key, v);
  else if (key == "initial.width")
    cfg.bump_width = to_double(key, v);
  else if (key == "initial.height")
    cfg.bump_height = to_double(key, v);
  else if (key == "initial.path")
    cfg.file_path = v;
  else if (key == "theta")
    cfg.theta = to_double(key, v);
  else if (key == "tau_end")
    cfg.tau_end = to_double(key, v);
  else if (key == "dt")
    cfg.dt = to_double(key, v);
  else if (key == "store_every")
    cfg.store_every = std::size_t(to_long(key, v));
  else if (key == "qc0")
    cfg.qc0 = to_double(key, v);
  else if (key == "convention") {
    if (lv == "sinh_x2")
      cfg.convention = WeightConvention::SinhX2;
    else if (lv == "sinh_half_x2")
      cfg.convention = WeightConvention::SinhHalfX2;
    else
      throw ConfigError("config field 'convention': expected sinh_x2 or sinh_half_x2");
  } else if (key == "method") {
    if (lv == "crank_nicolson")
      cfg.method = StepMethod::CrankNicolson;
    else if (lv == "rk4")
      cfg.method = StepMethod::Rk4;
    else if (lv == "backward_euler")
      cfg.method = StepMethod::BackwardEuler;
    else
      throw ConfigError("config field 'method': unknown method " + v);
  } else if (key == "nonlinear.enabled")
    cfg.nonlinear_enabled = to_bool(key, v);
  else if (key == "nonlinear.c1")
    cfg.nonlinear.C1 = to_double(key, v);
  else if (key == "nonlinear.c2")
    cfg.nonlinear.C2 = to_double(key, v);
  else if (key == "outputs")
    cfg.outputs = v;
  else if (key == "snapshots")
    cfg.snapshots = int(to_long(key, v));
  else
    throw ConfigError("unknown config field '" + key + "'");
}

void format_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw NumericalFailure("cannot open output file " + path.string(), 0.0, 0.0);
  os << text;
}

} // namespace

void ScenarioConfig::validate() const {
  if (grid_n < 16) throw ConfigError("grid.n: must be at least 16");
  if (!(x_max > 0.0)) throw ConfigError("grid.x_max: must be positive");
  if (!(grading > 0.0)) throw ConfigError("grid.grading: must be positive");
  if (!(tau_end > 0.0)) throw ConfigError("tau_end: must be positive");
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  if (!(theta >= 0.0 && theta < 1.0)) throw ConfigError("theta: must lie in [0, 1)");
  if (!(qc0 > 0.0)) throw ConfigError("qc0: must be positive");
  if (store_every == 0) throw ConfigError("store_every: must be positive");
  if (snapshots < 0) throw ConfigError("snapshots: must be nonnegative");
  if (nonlinear_enabled && (!(nonlinear.C1 > 0.0) || !(nonlinear.C2 > 0.0)))
    throw ConfigError("nonlinear.c1/c2: must be positive");
  if (initial == InitialKind::File && file_path.empty())
    throw ConfigError("initial.path: required for initial = file");
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path);
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    set_field(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void apply_override(ScenarioConfig& cfg, const std::string& kv) {
  const std::size_t eq = kv.find('=');
  if (eq == std::string::npos) throw ConfigError("override must look like key=value: " + kv);
  set_field(cfg, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
}

StateField initial_state(const ScenarioConfig& cfg, const RadialGrid& grid) {
  StateField f;
  f.theta = cfg.theta;
  f.values.resize(grid.size());
  const double c = cfg.convention == WeightConvention::SinhX2 ? 2.0 : 1.0;
  switch (cfg.initial) {
    case InitialKind::Example1:
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x2 = grid.nodes[i] * grid.nodes[i];
        f.values[i] = (1.02 / (1.0 + x2) - 1.0) * (-std::expm1(-c * x2)) / x2;
      }
      break;
    case InitialKind::Example2:
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i], x2 = x * x;
        f.values[i] = 0.2 * std::atan(x / 10.0) * (-std::expm1(-c * x2)) / x2;
      }
      break;
    case InitialKind::Constant:
      std::fill(f.values.begin(), f.values.end(), cfg.constant_value);
      break;
    case InitialKind::Bump:
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = (grid.nodes[i] - cfg.bump_center) / cfg.bump_width;
        f.values[i] = cfg.bump_height * std::exp(-0.5 * d * d);
      }
      break;
    case InitialKind::File: {
      std::ifstream is(cfg.file_path);
      if (!is) throw ConfigError("initial.path: cannot read " + cfg.file_path);
      std::vector<double> xs, ys;
      std::string line;
      while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double x, y;
        if (ls >> x >> y) {
          xs.push_back(x);
          ys.push_back(y);
        }
      }
      if (xs.size() < 2) throw ConfigError("initial.path: need at least two samples");
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i];
        auto it = std::lower_bound(xs.begin(), xs.end(), x);
        if (it == xs.begin()) {
          f.values[i] = ys.front();
        } else if (it == xs.end()) {
          f.values[i] = ys.back();
        } else {
          const std::size_t hi = std::size_t(it - xs.begin());
          const double w = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
          f.values[i] = (1.0 - w) * ys[hi - 1] + w * ys[hi];
        }
      }
      break;
    }
  }
  return f;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  const RadialGrid grid = RadialGrid::graded(cfg.grid_n, cfg.x_max, cfg.grading);
  const EquilibriumWeights weights = EquilibriumWeights::build(grid.nodes, cfg.convention);
  const GeneratorMatrix gen = assemble_generator(grid, weights);
  const StateField f0 = initial_state(cfg, grid);

  RunSchedule sched;
  sched.dt = cfg.dt;
  sched.tau_end = cfg.tau_end;
  sched.store_every = cfg.store_every;
  sched.method = cfg.method;
  const EvolutionRun evo = run(f0, gen, sched);

  const ObservableSeries series = drift_series(evo, gen, weights, cfg.qc0);
  const TimeMap map = build_map(series);

  ScenarioResult result;
  result.constants = asymptotic_constants(f0, weights, grid);
  result.N_initial = series.N.front();
  result.E_initial = series.E.front();
  result.t_end = map.t_end();
  result.pc_end_ratio = series.qc.back() / series.qc.front();

  const double e0 = series.E.front();
  double l2_prev = 0.0;
  for (std::size_t k = 0; k < series.tau.size(); ++k) {
    result.energy_rel_drift = std::max(
        result.energy_rel_drift, std::abs(series.E[k] - e0) / std::max(1e-300, std::abs(e0)));
    result.drift_identity =
        std::max(result.drift_identity, std::abs(series.Mcal[k] - (series.N[k] - series.N[0])));
    result.log_conservation =
        std::max(result.log_conservation,
                 std::abs(std::log(series.qc[k] / series.qc[0]) + series.N[k] - series.N[0]));
    // L2(dmu) distance to the conserved constant
    std::vector<double> d = evo.states[k].values;
    for (auto& v : d) v -= result.constants.Cstar;
    double l2 = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) l2 += gen.balance_measure()[i] * d[i] * d[i];
    if (k == 0) result.l2_initial = l2;
    if (k + 1 == series.tau.size()) result.l2_final = l2;
    if (k > 0 && l2 > l2_prev * (1.0 + 1e-12) + 1e-300) ++result.l2_monotone_violations;
    l2_prev = l2;
  }

  if (cfg.nonlinear_enabled) {
    result.nonlinear_enabled = true;
    result.nonlinear_horizon = horizon(evo, cfg.nonlinear, weights, grid);
  }

  // series.csv
  std::string csv = "tau,t,N,E,m,Mcal,qc,D,b\n";
  for (std::size_t k = 0; k < series.tau.size(); ++k) {
    const double cols[9] = {series.tau[k], map.t[k],    series.N[k], series.E[k], series.m[k],
                            series.Mcal[k], series.qc[k], series.D[k], series.b[k]};
    for (int c = 0; c < 9; ++c) {
      if (c) csv += ',';
      format_double(csv, cols[c]);
    }
    csv += '\n';
  }
  write_text(fs::path(out_dir) / "series.csv", csv);

  // state snapshots
  const std::size_t m = evo.times.size();
  for (int k = 0; k < cfg.snapshots; ++k) {
    const std::size_t idx =
        cfg.snapshots <= 1 ? m - 1 : (k * (m - 1)) / std::size_t(cfg.snapshots - 1);
    std::string s = "x,f\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      format_double(s, grid.nodes[i]);
      s += ',';
      format_double(s, evo.states[idx].values[i]);
      s += '\n';
    }
    write_text(fs::path(out_dir) / ("state_" + std::to_string(k) + ".csv"), s);
  }

  // summary.json
  nlohmann::json j;
  j["N0"] = result.constants.N0;
  j["E0"] = result.constants.E0;
  j["N(0)"] = series.N.front();
  j["E(0)"] = series.E.front();
  j["Cstar"] = result.constants.Cstar;
  j["Mcal_inf"] = result.constants.Mcal_inf;
  j["pc_limit_ratio"] = result.constants.pc_limit_ratio;
  j["pc_end_ratio"] = result.pc_end_ratio;
  j["t_end"] = result.t_end;
  j["tau_end"] = evo.tau_end;
  j["dt"] = evo.dt;
  j["convention"] = cfg.convention == WeightConvention::SinhX2 ? "sinh_x2" : "sinh_half_x2";
  j["residuals"] = {{"energy_rel_drift", result.energy_rel_drift},
                    {"drift_identity", result.drift_identity},
                    {"log_conservation", result.log_conservation},
                    {"l2_monotone_violations", result.l2_monotone_violations}};
  j["l2_distance"] = {{"initial", result.l2_initial}, {"final", result.l2_final}};
  if (cfg.nonlinear_enabled) {
    const char* cls = result.nonlinear_horizon.classification == HorizonClass::Finite
                          ? "finite"
                          : (result.nonlinear_horizon.classification == HorizonClass::Infinite
                                 ? "infinite"
                                 : "undecided");
    j["nonlinear"] = {{"classification", cls},
                      {"Tstar", result.nonlinear_horizon.Tstar},
                      {"tail_slope", result.nonlinear_horizon.tail_slope},
                      {"tail_ratio", result.nonlinear_horizon.tail_ratio}};
  }
  write_text(fs::path(out_dir) / "summary.json", j.dump(2) + "\n");

  // gnuplot companion
  std::string gp =
      "set datafile separator ','\n"
      "set key autotitle columnhead\n"
      "set terminal pngcairo size 1200,800\n"
      "set output 'observables.png'\n"
      "set multiplot layout 2,2\n"
      "plot 'series.csv' using 1:3 with lines title 'N'\n"
      "plot 'series.csv' using 1:4 with lines title 'E'\n"
      "plot 'series.csv' using 1:7 with lines title 'q_c'\n"
      "plot 'series.csv' using 1:8 with lines title 'D'\n"
      "unset multiplot\n"
      "set output 'states.png'\n"
      "plot ";
  for (int k = 0; k < cfg.snapshots; ++k) {
    if (k) gp += ", ";
    gp += "'state_" + std::to_string(k) + ".csv' using 1:2 with lines";
  }
  gp += "\n";
  write_text(fs::path(out_dir) / "plots.gp", gp);

  return result;
}

namespace {

struct RegionSample {
  std::vector<std::pair<double, double>> pts;
};

std::vector<double> geom_space(double lo, double hi, int n, double phase) {
  std::vector<double> out;
  out.reserve(std::size_t(n));
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double t = (double(i) + phase) / double(n - 1);
    out.push_back(std::exp(la + (lb - la) * std::min(1.0, t)));
  }
  return out;
}

using Shape = double (*)(double, double);
using Part = double (*)(double, double);

double shape_xy(double x, double y) { return x * y; }
double shape_one(double, double) { return 1.0; }
double shape_x_over_y3(double x, double y) { return x / (y * y * y); }
double shape_mid_t1(double x, double y) {
  const double mn = std::min(x, y), z = std::abs(x - y) * (x + y), s = x * x + y * y;
  return (y / x) * (2.0 * mn * mn / (z * s) + std::abs(csch(z) - csch(s)));
}
double shape_left_t1(double x, double y) {
  const double mn = std::min(x, y), mx = std::max(x, y);
  return (y / x) * (csch(0.75 * x * x) + mn * mn / (mx * mx * mx * mx));
}
double shape_small_t2(double x, double y) {
  return x * y * csch(y * y);
}
double shape_mid_t2(double x, double y) {
  return std::abs(csch(std::abs(x - y) * (x + y)) - csch(x * x + y * y));
}
double shape_left_t2_corrected(double x, double y) {
  return std::min(1.0, (y * y * y) / (x * x * x));
}
double shape_left_t2_printed(double x, double y) {
  (void)y;
  return csch(0.75 * x * x);
}
double shape_right_t2(double x, double y) {
  const double d = y * y - x * x;
  const double e = d > 700.0 ? 0.0 : std::exp(-d);
  return e * (e + x * x / (y * y)) * (y * y * y) / (x * x * x);
}

double part_t1(double x, double y) { return std::abs(kernel_T1(x, y)); }
double part_t2(double x, double y) { return std::abs(kernel_T2(x, y)); }

struct RegionSpec {
  std::string name;
  Part part;
  Shape shape;
  bool (*member)(double, double);
  double x_lo, x_hi, y_lo, y_hi;
  bool diagnostic_only = false; // report the fitted constant, never fail
};

bool in_small_square(double x, double y) { return x <= 8.0 && y <= 8.0 && x != y; }
bool in_far_column(double x, double y) { return x < 1.0 && y > std::min(2.0, 1.5 * x); }
bool in_diag_band(double x, double y) {
  return x + y > 1.0 && std::abs(x - y) <= 0.125 && x != y;
}
bool in_mid_band(double x, double y) {
  const double d = std::abs(x - y);
  return x + y > 1.0 && d > 0.125 && d < 0.5 * x;
}
bool in_left_wing(double x, double y) { return x + y > 1.0 && y < 0.5 * x; }
bool in_right_wing(double x, double y) { return x + y > 1.0 && y >= 1.5 * x; }
bool in_small_x_large_y(double x, double y) { return x < 1.0 && y > x + 0.25; }

// Region samples: a log lattice plus a diagonal-adapted family, so thin bands
// around y = x are not missed.
std::vector<std::pair<double, double>> region_sample(const RegionSpec& spec, int n, double phase,
                                                     const std::vector<double>& band_offsets) {
  std::vector<std::pair<double, double>> pts;
  const std::vector<double> xs = geom_space(spec.x_lo, spec.x_hi, n, phase);
  const std::vector<double> ys = geom_space(spec.y_lo, spec.y_hi, n, phase);
  for (double x : xs)
    for (double y : ys)
      if (spec.member(x, y)) pts.emplace_back(x, y);
  for (double x : xs)
    for (double d : band_offsets)
      for (double y : {x - d, x + d})
        if (y > 0.0 && y >= spec.y_lo && y <= spec.y_hi && spec.member(x, y))
          pts.emplace_back(x, y);
  return pts;
}

BoundCheck check_region(const RegionSpec& spec) {
  BoundCheck bc;
  bc.region = spec.name;
  double fit = 0.0;
  for (auto [x, y] : region_sample(spec, 48, 0.0, {0.005, 0.02, 0.05, 0.09, 0.12, 0.3})) {
    const double shape = spec.shape(x, y);
    if (!(shape > 0.0)) continue;
    fit = std::max(fit, spec.part(x, y) / shape);
  }
  bc.fitted_constant = fit;
  const double budget = 1.25 * fit + 1e-300;
  bc.passed = true;
  for (auto [x, y] :
       region_sample(spec, 67, 0.37, {0.003, 0.013, 0.035, 0.07, 0.1, 0.124, 0.2, 0.4})) {
    const double shape = spec.shape(x, y);
    if (!(shape > 0.0)) continue;
    const double ratio = spec.part(x, y) / shape;
    bc.certified_max_ratio = std::max(bc.certified_max_ratio, ratio);
    if (ratio > budget && bc.passed && !spec.diagnostic_only) {
      bc.passed = false;
      char buf[96];
      std::snprintf(buf, sizeof buf, "x=%.6g y=%.6g ratio=%.6g", x, y, ratio);
      bc.worst_point = buf;
    }
  }
  return bc;
}

} // namespace

KernelReport validate_kernels(const ScenarioConfig& cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  KernelReport rep;

  const std::vector<RegionSpec> regions = {
      {"T1 |T1|<=C x y on (0,8)^2", part_t1, shape_xy, in_small_square, 1e-3, 8.0, 1e-3, 8.0},
      {"T1 |T1|<=C x/y^3, x<1, y large", part_t1, shape_x_over_y3, in_far_column, 1e-3, 1.0, 2.0,
       24.0},
      {"T1 bounded on the diagonal band", part_t1, shape_one, in_diag_band, 0.45, 12.0, 0.45,
       12.0},
      {"T1 mid band composite shape", part_t1, shape_mid_t1, in_mid_band, 0.5, 12.0, 0.3, 12.0},
      {"T1 left wing, y < x/2", part_t1, shape_left_t1, in_left_wing, 0.7, 12.0, 1e-3, 6.0},
      {"T2 bounded on (0,8)^2", part_t2, shape_one, in_small_square, 1e-3, 8.0, 1e-3, 8.0},
      {"T2 |T2|<=C x y csch(y^2), x<1, y>x+1/4", part_t2, shape_small_t2, in_small_x_large_y,
       1e-3, 1.0, 0.3, 24.0},
      {"T2 bounded on the diagonal band", part_t2, shape_one, in_diag_band, 0.45, 12.0, 0.45,
       12.0},
      {"T2 mid band, corrected shape min(1, y^3/x^3)", part_t2, shape_left_t2_corrected,
       in_mid_band, 0.5, 12.0, 0.3, 12.0},
      {"T2 mid band, printed csch-gap shape (diagnostic)", part_t2, shape_mid_t2, in_mid_band,
       0.5, 12.0, 0.3, 12.0, true},
      {"T2 left wing, corrected shape min(1, y^3/x^3)", part_t2, shape_left_t2_corrected,
       in_left_wing, 0.7, 12.0, 1e-3, 6.0},
      {"T2 left wing, printed csch(3x^2/4) shape (diagnostic)", part_t2, shape_left_t2_printed,
       in_left_wing, 0.7, 12.0, 1e-3, 6.0, true},
      {"T2 right wing exponential shape, y >= 3x/2", part_t2, shape_right_t2, in_right_wing,
       1e-3, 8.0, 0.6, 24.0},
  };
  for (const auto& spec : regions) {
    rep.bounds.push_back(check_region(spec));
    if (!rep.bounds.back().passed)
      rep.violations.push_back("region bound failed: " + spec.name + " at " +
                               rep.bounds.back().worst_point);
  }
  rep.notes =
      "the printed mid-band and left-wing T2 shapes are not uniform: |T2| -> 2 y^3/x^3 for "
      "y < x, so those fitted constants grow without bound with the sampled x range; the "
      "corrected shape min(1, y^3/x^3) is certified instead, and row/column masses grow ~x/2 "
      "with the sample (the suite reports them rather than asserting a global sup)";

  // detailed balance under the configured convention
  const EquilibriumWeights w =
      EquilibriumWeights::build(geom_space(0.05, 6.0, 24, 0.0), cfg.convention);
  for (std::size_t i = 0; i < w.nodes.size(); ++i)
    for (std::size_t j = 0; j < w.nodes.size(); ++j) {
      if (i == j) continue;
      const double x = w.nodes[i], y = w.nodes[j];
      const double lhs = w.w6[i] * kernel_M(x, y);
      const double rhs = 0.25 * kernel_W(x, y) * std::pow(x * y, 4.0);
      rep.detailed_balance_residual =
          std::max(rep.detailed_balance_residual, std::abs(lhs - rhs) / rhs);
    }
  if (rep.detailed_balance_residual >= 1e-12)
    rep.violations.push_back("detailed-balance residual " +
                             std::to_string(rep.detailed_balance_residual) +
                             " (convention is not the balance weight)");

  // series vs direct branch of T at the switch threshold, relative to the
  // component scale (T itself crosses zero on the threshold manifold)
  for (double x : geom_space(0.5, 8.0, 25, 0.0)) {
    const double thr = 1e-3 * std::max(1.0, x * x);
    for (double u2 : {x * x - thr, x * x + thr}) {
      if (u2 <= 0.0) continue;
      const double y = std::sqrt(u2);
      const double ts = kernel_T(x, y, TBranch::Series);
      const double td = kernel_T(x, y, TBranch::Direct);
      const double scale = (y / x) * (std::abs(h_sinh_defect(x * x + y * y)) +
                                      std::abs(h_sinh_defect(thr))) +
                           std::abs(kernel_T2(x, y));
      rep.branch_agreement = std::max(rep.branch_agreement, std::abs(ts - td) / scale);
    }
  }
  if (rep.branch_agreement >= 1e-10)
    rep.violations.push_back("near-diagonal branch agreement " +
                             std::to_string(rep.branch_agreement));

  // row and column masses over the wide sample; tail stabilization in x_max
  for (double x : {1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0}) {
    const double xm = std::max(2.0 * x + 10.0, cfg.x_max);
    const double row = kernel_row_mass(x, xm, 400000);
    const double row2 = kernel_row_mass(x, 2.0 * xm, 400000);
    rep.max_row_mass = std::max(rep.max_row_mass, row2);
    rep.max_column_mass = std::max(rep.max_column_mass, kernel_column_mass(x, 2.0 * xm, 400000));
    rep.row_mass_tail_stability =
        std::max(rep.row_mass_tail_stability, std::abs(row2 - row) / row2);
  }
  for (double x : geom_space(5e-2, cfg.x_max, 17, 0.0)) {
    rep.M_fit = std::max(rep.M_fit, kernel_row_mass(x, cfg.x_max));
    rep.Mtilde_fit = std::max(rep.Mtilde_fit, kernel_column_mass(x, cfg.x_max));
  }

  nlohmann::json j;
  for (const auto& bc : rep.bounds)
    j["region_bounds"].push_back({{"region", bc.region},
                                  {"fitted_constant", bc.fitted_constant},
                                  {"certified_max_ratio", bc.certified_max_ratio},
                                  {"passed", bc.passed},
                                  {"worst_point", bc.worst_point}});
  j["detailed_balance_residual"] = rep.detailed_balance_residual;
  j["branch_agreement"] = rep.branch_agreement;
  j["max_row_mass"] = rep.max_row_mass;
  j["max_column_mass"] = rep.max_column_mass;
  j["row_mass_tail_stability"] = rep.row_mass_tail_stability;
  j["M_fit"] = rep.M_fit;
  j["Mtilde_fit"] = rep.Mtilde_fit;
  j["violations"] = rep.violations;
  j["notes"] = rep.notes;
  write_text(fs::path(out_dir) / "kernel_report.json", j.dump(2) + "\n");
  return rep;
}

MellinReport mellin_check(const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  MellinReport rep;
  rep.W2_abs = std::abs(symbol_W(Complex(2.0, 0.0)));
  rep.W1_error =
      std::abs(symbol_W(Complex(1.0, 0.0)) - Complex(4.0 * std::log(2.0) - 3.14159265358979323846, 0.0));
  {
    const Complex s(1.25, 0.7);
    const Complex b1 = symbol_B(std::conj(s), 0.375);
    const Complex b2 = std::conj(symbol_B(s, 0.375));
    rep.conjugate_symmetry = std::abs(b1 - b2) / std::abs(b2);
  }
  const double imags[10] = {0.0, 0.3, -0.3, 0.6, -0.6, 0.9, -0.9, 1.2, -1.2, 1.5};
  for (double t : imags) {
    const double res = functional_equation_residual(Complex(1.25, t));
    rep.funceq_residuals.push_back(res);
    rep.max_funceq_residual = std::max(rep.max_funceq_residual, res);
  }
  if (rep.W2_abs >= 1e-14) rep.violations.push_back("|W(2)| = " + std::to_string(rep.W2_abs));
  if (rep.W1_error >= 1e-12)
    rep.violations.push_back("|W(1)-(4 ln 2 - pi)| = " + std::to_string(rep.W1_error));
  if (rep.max_funceq_residual >= 1e-6)
    rep.violations.push_back("functional-equation residual " +
                             std::to_string(rep.max_funceq_residual));

  nlohmann::json j;
  j["W2_abs"] = rep.W2_abs;
  j["W1_error"] = rep.W1_error;
  j["conjugate_symmetry"] = rep.conjugate_symmetry;
  j["funceq_residuals"] = rep.funceq_residuals;
  j["max_funceq_residual"] = rep.max_funceq_residual;
  j["violations"] = rep.violations;
  write_text(fs::path(out_dir) / "mellin_report.json", j.dump(2) + "\n");
  return rep;
}

} // namespace condkin

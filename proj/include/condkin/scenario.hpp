#ifndef CONDKIN_SCENARIO_HPP
#define CONDKIN_SCENARIO_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "condkin/evolution.hpp"
#include "condkin/grid.hpp"
#include "condkin/kernels.hpp"
#include "condkin/nonlinear.hpp"
#include "condkin/observables.hpp"
#include "condkin/timechange.hpp"

namespace condkin {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class InitialKind { Example1, Example2, Constant, Bump, File };

struct ScenarioConfig {
  std::size_t grid_n = 400;
  double x_max = 8.0;
  double grading = 2.0;

  InitialKind initial = InitialKind::Example1;
  double constant_value = 0.5;
  double bump_center = 1.0;
  double bump_width = 0.25;
  double bump_height = 1.0;
  std::string file_path;

  double theta = 0.5;
  double tau_end = 10.0;
  double dt = 0.01;
  std::size_t store_every = 1;
  double qc0 = 1.0;
  WeightConvention convention = WeightConvention::SinhX2;
  StepMethod method = StepMethod::CrankNicolson;

  bool nonlinear_enabled = false;
  NonlinearDriveConfig nonlinear;

  std::string outputs = "out";
  int snapshots = 5;

  void validate() const; // throws ConfigError naming the offending field
};

// Flat key = value file (TOML-compatible subset: '#' comments, dotted keys,
// optional quotes); later `--override key=value` entries win.
ScenarioConfig parse_config(const std::string& path);
void apply_override(ScenarioConfig& cfg, const std::string& key_equals_value);

// Initial datum sampled on the grid under the configured convention.
StateField initial_state(const ScenarioConfig& cfg, const RadialGrid& grid);

struct ScenarioResult {
  AsymptoticConstants constants;
  double N_initial = 0.0;
  double E_initial = 0.0;
  double energy_rel_drift = 0.0;    // max |E(tau)-E(0)|/|E(0)|
  double drift_identity = 0.0;      // max |Mcal - (N - N(0))|
  double log_conservation = 0.0;    // max |ln(pc/qc0) + N - N(0)|
  int l2_monotone_violations = 0;   // samples where int |f-C*|^2 dmu increased
  double l2_initial = 0.0;          // int |f0 - C*|^2 dmu
  double l2_final = 0.0;            // same at tau_end
  double pc_end_ratio = 1.0;        // pc(t_end)/pc(0)
  double t_end = 0.0;
  HorizonResult nonlinear_horizon;  // when enabled
  bool nonlinear_enabled = false;
};

// Full pipeline: assemble -> evolve -> observe -> time change (-> nonlinear),
// writing series.csv, state_<k>.csv, summary.json and plots.gp into out_dir.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

struct BoundCheck {
  std::string region;
  double fitted_constant = 0.0;
  double certified_max_ratio = 0.0; // max |T_i|/shape on the test sample
  bool passed = false;
  std::string worst_point; // populated on failure
};

struct KernelReport {
  std::vector<BoundCheck> bounds;
  double detailed_balance_residual = 0.0;
  double branch_agreement = 0.0;
  double max_row_mass = 0.0;
  double max_column_mass = 0.0;
  double row_mass_tail_stability = 0.0; // max rel change when x_max doubles
  double M_fit = 0.0;                   // sup row mass on the grid range
  double Mtilde_fit = 0.0;              // sup column mass on the grid range
  std::vector<std::string> violations;  // empty means pass
  std::string notes;
};

KernelReport validate_kernels(const ScenarioConfig& cfg, const std::string& out_dir);

struct MellinReport {
  double W2_abs = 0.0;                  // |W(2)|
  double W1_error = 0.0;                // |W(1) - (4 ln 2 - pi)|
  double conjugate_symmetry = 0.0;      // |B(conj s) - conj B(s)|
  double max_funceq_residual = 0.0;
  std::vector<double> funceq_residuals; // 10 admissible points
  std::vector<std::string> violations;
};

MellinReport mellin_check(const std::string& out_dir);

} // namespace condkin

#endif

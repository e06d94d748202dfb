#include <cstdio>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "condkin/errors.hpp"
#include "condkin/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInvariant = 4;

void usage() {
  std::fprintf(stderr,
               "usage: condkin <run|validate-kernels|mellin-check> [--config <path>]\n"
               "               [--out <dir>] [--override key=value]...\n");
}

struct Args {
  std::string verb;
  std::string config;
  std::string out = "out";
  std::vector<std::string> overrides;
};

bool parse_args(int argc, char** argv, Args& args) {
  if (argc < 2) return false;
  args.verb = argv[1];
  for (int i = 2; i < argc; ++i) {
    const std::string a = argv[i];
    auto want_value = [&](const char* flag) -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "condkin: %s needs a value\n", flag);
        return nullptr;
      }
      return argv[++i];
    };
    if (a == "--config") {
      const char* v = want_value("--config");
      if (!v) return false;
      args.config = v;
    } else if (a == "--out") {
      const char* v = want_value("--out");
      if (!v) return false;
      args.out = v;
    } else if (a == "--override") {
      const char* v = want_value("--override");
      if (!v) return false;
      args.overrides.emplace_back(v);
    } else {
      std::fprintf(stderr, "condkin: unknown flag %s\n", a.c_str());
      return false;
    }
  }
  return true;
}

} // namespace

int main(int argc, char** argv) {
  Args args;
  if (!parse_args(argc, argv, args)) {
    usage();
    return kExitUsage;
  }

  condkin::ScenarioConfig cfg;
  try {
    if (!args.config.empty()) cfg = condkin::parse_config(args.config);
    for (const auto& kv : args.overrides) condkin::apply_override(cfg, kv);
    cfg.validate();
  } catch (const condkin::ConfigError& e) {
    std::fprintf(stderr, "condkin: config error: %s\n", e.what());
    return kExitUsage;
  }

  try {
    if (args.verb == "run") {
      const condkin::ScenarioResult r = condkin::run_scenario(cfg, args.out);
      std::printf("run: Cstar=%.8g Mcal_inf=%.8g pc_limit_ratio=%.8g t_end=%.8g\n",
                  r.constants.Cstar, r.constants.Mcal_inf, r.constants.pc_limit_ratio, r.t_end);
      std::printf("run: energy_rel_drift=%.3e drift_identity=%.3e log_conservation=%.3e\n",
                  r.energy_rel_drift, r.drift_identity, r.log_conservation);
      if (r.nonlinear_enabled)
        std::printf("run: nonlinear horizon %s, Tstar=%.8g\n",
                    r.nonlinear_horizon.classification == condkin::HorizonClass::Finite
                        ? "finite"
                        : (r.nonlinear_horizon.classification == condkin::HorizonClass::Infinite
                               ? "infinite"
                               : "undecided"),
                    r.nonlinear_horizon.Tstar);
      return kExitOk;
    }
    if (args.verb == "validate-kernels") {
      const condkin::KernelReport rep = condkin::validate_kernels(cfg, args.out);
      for (const auto& v : rep.violations)
        std::fprintf(stderr, "validate-kernels: %s\n", v.c_str());
      std::printf("validate-kernels: %zu region bounds, M_fit=%.6g Mtilde_fit=%.6g "
                  "balance=%.3e branch=%.3e\n",
                  rep.bounds.size(), rep.M_fit, rep.Mtilde_fit, rep.detailed_balance_residual,
                  rep.branch_agreement);
      return rep.violations.empty() ? kExitOk : kExitInvariant;
    }
    if (args.verb == "mellin-check") {
      const condkin::MellinReport rep = condkin::mellin_check(args.out);
      for (const auto& v : rep.violations) std::fprintf(stderr, "mellin-check: %s\n", v.c_str());
      std::printf("mellin-check: |W(2)|=%.3e W1_err=%.3e max_funceq_residual=%.3e\n", rep.W2_abs,
                  rep.W1_error, rep.max_funceq_residual);
      return rep.violations.empty() ? kExitOk : kExitInvariant;
    }
    usage();
    return kExitUsage;
  } catch (const condkin::ConfigError& e) {
    std::fprintf(stderr, "condkin: config error: %s\n", e.what());
    return kExitUsage;
  } catch (const condkin::ContractError& e) {
    std::fprintf(stderr, "condkin: config error: %s\n", e.what());
    return kExitUsage;
  } catch (const condkin::ConsistencyError& e) {
    std::fprintf(stderr, "condkin: invariant violation: %s\n", e.what());
    return kExitInvariant;
  } catch (const condkin::NumericalFailure& e) {
    std::fprintf(stderr, "condkin: numerical failure: %s (partial=%.8g, tol=%.3e)\n", e.what(),
                 e.partial_estimate, e.achieved_tolerance);
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "condkin: numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
}

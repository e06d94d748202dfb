#include "condkin/nonlinear.hpp"

#include <algorithm>
#include <cmath>

#include "condkin/errors.hpp"

namespace condkin {

double equilibrium_cubic_moment(WeightConvention conv) {
  auto f = [conv](double x) {
    if (x <= 0.0) return 0.0;
    return x * x * x * occupancy(x, conv);
  };
  auto r = integrate_adaptive(f, {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 30.0}, 1e-14, 1e-12);
  if (!r.converged)
    throw NumericalFailure("equilibrium_cubic_moment did not converge", r.value,
                           r.error_estimate);
  return r.value;
}

double nonlinear_drift(const StateField& f, double b, const NonlinearDriveConfig& cfg,
                       const EquilibriumWeights& weights, const RadialGrid& grid) {
  if (!std::isfinite(b)) throw ContractError("nonlinear_drift: b must be finite");
  if (f.values.size() != grid.size() || weights.nodes != grid.nodes)
    throw ContractError("nonlinear_drift: shape mismatch");
  double moment = equilibrium_cubic_moment(weights.convention);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // n0(1+n0) x^5 = w4 * x
    moment += weights.w4[i] * grid.nodes[i] * f.values[i] * grid.weights[i];
  }
  const double one_b = 1.0 + b;
  return -cfg.C1 * one_b * one_b + cfg.C2 * moment;
}

NonlinearSeries nonlinear_series(const EvolutionRun& run, const NonlinearDriveConfig& cfg,
                                 const EquilibriumWeights& weights, const RadialGrid& grid) {
  if (run.times.empty()) throw ContractError("nonlinear_series: empty run");
  NonlinearSeries s;
  s.tau = run.times;
  const std::size_t m = run.times.size();
  s.mtilde.resize(m);
  s.Mcal.resize(m);
  s.qc.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double b = boundary_limit(run.states[k], grid).value;
    s.mtilde[k] = nonlinear_drift(run.states[k], b, cfg, weights, grid);
  }
  s.Mcal[0] = 0.0;
  for (std::size_t k = 1; k < m; ++k)
    s.Mcal[k] = s.Mcal[k - 1] + 0.5 * (s.mtilde[k] + s.mtilde[k - 1]) * (s.tau[k] - s.tau[k - 1]);
  for (std::size_t k = 0; k < m; ++k) s.qc[k] = cfg.qc0 * std::exp(-s.Mcal[k]);
  return s;
}

HorizonResult classify_horizon(const std::vector<double>& tau, const std::vector<double>& qc) {
  const std::size_t m = tau.size();
  if (m != qc.size() || m < 16) throw ContractError("classify_horizon: need >= 16 samples");
  for (double q : qc)
    if (!(q > 0.0) || !std::isfinite(q)) throw ContractError("classify_horizon: qc must be positive");

  std::vector<double> g(m);
  for (std::size_t k = 0; k < m; ++k) g[k] = 1.0 / qc[k];

  double t_acc = 0.0;
  for (std::size_t k = 1; k < m; ++k) t_acc += 0.5 * (g[k] + g[k - 1]) * (tau[k] - tau[k - 1]);

  // slope of log g over the last quartile (least squares)
  const std::size_t k0 = (3 * m) / 4;
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const double nq = double(m - k0);
  for (std::size_t k = k0; k < m; ++k) {
    const double y = std::log(g[k]);
    st += tau[k];
    sy += y;
    stt += tau[k] * tau[k];
    sty += tau[k] * y;
  }
  const double denom = nq * stt - st * st;
  const double slope = denom > 0.0 ? (nq * sty - st * sy) / denom : 0.0;

  // dyadic tail integrals over the last quartile
  double window[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t span = m - k0;
  for (std::size_t k = k0 + 1; k < m; ++k) {
    const std::size_t j = std::min<std::size_t>(3, (4 * (k - 1 - k0)) / span);
    window[j] += 0.5 * (g[k] + g[k - 1]) * (tau[k] - tau[k - 1]);
  }

  HorizonResult hr;
  hr.Tstar = t_acc;
  hr.tail_slope = slope;
  hr.tail_ratio = window[2] > 0.0 ? window[3] / window[2] : 1.0;
  const double r01 = window[0] > 0.0 ? window[1] / window[0] : 1.0;
  const double r12 = window[1] > 0.0 ? window[2] / window[1] : 1.0;

  const double thr = 1e-3;
  if (hr.tail_ratio < 1.0 - thr && r12 < 1.0 && r01 < 1.0 && slope < 0.0) {
    hr.classification = HorizonClass::Finite;
    hr.Tstar = t_acc + g.back() / (-slope); // exponential-tail completion
    hr.diagnostics = "tail integrand decays geometrically";
  } else if (hr.tail_ratio >= 1.0 - thr &&
             *std::min_element(g.begin() + long(k0), g.end()) > 0.0 && slope >= -thr) {
    hr.classification = HorizonClass::Infinite;
    hr.diagnostics = "tail integrand bounded below";
  } else {
    hr.classification = HorizonClass::Undecided;
    hr.diagnostics = "tail behavior inconclusive: ratios " + std::to_string(r01) + ", " +
                     std::to_string(r12) + ", " + std::to_string(hr.tail_ratio);
  }
  return hr;
}

HorizonResult horizon(const EvolutionRun& run, const NonlinearDriveConfig& cfg,
                      const EquilibriumWeights& weights, const RadialGrid& grid) {
  const NonlinearSeries s = nonlinear_series(run, cfg, weights, grid);
  return classify_horizon(s.tau, s.qc);
}

} // namespace condkin

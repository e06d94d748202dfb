#include "condkin/timechange.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "condkin/errors.hpp"

namespace condkin {

TimeMap build_map(const ObservableSeries& series) {
  const std::size_t m = series.tau.size();
  if (m < 2) throw ContractError("build_map: need at least two samples");
  for (double q : series.qc)
    if (!(q > 0.0) || !std::isfinite(q)) throw ContractError("build_map: qc must be positive");
  TimeMap map;
  map.tau = series.tau;
  map.qc = series.qc;
  map.t.resize(m);
  map.t[0] = 0.0;
  for (std::size_t k = 1; k < m; ++k) {
    const double dtau = series.tau[k] - series.tau[k - 1];
    if (!(dtau > 0.0)) throw ContractError("build_map: tau not strictly increasing");
    map.t[k] = map.t[k - 1] + 0.5 * (1.0 / series.qc[k] + 1.0 / series.qc[k - 1]) * dtau;
  }
  return map;
}

namespace {

std::size_t bracket_index(const std::vector<double>& xs, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t hi = std::size_t(it - xs.begin());
  if (hi == 0) hi = 1;
  if (hi == xs.size()) hi = xs.size() - 1;
  return hi;
}

} // namespace

double tau_of_t(const TimeMap& map, double t_query) {
  if (!(t_query >= 0.0) || t_query > map.t_end())
    throw RangeError("tau_of_t: t out of range, horizon t_end = " + std::to_string(map.t_end()));
  const std::size_t hi = bracket_index(map.t, t_query);
  const double t0 = map.t[hi - 1], t1 = map.t[hi];
  const double w = (t_query - t0) / (t1 - t0);
  return map.tau[hi - 1] + w * (map.tau[hi] - map.tau[hi - 1]);
}

PhysicalState physical_solution(const EvolutionRun& run, const TimeMap& map, double t_query) {
  if (run.times != map.tau)
    throw ContractError("physical_solution: run and map sampled at different tau");
  PhysicalState ps;
  ps.t = t_query;
  ps.tau = tau_of_t(map, t_query);

  const std::size_t hi = bracket_index(map.tau, ps.tau);
  const double tau0 = map.tau[hi - 1], tau1 = map.tau[hi];
  const double w = (ps.tau - tau0) / (tau1 - tau0);

  const StateField& a = run.states[hi - 1];
  const StateField& b = run.states[hi];
  ps.u.theta = a.theta;
  ps.u.values.resize(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i)
    ps.u.values[i] = (1.0 - w) * a.values[i] + w * b.values[i];
  ps.pc = (1.0 - w) * map.qc[hi - 1] + w * map.qc[hi];
  return ps;
}

} // namespace condkin

#include "condkin/observables.hpp"

#include <cmath>

#include "condkin/errors.hpp"

namespace condkin {

MassEnergy mass_energy(const StateField& f, const EquilibriumWeights& weights,
                       const RadialGrid& grid) {
  const std::size_t n = grid.size();
  if (f.values.size() != n || weights.nodes != grid.nodes)
    throw ContractError("mass_energy: shape mismatch");
  MassEnergy me;
  for (std::size_t i = 0; i < n; ++i) {
    const double fw = f.values[i] * grid.weights[i];
    me.N += weights.w4[i] * fw;
    me.E += weights.w6[i] * fw;
  }
  return me;
}

AsymptoticConstants asymptotic_constants(const StateField& f0, const EquilibriumWeights& weights,
                                         const RadialGrid& grid) {
  AsymptoticConstants ac;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ac.N0 += weights.w4[i] * grid.weights[i];
    ac.E0 += weights.w6[i] * grid.weights[i];
  }
  if (!(ac.E0 > 0.0)) throw ContractError("asymptotic_constants: E0 must be positive");
  const MassEnergy me = mass_energy(f0, weights, grid);
  ac.Cstar = me.E / ac.E0;
  ac.Mcal_inf = ac.Cstar * ac.N0 - me.N;
  ac.pc_limit_ratio = std::exp(-ac.Mcal_inf);
  return ac;
}

double dissipation(const StateField& f, const GeneratorMatrix& gen) {
  if (f.values.size() != gen.size()) throw ContractError("dissipation: shape mismatch");
  return -2.0 * gen.quadratic_form(f.values);
}

ObservableSeries drift_series(const EvolutionRun& run, const GeneratorMatrix& gen,
                              const EquilibriumWeights& weights, double qc0,
                              double cross_check_tol) {
  if (run.times.empty()) throw ContractError("drift_series: empty run");
  const RadialGrid& grid = gen.grid();
  if (weights.nodes != grid.nodes) throw ContractError("drift_series: weights/grid mismatch");
  const std::size_t n = grid.size(), m = run.times.size();

  ObservableSeries s;
  s.tau = run.times;
  s.qc0 = qc0;
  s.N.resize(m);
  s.E.resize(m);
  s.m.resize(m);
  s.Mcal.resize(m);
  s.qc.resize(m);
  s.D.resize(m);
  s.b.resize(m);

  for (std::size_t k = 0; k < m; ++k) {
    const StateField& f = run.states[k];
    const MassEnergy me = mass_energy(f, weights, grid);
    s.N[k] = me.N;
    s.E[k] = me.E;
    const std::vector<double> af = gen.apply(f.values);
    double drift = 0.0;
    for (std::size_t i = 0; i < n; ++i) drift += weights.w4[i] * af[i] * grid.weights[i];
    s.m[k] = drift;
    s.D[k] = dissipation(f, gen);
    s.b[k] = boundary_limit(f, grid).value;
  }

  s.Mcal[0] = 0.0;
  for (std::size_t k = 1; k < m; ++k)
    s.Mcal[k] = s.Mcal[k - 1] + 0.5 * (s.m[k] + s.m[k - 1]) * (s.tau[k] - s.tau[k - 1]);
  for (std::size_t k = 0; k < m; ++k) s.qc[k] = qc0 * std::exp(-s.Mcal[k]);

  // Mcal(tau) must track N(tau) - N(0); a violation flags a discretization too
  // coarse for the stored sampling.
  const double tol = cross_check_tol * std::max(1.0, std::abs(s.N[0]));
  for (std::size_t k = 0; k < m; ++k)
    if (std::abs(s.Mcal[k] - (s.N[k] - s.N[0])) > tol)
      throw ConsistencyError("drift_series: Mcal vs N(tau)-N(0) cross-check failed");

  const AsymptoticConstants ac = asymptotic_constants(run.states.front(), weights, grid);
  s.Cstar = ac.Cstar;
  s.Mcal_inf = ac.Mcal_inf;
  return s;
}

} // namespace condkin

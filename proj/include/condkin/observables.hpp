#ifndef CONDKIN_OBSERVABLES_HPP
#define CONDKIN_OBSERVABLES_HPP

#include <vector>

#include "condkin/evolution.hpp"
#include "condkin/generator.hpp"
#include "condkin/grid.hpp"
#include "condkin/kernels.hpp"

namespace condkin {

struct MassEnergy {
  double N = 0.0;
  double E = 0.0;
};

// N = sum w4_i f_i w_i, E = sum w6_i f_i w_i on the grid.
MassEnergy mass_energy(const StateField& f, const EquilibriumWeights& weights,
                       const RadialGrid& grid);

struct AsymptoticConstants {
  double Cstar = 0.0;          // E(0)/E0
  double Mcal_inf = 0.0;       // Cstar*N0 - N(0)
  double pc_limit_ratio = 1.0; // exp(-Mcal_inf)
  double N0 = 0.0;
  double E0 = 0.0;
};

AsymptoticConstants asymptotic_constants(const StateField& f0, const EquilibriumWeights& weights,
                                         const RadialGrid& grid);

// D(f) = 2 sum_{i<j} S_ij (f_i - f_j)^2 = -2 f^T diag(mu) A f.  Nonnegative.
double dissipation(const StateField& f, const GeneratorMatrix& gen);

struct ObservableSeries {
  std::vector<double> tau;
  std::vector<double> N;
  std::vector<double> E;
  std::vector<double> m;    // drift integrand sum w4 (A f) w
  std::vector<double> Mcal; // cumulative trapezoid of m
  std::vector<double> qc;   // qc0 exp(-Mcal)
  std::vector<double> D;
  std::vector<double> b; // boundary limit per sample
  double Cstar = 0.0;
  double Mcal_inf = 0.0;
  double qc0 = 1.0;
};

// Post-processes a run.  Enforces the cross-check
// |Mcal(tau) - (N(tau) - N(0))| <= tol * max(1, |N(0)|) (ConsistencyError on
// violation; the identity is exact for Crank-Nicolson trajectories).
ObservableSeries drift_series(const EvolutionRun& run, const GeneratorMatrix& gen,
                              const EquilibriumWeights& weights, double qc0 = 1.0,
                              double cross_check_tol = 1e-4);

} // namespace condkin

#endif

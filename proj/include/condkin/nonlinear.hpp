#ifndef CONDKIN_NONLINEAR_HPP
#define CONDKIN_NONLINEAR_HPP

#include <string>
#include <vector>

#include "condkin/evolution.hpp"
#include "condkin/grid.hpp"
#include "condkin/kernels.hpp"

namespace condkin {

struct NonlinearDriveConfig {
  double C1 = 9.8696044010893586188; // pi^2/3
  double C2 = 1.0;
  double qc0 = 1.0;
};

// mtilde = -C1 (1+b)^2 + C2 (int n0 x^3 dx + sum n0(1+n0) x^5 f w), with b the
// boundary limit of f.
double nonlinear_drift(const StateField& f, double b, const NonlinearDriveConfig& cfg,
                       const EquilibriumWeights& weights, const RadialGrid& grid);

// int_0^inf n0 x^3 dx under the given convention, by adaptive quadrature.
double equilibrium_cubic_moment(WeightConvention conv);

enum class HorizonClass { Finite, Infinite, Undecided };

struct HorizonResult {
  HorizonClass classification = HorizonClass::Undecided;
  double Tstar = 0.0;       // finite estimate, or the accumulated horizon so far
  double tail_slope = 0.0;  // fitted d(Mcal~)/dtau on the last quartile
  double tail_ratio = 0.0;  // last dyadic tail-integral ratio
  std::string diagnostics;
};

// Classifies T* = int_0^inf dsigma/qc~ from samples of qc~ on [0, tau_end]:
// FINITE when the tail integrand 1/qc~ decays geometrically (ratio test over
// dyadic windows of the last quartile), INFINITE when it is bounded below,
// UNDECIDED otherwise.  The FINITE estimate completes the tail analytically
// from the fitted slope.
HorizonResult classify_horizon(const std::vector<double>& tau, const std::vector<double>& qc);

struct NonlinearSeries {
  std::vector<double> tau;
  std::vector<double> mtilde;
  std::vector<double> Mcal;
  std::vector<double> qc;
};

// mtilde along a run (b from the boundary extrapolation at each sample),
// cumulative Mcal~ and qc~ = qc0 exp(-Mcal~).
NonlinearSeries nonlinear_series(const EvolutionRun& run, const NonlinearDriveConfig& cfg,
                                 const EquilibriumWeights& weights, const RadialGrid& grid);

HorizonResult horizon(const EvolutionRun& run, const NonlinearDriveConfig& cfg,
                      const EquilibriumWeights& weights, const RadialGrid& grid);

} // namespace condkin

#endif

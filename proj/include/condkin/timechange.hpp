#ifndef CONDKIN_TIMECHANGE_HPP
#define CONDKIN_TIMECHANGE_HPP

#include <vector>

#include "condkin/evolution.hpp"
#include "condkin/observables.hpp"

namespace condkin {

// Strictly monotone correspondence between rescaled time tau and physical
// time t, with the condensate factor sampled along it.
struct TimeMap {
  std::vector<double> tau;
  std::vector<double> t;
  std::vector<double> qc;

  double t_end() const { return t.empty() ? 0.0 : t.back(); }
};

// t(tau) = int_0^tau dsigma/qc(sigma), cumulative trapezoid.
TimeMap build_map(const ObservableSeries& series);

// Inverse map by monotone piecewise-linear interpolation.  Throws RangeError
// past the available horizon.
double tau_of_t(const TimeMap& map, double t_query);

struct PhysicalState {
  StateField u;
  double pc = 1.0;
  double t = 0.0;
  double tau = 0.0;
};

// (u(t), p_c(t)) by linear interpolation of the stored states and qc samples.
PhysicalState physical_solution(const EvolutionRun& run, const TimeMap& map, double t_query);

} // namespace condkin

#endif

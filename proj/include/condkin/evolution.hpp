#ifndef CONDKIN_EVOLUTION_HPP
#define CONDKIN_EVOLUTION_HPP

#include <optional>
#include <vector>

#include "condkin/generator.hpp"
#include "condkin/grid.hpp"
#include "condkin/numerics.hpp"

namespace condkin {

enum class StepMethod { CrankNicolson, Rk4, BackwardEuler };

// One-step integrators for df/dtau = A f.  Crank-Nicolson solves
// (I - dt/2 A) g = f and advances f <- f + dt A g, which keeps the conserved
// w6-moment to pair-cancellation accuracy; backward Euler trades second-order
// accuracy for an M-matrix update that preserves order and bounds exactly.
class Stepper {
public:
  Stepper(const GeneratorMatrix& gen, double dt, StepMethod method);

  void advance(StateField& f) const;
  double dt() const { return dt_; }
  StepMethod method() const { return method_; }

private:
  const GeneratorMatrix* gen_;
  double dt_;
  StepMethod method_;
  DenseLU lu_; // implicit methods only
};

StateField step(const StateField& f, const GeneratorMatrix& gen, double dt, StepMethod method);

struct RunSchedule {
  double dt = 0.01;
  double tau_end = 1.0;
  std::size_t store_every = 1; // keep every k-th step (plus the endpoints)
  StepMethod method = StepMethod::CrankNicolson;
  // At startup dt is halved until one trial step keeps the relative drift of
  // the conserved moment below this; exact conservation passes immediately.
  double energy_drift_tol = 1e-12;
};

struct EvolutionRun {
  std::vector<double> times; // tau samples, increasing from 0
  std::vector<StateField> states;
  StepMethod method = StepMethod::CrankNicolson;
  double dt = 0.0;
  double tau_end = 0.0;
};

EvolutionRun run(const StateField& f0, const GeneratorMatrix& gen, const RunSchedule& schedule);

struct BoundaryLimit {
  double value = 0.0;
  double error_indicator = 0.0;
  bool low_confidence = false;
};

// Extrapolates f to x -> 0 from the smallest nodes, polynomial in x^{1-delta}.
// Requires at least 4 nodes below x = 0.1.
BoundaryLimit boundary_limit(const StateField& f, const RadialGrid& grid, double delta = 0.05);

} // namespace condkin

#endif

#include "condkin/evolution.hpp"

#include <cmath>

#include "condkin/errors.hpp"

namespace condkin {

namespace {

std::vector<double> shifted_identity(const GeneratorMatrix& gen, double scale) {
  // I - scale * A
  std::vector<double> m = gen.dense();
  const std::size_t n = gen.size();
  for (auto& v : m) v *= -scale;
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] += 1.0;
  return m;
}

} // namespace

Stepper::Stepper(const GeneratorMatrix& gen, double dt, StepMethod method)
    : gen_(&gen), dt_(dt), method_(method) {
  if (!(dt > 0.0)) throw ContractError("Stepper: dt must be positive");
  switch (method) {
    case StepMethod::CrankNicolson:
      lu_ = DenseLU(shifted_identity(gen, 0.5 * dt), gen.size());
      break;
    case StepMethod::BackwardEuler:
      lu_ = DenseLU(shifted_identity(gen, dt), gen.size());
      break;
    case StepMethod::Rk4: {
      const double bound = gen.diagonal_bound();
      if (dt * bound > 2.7)
        throw StepSizeError("Rk4 step size above the stability bound 2.7/rho(A)");
      break;
    }
  }
}

void Stepper::advance(StateField& f) const {
  const std::size_t n = gen_->size();
  if (f.values.size() != n) throw ContractError("Stepper::advance: shape mismatch");
  switch (method_) {
    case StepMethod::CrankNicolson: {
      std::vector<double> g = lu_.solve(f.values);
      const std::vector<double> ag = gen_->apply(g);
      for (std::size_t i = 0; i < n; ++i) f.values[i] += dt_ * ag[i];
      break;
    }
    case StepMethod::BackwardEuler:
      lu_.solve_in_place(f.values);
      break;
    case StepMethod::Rk4: {
      const std::vector<double> k1 = gen_->apply(f.values);
      std::vector<double> tmp(n);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = f.values[i] + 0.5 * dt_ * k1[i];
      const std::vector<double> k2 = gen_->apply(tmp);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = f.values[i] + 0.5 * dt_ * k2[i];
      const std::vector<double> k3 = gen_->apply(tmp);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = f.values[i] + dt_ * k3[i];
      const std::vector<double> k4 = gen_->apply(tmp);
      double before = 0.0, after = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        before = std::max(before, std::abs(f.values[i]));
        f.values[i] += dt_ / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        after = std::max(after, std::abs(f.values[i]));
      }
      if (after > 10.0 * before + 1.0)
        throw StepSizeError("Rk4 norm growth indicates instability");
      break;
    }
  }
  if (!f.finite()) throw NumericalFailure("step produced non-finite state", 0.0, 0.0);
}

StateField step(const StateField& f, const GeneratorMatrix& gen, double dt, StepMethod method) {
  Stepper s(gen, dt, method);
  StateField out = f;
  s.advance(out);
  return out;
}

EvolutionRun run(const StateField& f0, const GeneratorMatrix& gen, const RunSchedule& schedule) {
  if (!(schedule.tau_end > 0.0) || !(schedule.dt > 0.0)) throw ContractError("run: bad schedule");
  if (!f0.finite() || !std::isfinite(f0.norm_theta(gen.grid())))
    throw ContractError("run: initial state must have finite theta-norm");

  double dt = schedule.dt;
  const double e0 = gen.weighted_sum(f0.values);
  const double scale = std::max(1.0, std::abs(e0));
  for (int halvings = 0; halvings < 8; ++halvings) {
    StateField trial = f0;
    Stepper(gen, dt, schedule.method).advance(trial);
    if (std::abs(gen.weighted_sum(trial.values) - e0) <= schedule.energy_drift_tol * scale) break;
    dt *= 0.5;
  }

  const std::size_t steps = std::size_t(std::ceil(schedule.tau_end / dt - 1e-12));
  Stepper stepper(gen, dt, schedule.method);

  EvolutionRun out;
  out.method = schedule.method;
  out.dt = dt;
  out.tau_end = double(steps) * dt;
  out.times.reserve(steps / schedule.store_every + 2);
  out.states.reserve(steps / schedule.store_every + 2);
  StateField f = f0;
  out.times.push_back(0.0);
  out.states.push_back(f);
  for (std::size_t k = 1; k <= steps; ++k) {
    stepper.advance(f);
    if (k % schedule.store_every == 0 || k == steps) {
      out.times.push_back(double(k) * dt);
      out.states.push_back(f);
    }
  }
  return out;
}

BoundaryLimit boundary_limit(const StateField& f, const RadialGrid& grid, double delta) {
  if (f.values.size() != grid.size()) throw ContractError("boundary_limit: shape mismatch");
  std::size_t below = 0;
  while (below < grid.size() && grid.nodes[below] < 0.1) ++below;
  if (below < 4) throw ContractError("boundary_limit: need at least 4 nodes below x = 0.1");

  // Lagrange extrapolation to xi = 0 in xi = x^{1-delta}, using the m smallest nodes.
  auto extrapolate = [&](std::size_t m) {
    double b = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double li = 1.0;
      const double xii = std::pow(grid.nodes[i], 1.0 - delta);
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const double xij = std::pow(grid.nodes[j], 1.0 - delta);
        li *= -xij / (xii - xij);
      }
      b += f.values[i] * li;
    }
    return b;
  };

  const double e2 = extrapolate(2), e3 = extrapolate(3), e4 = extrapolate(4);
  BoundaryLimit out;
  out.value = e3;
  out.error_indicator = std::abs(e3 - e2);
  out.low_confidence = std::abs(e4 - e3) > std::abs(e3 - e2);
  return out;
}

} // namespace condkin

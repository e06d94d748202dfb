#include <doctest.h>

#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/evolution.hpp"
#include "oracle_helpers.hpp"

using namespace condkin;

namespace {

struct Setup {
  RadialGrid grid;
  GeneratorMatrix gen;
};

Setup make_setup(std::size_t n = 128, double xmax = 8.0) {
  Setup s{RadialGrid::graded(n, xmax, 2.0), {}};
  s.gen = assemble_generator(s.grid, EquilibriumWeights::build(s.grid.nodes, WeightConvention::SinhX2));
  return s;
}

StateField bump_state(const RadialGrid& grid, double c = 1.0, double w = 0.25) {
  StateField f;
  f.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = (grid.nodes[i] - c) / w;
    f.values[i] = std::exp(-0.5 * d * d);
  }
  return f;
}

} // namespace

TEST_CASE("steps preserve constants") {
  const Setup s = make_setup(64);
  StateField c;
  c.values.assign(64, 0.7);
  for (auto method : {StepMethod::CrankNicolson, StepMethod::BackwardEuler}) {
    const StateField out = step(c, s.gen, 0.05, method);
    for (double v : out.values) CHECK(v == doctest::Approx(0.7).epsilon(1e-12));
  }
  // Rk4 uses the difference form directly, so constants are exact
  const double dt_stable = 2.0 / s.gen.diagonal_bound();
  const StateField out = step(c, s.gen, dt_stable, StepMethod::Rk4);
  for (double v : out.values) CHECK(v == 0.7);
}

TEST_CASE("Crank-Nicolson conserves the w6-moment") {
  const Setup s = make_setup(128);
  StateField f = bump_state(s.grid);
  const double e0 = s.gen.weighted_sum(f.values);
  Stepper st(s.gen, 0.02, StepMethod::CrankNicolson);
  for (int k = 0; k < 200; ++k) st.advance(f);
  CHECK(std::abs(s.gen.weighted_sum(f.values) - e0) <= 1e-13 * std::abs(e0));
}

TEST_CASE("CN and RK4 agree to O(dt^2)") {
  const Setup s = make_setup(48, 4.0);
  const double dt = std::min(1e-3, 2.0 / s.gen.diagonal_bound());
  StateField a = bump_state(s.grid), b = bump_state(s.grid);
  Stepper cn(s.gen, dt, StepMethod::CrankNicolson), rk(s.gen, dt, StepMethod::Rk4);
  for (int k = 0; k < 10; ++k) {
    cn.advance(a);
    rk.advance(b);
  }
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
    scale = std::max(scale, std::abs(a.values[i]));
  }
  CHECK(diff <= 100.0 * dt * dt * scale);
}

TEST_CASE("RK4 refuses steps above the stability bound") {
  const Setup s = make_setup(64);
  CHECK_THROWS_AS(Stepper(s.gen, 10.0 / s.gen.diagonal_bound(), StepMethod::Rk4), StepSizeError);
}

TEST_CASE("run keeps constants constant") {
  const Setup s = make_setup(64);
  StateField c;
  c.values.assign(64, 2.0);
  RunSchedule sched;
  sched.dt = 0.05;
  sched.tau_end = 1.0;
  const EvolutionRun r = run(c, s.gen, sched);
  for (const auto& st : r.states)
    for (double v : st.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("maximum principle and comparison") {
  const Setup s = make_setup(96);
  oracle::Rng rng(5);

  for (auto method : {StepMethod::BackwardEuler, StepMethod::CrankNicolson}) {
    StateField f;
    f.values.resize(96);
    for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
    double cap = -2.0;
    for (double v : f.values) cap = std::max(cap, v);

    StateField g = f;
    for (auto& v : g.values) v += rng.uniform(0.0, 0.5); // g0 >= f0

    Stepper st(s.gen, 0.05, method);
    StateField ff = f, gg = g;
    for (int k = 0; k < 40; ++k) {
      st.advance(ff);
      st.advance(gg);
      for (std::size_t i = 0; i < ff.values.size(); ++i) {
        CHECK(ff.values[i] <= cap + 1e-10);
        CHECK(ff.values[i] <= gg.values[i] + 1e-10);
      }
    }
  }
}

TEST_CASE("L2(dmu) decay and dissipation balance") {
  const Setup s = make_setup(128);
  StateField f = bump_state(s.grid);
  const double dt = 1e-3;
  Stepper st(s.gen, dt, StepMethod::CrankNicolson);
  auto l2 = [&](const StateField& u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
      acc += s.gen.balance_measure()[i] * u.values[i] * u.values[i];
    return acc;
  };
  auto l4 = [&](const StateField& u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
      acc += s.gen.balance_measure()[i] * std::pow(u.values[i], 4.0);
    return acc;
  };
  double prev2 = l2(f), prev4 = l4(f);
  for (int k = 0; k < 50; ++k) {
    const double D = -2.0 * s.gen.quadratic_form(f.values);
    st.advance(f);
    const double cur2 = l2(f), cur4 = l4(f);
    CHECK(cur2 <= prev2 * (1.0 + 1e-13));
    CHECK(cur4 <= prev4 * (1.0 + 1e-12)); // p = 4 analog
    CHECK(std::abs((prev2 - cur2) - dt * D) <= 5.0 * dt * dt * D + 1e-16);
    prev2 = cur2;
    prev4 = cur4;
  }
}

TEST_CASE("boundary limit") {
  const RadialGrid grid = RadialGrid::graded(400, 8.0, 2.0);

  StateField c;
  c.values.assign(400, 3.25);
  CHECK(boundary_limit(c, grid).value == doctest::Approx(3.25).epsilon(1e-13));

  // synthetic profile a + x^{1-delta}, delta = 0.1, against the extrapolation
  StateField f;
  f.values.resize(400);
  for (std::size_t i = 0; i < 400; ++i) f.values[i] = 0.7 + std::pow(grid.nodes[i], 0.9);
  const BoundaryLimit b = boundary_limit(f, grid);
  CHECK(std::abs(b.value - 0.7) < 1e-4);
  CHECK(b.error_indicator < 1e-3);

  // needs enough nodes below x = 0.1
  const RadialGrid coarse = RadialGrid::graded(16, 8.0, 0.5);
  StateField g;
  g.values.assign(16, 1.0);
  CHECK_THROWS_AS(boundary_limit(g, coarse), ContractError);
}

TEST_CASE("boundary limit along an evolved run") {
  const Setup s = make_setup(256);
  StateField f0;
  f0.theta = 0.5;
  f0.values.resize(256);
  for (std::size_t i = 0; i < 256; ++i) {
    const double x2 = s.grid.nodes[i] * s.grid.nodes[i];
    f0.values[i] = (1.02 / (1.0 + x2) - 1.0) * (-std::expm1(-2.0 * x2)) / x2;
  }
  RunSchedule sched;
  sched.dt = 0.02;
  sched.tau_end = 5.0;
  sched.store_every = 25;
  const EvolutionRun r = run(f0, s.gen, sched);
  const double norm0 = f0.norm_theta(s.grid);

  // |b(tau)| <= C (tau^-theta + tau) ||f0||_theta, C fitted on the early samples
  double cfit = 0.0;
  std::vector<double> ratios;
  for (std::size_t k = 1; k < r.times.size(); ++k) {
    const BoundaryLimit b = boundary_limit(r.states[k], s.grid);
    CHECK(std::isfinite(b.value));
    const double tau = r.times[k];
    ratios.push_back(std::abs(b.value) / ((std::pow(tau, -0.5) + tau) * norm0));
  }
  for (std::size_t k = 0; k < ratios.size() / 2; ++k) cfit = std::max(cfit, ratios[k]);
  for (std::size_t k = ratios.size() / 2; k < ratios.size(); ++k)
    CHECK(ratios[k] <= 1.5 * cfit);
}

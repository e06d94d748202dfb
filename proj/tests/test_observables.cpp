#include <doctest.h>

#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/observables.hpp"
#include "oracle_helpers.hpp"

using namespace condkin;

namespace {

StateField example1(const RadialGrid& grid, WeightConvention conv) {
  const double c = conv == WeightConvention::SinhX2 ? 2.0 : 1.0;
  StateField f;
  f.theta = 0.5;
  f.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x2 = grid.nodes[i] * grid.nodes[i];
    f.values[i] = (1.02 / (1.0 + x2) - 1.0) * (-std::expm1(-c * x2)) / x2;
  }
  return f;
}

StateField example2(const RadialGrid& grid, WeightConvention conv) {
  const double c = conv == WeightConvention::SinhX2 ? 2.0 : 1.0;
  StateField f;
  f.theta = 0.5;
  f.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.nodes[i], x2 = x * x;
    f.values[i] = 0.2 * std::atan(x / 10.0) * (-std::expm1(-c * x2)) / x2;
  }
  return f;
}

} // namespace

TEST_CASE("mass and energy") {
  const RadialGrid grid = RadialGrid::graded(400, 8.0, 2.0);
  const auto wA = EquilibriumWeights::build(grid.nodes, WeightConvention::SinhX2);
  const auto wB = EquilibriumWeights::build(grid.nodes, WeightConvention::SinhHalfX2);

  StateField zero;
  zero.values.assign(400, 0.0);
  const MassEnergy z = mass_energy(zero, wA, grid);
  CHECK(z.N == 0.0);
  CHECK(z.E == 0.0);

  // f = 1 reproduces the equilibrium moments; 40-digit quadrature references
  StateField ones;
  ones.values.assign(400, 1.0);
  const MassEnergy mA = mass_energy(ones, wA, grid);
  CHECK(mA.N == doctest::Approx(0.3069494021701905).epsilon(2e-4));
  CHECK(mA.E == doctest::Approx(0.19702792318841834).epsilon(2e-4));
  const MassEnergy mB = mass_energy(ones, wB, grid);
  CHECK(mB.N == doctest::Approx(1.7363680300455878).epsilon(2e-4));
  CHECK(mB.E == doctest::Approx(2.2291164891141251).epsilon(2e-4));

  // the printed example-1 moments under the half convention
  const MassEnergy e1 = mass_energy(example1(grid, WeightConvention::SinhHalfX2), wB, grid);
  CHECK(e1.N == doctest::Approx(-0.344949).epsilon(1e-4));
  CHECK(e1.E == doctest::Approx(-0.523546).epsilon(1e-4));
  CHECK(e1.N / e1.E == doctest::Approx(0.658872).epsilon(1e-5));

  const MassEnergy e2 = mass_energy(example2(grid, WeightConvention::SinhHalfX2), wB, grid);
  CHECK(e2.N == doctest::Approx(0.0163705).epsilon(1e-4));
  CHECK(e2.E == doctest::Approx(0.0238295).epsilon(1e-4));
  CHECK(e2.E / e2.N == doctest::Approx(1.45564).epsilon(1e-5));
}

TEST_CASE("asymptotic constants") {
  const RadialGrid grid = RadialGrid::graded(200, 8.0, 2.0);
  const auto w = EquilibriumWeights::build(grid.nodes, WeightConvention::SinhX2);

  StateField c;
  c.values.assign(200, 0.8);
  const AsymptoticConstants ac = asymptotic_constants(c, w, grid);
  CHECK(ac.Cstar == doctest::Approx(0.8).epsilon(1e-13));
  CHECK(std::abs(ac.Mcal_inf) < 1e-14);
  CHECK(ac.pc_limit_ratio == doctest::Approx(1.0).epsilon(1e-13));

  // example 1: N(0)/E(0) < N0/E0, so Mcal_inf < 0 and the ratio exceeds 1
  const auto wB = EquilibriumWeights::build(grid.nodes, WeightConvention::SinhHalfX2);
  const AsymptoticConstants a1 = asymptotic_constants(example1(grid, WeightConvention::SinhHalfX2), wB, grid);
  CHECK(a1.Mcal_inf < 0.0);
  CHECK(a1.pc_limit_ratio > 1.0);

  // example 2: E(0)/N(0) > E0/N0, the ratio drops below 1
  const AsymptoticConstants a2 = asymptotic_constants(example2(grid, WeightConvention::SinhHalfX2), wB, grid);
  CHECK(a2.Mcal_inf > 0.0);
  CHECK(a2.pc_limit_ratio < 1.0);
}

TEST_CASE("dissipation") {
  const RadialGrid grid = RadialGrid::graded(96, 8.0, 2.0);
  const auto w = EquilibriumWeights::build(grid.nodes, WeightConvention::SinhX2);
  const GeneratorMatrix gen = assemble_generator(grid, w);

  StateField c;
  c.values.assign(96, 1.3);
  CHECK(dissipation(c, gen) == 0.0);

  oracle::Rng rng(29);
  StateField f;
  f.values.resize(96);
  for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
  const double D = dissipation(f, gen);
  CHECK(D > 0.0);
  const std::vector<double> af = gen.apply(f.values);
  double qf = 0.0;
  for (std::size_t i = 0; i < 96; ++i) qf += gen.balance_measure()[i] * f.values[i] * af[i];
  CHECK(D == doctest::Approx(-2.0 * qf).epsilon(1e-10));
}

TEST_CASE("drift series") {
  const RadialGrid grid = RadialGrid::graded(128, 8.0, 2.0);
  const auto w = EquilibriumWeights::build(grid.nodes, WeightConvention::SinhX2);
  const GeneratorMatrix gen = assemble_generator(grid, w);

  // constant run: no drift, qc constant
  StateField c;
  c.values.assign(128, 0.4);
  RunSchedule sched;
  sched.dt = 0.05;
  sched.tau_end = 1.0;
  const EvolutionRun cr = run(c, gen, sched);
  const ObservableSeries cs = drift_series(cr, gen, w, 1.5);
  for (double v : cs.m) CHECK(std::abs(v) < 1e-13);
  for (double v : cs.qc) CHECK(v == doctest::Approx(1.5).epsilon(1e-12));

  // example run: Mcal tracks N - N(0) exactly on the CN trajectory, qc > 0
  const EvolutionRun er = run(example1(grid, WeightConvention::SinhX2), gen, sched);
  const ObservableSeries es = drift_series(er, gen, w);
  for (std::size_t k = 0; k < es.tau.size(); ++k) {
    CHECK(std::abs(es.Mcal[k] - (es.N[k] - es.N[0])) < 1e-13);
    CHECK(es.qc[k] > 0.0);
    CHECK(es.qc[k] == doctest::Approx(std::exp(-es.Mcal[k])).epsilon(1e-14));
    CHECK(es.D[k] >= 0.0);
  }

  // coarse storage breaks the cumulative-trapezoid identity and is flagged
  RunSchedule coarse = sched;
  coarse.tau_end = 4.0;
  coarse.store_every = 20;
  const EvolutionRun bad = run(example1(grid, WeightConvention::SinhX2), gen, coarse);
  CHECK_THROWS_AS(drift_series(bad, gen, w, 1.0, 1e-8), ConsistencyError);
}

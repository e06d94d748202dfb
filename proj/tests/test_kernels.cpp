#include <doctest.h>

#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/kernels.hpp"
#include "oracle_helpers.hpp"

using namespace condkin;

TEST_CASE("equilibrium occupancy") {
  CHECK(equilibrium_n0(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(equilibrium_n0(1.0) == doctest::Approx(0.58197670686932642).epsilon(1e-14));
  CHECK(equilibrium_n0(80.0) < 1e-30); // decays into underflow
  CHECK_THROWS_AS(equilibrium_n0(0.0), SingularEvaluation);
  CHECK_THROWS_AS(equilibrium_n0(-1.0), SingularEvaluation);
}

TEST_CASE("equilibrium weights") {
  const std::vector<double> nodes{0.1, 0.5, 1.0, 2.0, 4.0};
  for (auto conv : {WeightConvention::SinhX2, WeightConvention::SinhHalfX2}) {
    const auto w = EquilibriumWeights::build(nodes, conv);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(w.w4[i] > 0.0);
      CHECK(std::isfinite(w.w6[i]));
      CHECK(w.w6[i] / w.w4[i] == nodes[i] * nodes[i]); // exact by construction
    }
  }
}

TEST_CASE("kernel M") {
  // 50-digit reference of the defining formula at (1, 1.1)
  CHECK(kernel_M(1.0, 1.1) == doctest::Approx(4.6127932576276534).epsilon(1e-13));
  // the symmetric bracket factor matches from both orderings
  const double b12 = kernel_M(1.0, 2.0) * (1.0 * std::sinh(4.0)) / (8.0 * std::sinh(1.0));
  const double b21 = kernel_M(2.0, 1.0) * (8.0 * std::sinh(1.0)) / (1.0 * std::sinh(4.0));
  CHECK(b12 == doctest::Approx(b21).epsilon(1e-13));
  oracle::Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const double x = rng.uniform(0.02, 6.0), y = rng.uniform(0.02, 6.0);
    if (x == y) continue;
    CHECK(kernel_M(x, y) > 0.0);
  }
  CHECK_THROWS_AS(kernel_M(1.0, 1.0), SingularEvaluation);
  CHECK_THROWS_AS(kernel_M(-1.0, 1.0), ContractError);
}

TEST_CASE("kernel W") {
  CHECK(kernel_W(1.0, 2.0) == kernel_W(2.0, 1.0)); // symmetric code path
  CHECK(kernel_W(1.0, 2.0) == doctest::Approx(0.0013461488280306590).epsilon(1e-13));
  // defining relation against M
  const double lhs = kernel_W(1.0, 2.0) * std::sinh(1.0) * std::sinh(1.0) * 16.0 / 1.0;
  CHECK(lhs == doctest::Approx(kernel_M(1.0, 2.0)).epsilon(1e-13));
  // eps * W(1, 1+eps) approaches 1/(2 sinh^2 1)
  const double lim = 0.36203083048315523;
  CHECK(1e-6 * kernel_W(1.0, 1.0 + 1e-6) == doctest::Approx(lim).epsilon(1e-4));
  CHECK(1e-8 * kernel_W(1.0, 1.0 + 1e-8) == doctest::Approx(lim).epsilon(1e-6));
}

TEST_CASE("detailed balance holds only under the sinh(x^2) convention") {
  const std::vector<double> nodes{0.2, 0.7, 1.3, 2.4, 3.5};
  const auto balanced = EquilibriumWeights::build(nodes, WeightConvention::SinhX2);
  const auto half = EquilibriumWeights::build(nodes, WeightConvention::SinhHalfX2);
  double worst_balanced = 0.0, worst_half = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (i == j) continue;
      const double x = nodes[i], y = nodes[j];
      const double rhs = 0.25 * kernel_W(x, y) * std::pow(x * y, 4.0);
      worst_balanced =
          std::max(worst_balanced, std::abs(balanced.w6[i] * kernel_M(x, y) - rhs) / rhs);
      worst_half = std::max(worst_half, std::abs(half.w6[i] * kernel_M(x, y) - rhs) / rhs);
    }
  CHECK(worst_balanced < 1e-12);
  CHECK(worst_half > 0.1);
}

TEST_CASE("kernel T diagonal and jump structure") {
  // T1(1,1) = h(2) = 1/2 - 1/sinh 2
  CHECK(kernel_T1(1.0, 1.0) == doctest::Approx(0.22427943522821679).epsilon(1e-14));
  CHECK(kernel_T(1.0, 1.0) == doctest::Approx(0.22427943522821679).epsilon(1e-14));
  CHECK(kernel_T2(1.0, 1.0) == 0.0);

  // the T2 one-sided limits are +-g'(x)/(2x); their average cancels, so the
  // two-sided mean tends to T(x,x) linearly in eps
  const double gprime_half = 1.0 - std::cosh(1.0) / std::sinh(1.0); // g'(1)/2
  CHECK(kernel_T2(1.0, 1.0 - 1e-9) == doctest::Approx(gprime_half).epsilon(1e-6));
  CHECK(kernel_T2(1.0, 1.0 + 1e-9) == doctest::Approx(-gprime_half).epsilon(1e-6));

  // two-sided Richardson extrapolation oracle for the full T(1,1)
  double avg[4];
  double eps = 0.2;
  for (int k = 0; k < 4; ++k, eps *= 0.5)
    avg[k] = 0.5 * (kernel_T(1.0, 1.0 + eps) + kernel_T(1.0, 1.0 - eps));
  double rich[3];
  for (int k = 0; k < 3; ++k) rich[k] = 2.0 * avg[k + 1] - avg[k]; // first order in eps
  const double extrapolated = (4.0 * rich[2] - rich[1]) / 3.0;     // second order
  CHECK(extrapolated == doctest::Approx(kernel_T(1.0, 1.0)).epsilon(2e-5));
}

TEST_CASE("kernel T values and near-diagonal branches") {
  CHECK(kernel_T(0.5, 0.3) == doctest::Approx(0.035793781126909580).epsilon(1e-11));
  CHECK(std::abs(kernel_T1(0.5, 0.3)) == doctest::Approx(0.017594635217205647).epsilon(1e-11));
  // |T1(x,y)| <= C_fit x y on the unit square, with C_fit from dense sampling
  oracle::Rng rng(11);
  double cfit = 0.0;
  for (int k = 0; k < 4000; ++k) {
    const double x = rng.uniform(1e-3, 1.0), y = rng.uniform(1e-3, 1.0);
    cfit = std::max(cfit, std::abs(kernel_T1(x, y)) / (x * y));
  }
  CHECK(std::abs(kernel_T1(0.5, 0.3)) <= cfit * 0.5 * 0.3);

  // series and direct branch agree at the switch threshold (component scale)
  for (double x : {0.6, 1.0, 2.5, 6.0}) {
    const double thr = 1e-3 * std::max(1.0, x * x);
    const double y = std::sqrt(x * x + thr);
    const double ts = kernel_T(x, y, TBranch::Series);
    const double td = kernel_T(x, y, TBranch::Direct);
    const double scale =
        (y / x) * (std::abs(h_sinh_defect(x * x + y * y)) + std::abs(h_sinh_defect(thr))) +
        std::abs(kernel_T2(x, y));
    CHECK(std::abs(ts - td) / scale < 1e-10);
  }
  CHECK(near_diagonal(1.0, 1.0004));
  CHECK_FALSE(near_diagonal(1.0, 1.2));
  const KernelPair p = kernel_pair(1.0, 1.0004);
  CHECK(p.near_diagonal);
  CHECK(p.value_W > 0.0);
}

TEST_CASE("row and column masses") {
  // adaptive-quadrature references computed at 25-digit precision
  CHECK(kernel_row_mass(1.0, 40.0) == doctest::Approx(0.627995986855).epsilon(1e-6));
  CHECK(kernel_row_mass(10.0, 40.0) == doctest::Approx(5.06223417057).epsilon(1e-6));
  CHECK(kernel_row_mass(0.1, 30.0) == doctest::Approx(0.0500555505557).epsilon(1e-6));

  // stabilization in the truncation: the tail only adds O(x/x_max^2)
  const double m20 = kernel_row_mass(1.0, 20.0);
  const double m40 = kernel_row_mass(1.0, 40.0);
  CHECK(std::abs(m40 - m20) / m40 < 1e-3);

  // column masses are finite as well
  CHECK(kernel_column_mass(1.0, 40.0) > 0.0);
  CHECK(kernel_column_mass(10.0, 40.0) < 20.0);

  // finite over the wide sample (the sup grows ~x/2 with the sampled range;
  // the suite asserts finiteness per sample, not a global sup)
  for (double x : {1e-3, 1e-1, 1.0, 10.0, 100.0}) {
    const double m = kernel_row_mass(x, std::max(2.0 * x + 10.0, 8.0), 400000);
    CHECK(std::isfinite(m));
    CHECK(m < 0.75 * std::max(1.0, x));
  }
}

#ifndef CONDKIN_KERNELS_HPP
#define CONDKIN_KERNELS_HPP

#include <vector>

#include "condkin/numerics.hpp"

namespace condkin {

// Which sinh argument the equilibrium occupancy uses: n0(1+n0) = 1/(4 sinh^2(x^2))
// or 1/(4 sinh^2(x^2/2)).  The first is the detailed-balance weight of the
// collision kernels below; the second matches the equilibrium written as a
// function of the dimensionless energy x^2.
enum class WeightConvention { SinhX2, SinhHalfX2 };

// Bose-Einstein occupancy 1/(e^omega - 1) for omega > 0.
double equilibrium_n0(double omega);

// n0, n0(1+n0) and its x^4/x^5/x^6 moments at momentum modulus x.
double occupancy(double x, WeightConvention conv);
double weight_factor(double x, WeightConvention conv); // n0(1+n0)

struct EquilibriumWeights {
  std::vector<double> nodes;
  std::vector<double> w4; // n0(1+n0) x^4
  std::vector<double> w6; // n0(1+n0) x^6, stored as w4*x^2
  WeightConvention convention = WeightConvention::SinhX2;

  static EquilibriumWeights build(const std::vector<double>& nodes, WeightConvention conv);
};

// Jump kernel M(x,y) and its symmetrization W(x,y).  Both are singular on the
// diagonal and throw SingularEvaluation at x == y.
double kernel_M(double x, double y);
double kernel_W(double x, double y);

// Evaluation branch selector for the near-diagonal defect h(z) = 1/z - 1/sinh z
// inside T1; Auto switches to the series below the cancellation threshold.
enum class TBranch { Auto, Series, Direct };

// Compact-part kernel T = T1 + T2 = M-kernel minus the principal-part kernel.
// Total on the open quadrant; the diagonal carries the principal-value limit
// T(x,x) = h(2x^2) (the T2 jump is odd across the diagonal and averages out).
double kernel_T(double x, double y, TBranch branch = TBranch::Auto);
double kernel_T1(double x, double y, TBranch branch = TBranch::Auto);
double kernel_T2(double x, double y);

// Near-diagonal switch: |x^2 - y^2| < 1e-3 * max(1, x^2).
bool near_diagonal(double x, double y);

struct KernelPair {
  double x = 0.0;
  double y = 0.0;
  double value_M = 0.0;
  double value_W = 0.0;
  double value_T = 0.0;
  bool near_diagonal = false;
};
KernelPair kernel_pair(double x, double y);

// Row mass m(x) = int_0^{x_max} |T(x,y)| dy and the column version with the
// roles of the arguments swapped.  Adaptive quadrature; throws
// NumericalFailure (with the partial estimate) if the budget is exhausted.
double kernel_row_mass(double x, double x_max, int max_evaluations = 100000);
double kernel_column_mass(double y, double x_max, int max_evaluations = 100000);

} // namespace condkin

#endif

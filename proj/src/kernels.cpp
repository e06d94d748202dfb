#include "condkin/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "condkin/errors.hpp"

namespace condkin {

double equilibrium_n0(double omega) {
  if (!(omega > 0.0)) throw SingularEvaluation("equilibrium_n0: omega must be positive");
  return 1.0 / std::expm1(omega);
}

double occupancy(double x, WeightConvention conv) {
  const double arg = conv == WeightConvention::SinhX2 ? 2.0 * x * x : x * x;
  return equilibrium_n0(arg);
}

double weight_factor(double x, WeightConvention conv) {
  const double half = conv == WeightConvention::SinhX2 ? x * x : 0.5 * x * x;
  if (half > 360.0) return 0.0; // underflows double precision
  const double s = std::sinh(half);
  return 0.25 / (s * s);
}

EquilibriumWeights EquilibriumWeights::build(const std::vector<double>& nodes,
                                             WeightConvention conv) {
  EquilibriumWeights w;
  w.nodes = nodes;
  w.convention = conv;
  w.w4.resize(nodes.size());
  w.w6.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double x = nodes[i];
    if (!(x > 0.0)) throw ContractError("EquilibriumWeights: nodes must be positive");
    const double x2 = x * x;
    w.w4[i] = weight_factor(x, conv) * x2 * x2;
    w.w6[i] = w.w4[i] * x2; // keeps w6/w4 == x^2 exactly
  }
  return w;
}

namespace {

// sinh(u)/sinh(v) without overflow.
double sinh_ratio(double u, double v) {
  if (std::max(u, v) < 300.0) return std::sinh(u) / std::sinh(v);
  const double d = u - v;
  if (d > 709.0) return std::numeric_limits<double>::infinity();
  return std::exp(d) * (-std::expm1(-2.0 * u)) / (-std::expm1(-2.0 * v));
}

// 1/(sinh(u) sinh(v)) without overflow.
double inv_sinh_product(double u, double v) {
  if (std::max(u, v) < 300.0) return 1.0 / (std::sinh(u) * std::sinh(v));
  if (u + v > 1420.0) return 0.0;
  return 4.0 * std::exp(-u - v) / ((-std::expm1(-2.0 * u)) * (-std::expm1(-2.0 * v)));
}

// sinh(u)/sinh(v) * (csch|u-v| - csch(u+v)), the T2 bulk, stable for large
// arguments where ratio and gap over/underflow separately.  Uses
// e^{u-v} csch(u+v) = 2 e^{-2v}/(1 - e^{-2(u+v)}) for either ordering.
double ratio_times_gap(double u, double v) {
  const double z = std::abs(u - v), s = u + v;
  const double r0 = (-std::expm1(-2.0 * u)) / (-std::expm1(-2.0 * v));
  const double e2z = std::exp(-2.0 * z);
  const double t2 = 2.0 * std::exp(-2.0 * v) / (-std::expm1(-2.0 * s));
  if (u > v) return r0 * (2.0 / (1.0 - e2z) - t2);
  return r0 * (2.0 * e2z / (1.0 - e2z) - t2);
}

void require_quadrant(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw ContractError("kernel: arguments must be positive");
}

} // namespace

double kernel_M(double x, double y) {
  require_quadrant(x, y);
  if (x == y) throw SingularEvaluation("kernel_M: diagonal is singular");
  const double u = x * x, v = y * y;
  const double gap = csch_gap(std::min(u, v), std::max(u, v));
  return gap * (y * y * y) / (x * x * x) * sinh_ratio(u, v);
}

double kernel_W(double x, double y) {
  require_quadrant(x, y);
  if (x == y) throw SingularEvaluation("kernel_W: diagonal is singular");
  const double u = x * x, v = y * y;
  return csch_gap(std::min(u, v), std::max(u, v)) * inv_sinh_product(u, v) / (x * y);
}

bool near_diagonal(double x, double y) {
  return std::abs(x * x - y * y) < 1e-3 * std::max(1.0, x * x);
}

double kernel_T1(double x, double y, TBranch branch) {
  require_quadrant(x, y);
  const double u = x * x, v = y * y;
  const double z = std::abs(x - y) * (x + y), s = u + v;
  double hz;
  switch (branch) {
    case TBranch::Series: hz = h_sinh_defect_series(z); break;
    case TBranch::Direct: hz = z == 0.0 ? 0.0 : h_sinh_defect_direct(z); break;
    default: hz = z == 0.0 ? 0.0 : h_sinh_defect(z); break;
  }
  return (y / x) * (h_sinh_defect(s) - hz);
}

double kernel_T2(double x, double y) {
  require_quadrant(x, y);
  if (x == y) return 0.0; // principal-value limit: the one-sided limits are +-g'(x)/(2x)
  const double u = x * x, v = y * y;
  const double z = std::abs(x - y) * (x + y), s = u + v;
  const double y3x3 = (y * y * y) / (x * x * x);
  const double big = std::max(u, v);
  if (big <= 30.0 && z <= 0.1 * std::max(1.0, big)) {
    // near-diagonal: (sinh u/sinh v - u/v) cancels; route through the
    // positive-series difference quotient of sinh(t)/t.
    const double sign = u > v ? 1.0 : -1.0;
    const double psi = sinhc_diff_quotient(u, v) / sinhc(v);
    return (y / x) * sign * (z_over_sinh(z) - z * csch(s)) * psi;
  }
  if (big <= 300.0) {
    const double g = std::sinh(u) / std::sinh(v) - u / v;
    return y3x3 * g * (csch(z) - csch(s));
  }
  const double gap = csch_gap(std::min(u, v), big);
  return y3x3 * (ratio_times_gap(u, v) - (u / v) * gap);
}

double kernel_T(double x, double y, TBranch branch) {
  require_quadrant(x, y);
  if (x == y) return h_sinh_defect(2.0 * x * x);
  return kernel_T1(x, y, branch) + kernel_T2(x, y);
}

KernelPair kernel_pair(double x, double y) {
  KernelPair p;
  p.x = x;
  p.y = y;
  p.value_M = kernel_M(x, y);
  p.value_W = kernel_W(x, y);
  p.value_T = kernel_T(x, y);
  p.near_diagonal = near_diagonal(x, y);
  return p;
}

namespace {

double abs_T_mass(double fixed, double x_max, bool fixed_is_row, int max_evaluations) {
  if (!(fixed > 0.0) || !(x_max > 0.0)) throw ContractError("kernel mass: positive args required");
  auto f = [fixed, fixed_is_row](double t) {
    if (t <= 0.0) return 0.0;
    return std::abs(fixed_is_row ? kernel_T(fixed, t) : kernel_T(t, fixed));
  };
  std::vector<double> pts{0.0, x_max};
  for (double p : {0.5 * fixed, 0.999 * fixed, fixed, 1.001 * fixed, 2.0 * fixed, fixed + 5.0})
    if (p > 0.0 && p < x_max) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto r = integrate_adaptive(f, pts, 1e-11, 1e-9, max_evaluations);
  if (!r.converged)
    throw NumericalFailure("kernel mass quadrature did not converge", r.value, r.error_estimate);
  return r.value;
}

} // namespace

double kernel_row_mass(double x, double x_max, int max_evaluations) {
  return abs_T_mass(x, x_max, true, max_evaluations);
}

double kernel_column_mass(double y, double x_max, int max_evaluations) {
  return abs_T_mass(y, x_max, false, max_evaluations);
}

} // namespace condkin

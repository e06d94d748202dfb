#include "condkin/numerics.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <stdexcept>

#include "condkin/errors.hpp"

namespace condkin {

namespace {

// Taylor coefficients of 1/z - 1/sinh z at 0 (odd powers z^1 .. z^15).
constexpr double kHSeries[8] = {
    1.6666666666666666667e-1,  -1.9444444444444444444e-2, 2.0502645502645502646e-3,
    -2.0998677248677248677e-4, 2.1336045641601197157e-5,  -2.1633474427786597099e-6,
    2.1923271344567640864e-7,  -2.2213930853920414559e-8};

} // namespace

double h_sinh_defect_series(double z) {
  const double z2 = z * z;
  double acc = kHSeries[7];
  for (int k = 6; k >= 0; --k) acc = kHSeries[k] + z2 * acc;
  return z * acc;
}

double h_sinh_defect_direct(double z) { return 1.0 / z - csch(z); }

double h_sinh_defect(double z) {
  if (z < 0.35) return h_sinh_defect_series(z);
  return h_sinh_defect_direct(z);
}

double csch(double z) {
  if (z > 36.0) {
    if (z > 709.0) return 0.0; // below double underflow anyway
    const double e = std::exp(-z);
    return 2.0 * e / (1.0 - e * e);
  }
  return 1.0 / std::sinh(z);
}

double z_over_sinh(double z) {
  if (z == 0.0) return 1.0;
  if (z < 1e-4) return 1.0 / (1.0 + z * z / 6.0);
  return z * csch(z);
}

double sinhc(double u) {
  if (u < 1e-4) return 1.0 + u * u / 6.0;
  return std::sinh(u) / u;
}

double sinhc_diff_quotient(double u, double v) {
  // (sinhc(u) - sinhc(v))/(u - v) = sum_{k>=1} p_{2k-1}(u, v)/(2k+1)!
  // with p_m(u,v) = sum_{j=0..m} u^j v^{m-j}; every term is positive.
  double fact = 6.0; // (2k+1)!
  double sum = 0.0;
  for (int k = 1; k < 80; ++k) {
    const int m = 2 * k - 1;
    double p = 0.0, uj = 1.0;
    for (int j = 0; j <= m; ++j) {
      p += uj * std::pow(v, double(m - j));
      uj *= u;
    }
    const double term = p / fact;
    sum += term;
    if (term < 1e-18 * sum) break;
    fact *= double(2 * k + 2) * double(2 * k + 3);
  }
  return sum;
}

double csch_gap(double a, double b) {
  const double z = b - a, s = b + a;
  if (z <= 0.0) throw SingularEvaluation("csch_gap: coincident arguments");
  if (b < 300.0) return 2.0 * std::cosh(b) * std::sinh(a) / (std::sinh(z) * std::sinh(s));
  // 2 sinh(a) cosh(b)/sinh(a+b) = (1-e^{-2a})(1+e^{-2b})/(1-e^{-2(a+b)})
  const double num = -std::expm1(-2.0 * a) * (1.0 + std::exp(-2.0 * b));
  return num / (1.0 - std::exp(-2.0 * s)) * csch(z);
}

namespace {

// Kronrod 15 nodes/weights on [-1,1] plus embedded Gauss 7 weights.
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussWeights[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                     0.417959183673469, 0.381830050505119, 0.279705391489277,
                                     0.129484966168870};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(c + hw * kKronrodNodes[i]);
    kron += kKronrodWeights[i] * v;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * v;
  }
  kron *= hw;
  gauss *= hw;
  double err = std::abs(kron - gauss);
  err = 200.0 * err * std::sqrt(err); // standard QUADPACK-style sharpening
  if (!(err < std::abs(kron))) err = std::abs(kron - gauss);
  return {a, b, kron, err};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_evaluations) {
  return integrate_adaptive(f, std::vector<double>{a, b}, abs_tol, rel_tol, max_evaluations);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    const std::vector<double>& breakpoints, double abs_tol,
                                    double rel_tol, int max_evaluations) {
  if (breakpoints.size() < 2) throw ContractError("integrate_adaptive: need at least [a, b]");
  std::priority_queue<Interval> heap;
  QuadratureResult res;
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw ContractError("integrate_adaptive: breakpoints not increasing");
    Interval iv = gk15(f, breakpoints[i], breakpoints[i + 1]);
    total += iv.value;
    err += iv.error;
    res.evaluations += 15;
    heap.push(iv);
  }
  while (err > abs_tol + rel_tol * std::abs(total) && res.evaluations + 30 <= max_evaluations) {
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) { // interval at rounding resolution
      heap.push({worst.a, worst.b, worst.value, 0.0});
      err -= worst.error;
      continue;
    }
    Interval left = gk15(f, worst.a, mid), right = gk15(f, mid, worst.b);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  res.value = total;
  res.error_estimate = err;
  res.converged = err <= abs_tol + rel_tol * std::abs(total);
  return res;
}

DenseLU::DenseLU(const std::vector<double>& a, std::size_t n) : lu_(a), piv_(n), n_(n) {
  if (a.size() != n * n) throw ContractError("DenseLU: matrix size mismatch");
  for (std::size_t i = 0; i < n; ++i) piv_[i] = int(i);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_[i * n + k]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) throw NumericalFailure("DenseLU: singular matrix", 0.0, 0.0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_[k * n + j], lu_[p * n + j]);
      std::swap(piv_[k], piv_[p]);
    }
    const double inv = 1.0 / lu_[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = lu_[i * n + k] * inv;
      lu_[i * n + k] = m;
      if (m != 0.0)
        for (std::size_t j = k + 1; j < n; ++j) lu_[i * n + j] -= m * lu_[k * n + j];
    }
  }
}

void DenseLU::solve_in_place(std::vector<double>& rhs) const {
  if (rhs.size() != n_) throw ContractError("DenseLU::solve: rhs size mismatch");
  std::vector<double> b(n_);
  for (std::size_t i = 0; i < n_; ++i) b[i] = rhs[std::size_t(piv_[i])];
  for (std::size_t i = 1; i < n_; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_[i * n_ + j] * b[j];
    b[i] = s;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) s -= lu_[ii * n_ + j] * b[j];
    b[ii] = s / lu_[ii * n_ + ii];
  }
  rhs = std::move(b);
}

std::vector<double> DenseLU::solve(std::vector<double> rhs) const {
  solve_in_place(rhs);
  return rhs;
}

} // namespace condkin

#ifndef CONDKIN_NUMERICS_HPP
#define CONDKIN_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace condkin {

// h(z) = 1/z - 1/sinh z.  Entire continuation through z = 0; evaluating the
// two reciprocals directly loses ~6 eps/z^2, so small arguments go through the
// odd Taylor series (fixed order 8, accurate to full precision for z < 0.35).
double h_sinh_defect(double z);
double h_sinh_defect_series(double z);
double h_sinh_defect_direct(double z);

// 1/sinh z without overflow for large z.
double csch(double z);

// z/sinh z, regular at 0.
double z_over_sinh(double z);

// sinh(u)/u, regular at 0.
double sinhc(double u);

// phi-difference sum: (sinh u/u - sinh v/v)/(u - v) as an explicit positive
// series, avoiding the cancellation that kills the direct difference when
// u ~ v.  Converges for moderate u, v; callers switch to exp forms above ~30.
double sinhc_diff_quotient(double u, double v);

// 1/sinh(b-a) - 1/sinh(b+a) for 0 < a <= b, in the product form
// 2 cosh(b) sinh(a) / (sinh(b-a) sinh(b+a)); exponential form for large b.
double csch_gap(double a, double b);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod (G7/K15) on [a, b].  Splits the worst interval until
// the summed error estimate meets abs_tol + rel_tol*|value| or the evaluation
// budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-12, double rel_tol = 1e-10,
                                    int max_evaluations = 200000);

// Same, with user breakpoints (singularities, kinks).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    const std::vector<double>& breakpoints, double abs_tol = 1e-12,
                                    double rel_tol = 1e-10, int max_evaluations = 200000);

// Dense LU with partial pivoting, row-major storage.
class DenseLU {
public:
  DenseLU() = default;
  // Factors a copy of the n x n matrix `a`.
  DenseLU(const std::vector<double>& a, std::size_t n);
  void solve_in_place(std::vector<double>& rhs) const;
  std::vector<double> solve(std::vector<double> rhs) const;
  std::size_t size() const { return n_; }

private:
  std::vector<double> lu_;
  std::vector<int> piv_;
  std::size_t n_ = 0;
};

} // namespace condkin

#endif

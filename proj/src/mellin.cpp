#include "condkin/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "condkin/errors.hpp"

namespace condkin {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;

// Asymptotic tail coefficients B_{2n}/(2n): psi(z) ~ ln z - 1/(2z) - sum c_n z^{-2n}.
constexpr double kPsiAsym[7] = {1.0 / 12.0,  -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
                                1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};

Complex cot(Complex w) {
  if (w.imag() >= 0.0) {
    const Complex q = std::exp(Complex(0.0, 2.0) * w);
    return Complex(0.0, 1.0) * (q + 1.0) / (q - 1.0);
  }
  const Complex p = std::exp(Complex(0.0, -2.0) * w);
  return Complex(0.0, 1.0) * (1.0 + p) / (1.0 - p);
}

} // namespace

Complex digamma(Complex z) {
  Complex result(0.0, 0.0);
  if (z.real() < 0.5) {
    // reflection; poles sit at the nonpositive integers
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < 1e-8)
      throw SingularEvaluation("digamma: evaluation at a pole");
    result = -kPi * cot(kPi * z);
    z = 1.0 - z;
  }
  while (std::abs(z) < 15.0) {
    result -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv2 = 1.0 / (z * z);
  Complex tail(0.0, 0.0);
  for (int n = 6; n >= 0; --n) tail = (tail + kPsiAsym[n]) * inv2;
  result += std::log(z) - 0.5 / z - tail;
  return result;
}

Complex symbol_W(Complex s) {
  if (!(s.real() > -2.0 && s.real() < 4.0))
    throw ContractError("symbol_W: Re(s) must lie in (-2, 4)");
  for (double pole : {0.0, 4.0, -2.0, 2.0}) {
    if (pole == 2.0) continue; // W(2) = 0, not a pole
    if (std::abs(s - Complex(pole, 0.0)) < 1e-8)
      throw SingularEvaluation("symbol_W: within 1e-8 of a pole");
  }
  return -2.0 * kEulerGamma - 2.0 * digamma(0.5 * s) - kPi * cot(0.25 * kPi * s);
}

namespace {

constexpr double kNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGauss[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                              0.417959183673469, 0.381830050505119, 0.279705391489277,
                              0.129484966168870};

struct CInterval {
  double a, b;
  Complex value;
  double error;
  bool operator<(const CInterval& o) const { return error < o.error; }
};

CInterval cgk15(const std::function<Complex(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  Complex kron(0.0, 0.0), gauss(0.0, 0.0);
  for (int i = 0; i < 15; ++i) {
    const Complex v = f(c + hw * kNodes[i]);
    kron += kWeights[i] * v;
    if (i % 2 == 1) gauss += kGauss[i / 2] * v;
  }
  kron *= hw;
  gauss *= hw;
  return {a, b, kron, std::abs(kron - gauss)};
}

Complex integrate_contour(const std::function<Complex(double)>& f, double vmax, double v_peak,
                          int budget, double tol) {
  std::priority_queue<CInterval> heap;
  Complex total(0.0, 0.0);
  double err = 0.0;
  int evals = 0;
  std::vector<double> edges{-vmax, -2.0, -0.5, 0.0, 0.5, 2.0, vmax};
  if (v_peak > -vmax && v_peak < vmax) edges.push_back(v_peak);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    CInterval iv = cgk15(f, edges[i], edges[i + 1]);
    total += iv.value;
    err += iv.error;
    evals += 15;
    heap.push(iv);
  }
  while (err > tol * std::max(1.0, std::abs(total)) && evals + 30 <= budget) {
    CInterval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push({worst.a, worst.b, worst.value, 0.0});
      err -= worst.error;
      continue;
    }
    CInterval l = cgk15(f, worst.a, mid), r = cgk15(f, mid, worst.b);
    evals += 30;
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  if (err > 1e-9 * std::max(1.0, std::abs(total)))
    throw NumericalFailure("symbol_B: contour quadrature budget exhausted", std::abs(total), err);
  return total;
}

} // namespace

Complex symbol_B(Complex s, double beta, int quad_budget) {
  if (!(beta > 0.0 && beta < 2.0)) throw ContractError("symbol_B: beta must lie in (0, 2)");
  if (!(s.real() > beta && s.real() < beta + 1.0))
    throw ContractError("symbol_B: Re(s) must lie in (beta, beta+1)");

  auto integrand = [s, beta](double v) -> Complex {
    const Complex rho(beta, v);
    const Complex negW = -symbol_W(rho);
    if (!(negW.real() > 0.0))
      throw ConsistencyError("symbol_B: branch event, Re(-W) <= 0 on the contour");
    const Complex lw = std::log(negW);
    const Complex e1 = Complex(0.0, 2.0 * kPi) * (s - rho);
    Complex first(0.0, 0.0);
    if (e1.real() < 500.0) first = 1.0 / (1.0 - std::exp(e1));
    const Complex e2 = Complex(0.0, -2.0 * kPi) * rho;
    Complex second(0.0, 0.0);
    if (e2.real() < 500.0) second = 1.0 / (1.0 + std::exp(e2));
    return lw * (first - second) * Complex(0.0, 1.0);
  };

  // the bracket decays like e^{-2 pi (|v| - |Im s|)}; 7 extra units put the
  // tail below 1e-14
  const double vmax = std::abs(s.imag()) + 7.0;
  const Complex logB = integrate_contour(integrand, vmax, s.imag(), quad_budget, 1e-13);
  return std::exp(logB);
}

double functional_equation_residual(Complex s, int quad_budget) {
  const double r = s.real() - 1.0;
  if (!(r > 0.05 && r < 0.45))
    throw ContractError("functional_equation_residual: need Re(s)-1 in (0.05, 0.45)");
  const double beta_main = 0.5 * (r + 0.5); // in (r, 1/2)
  const double beta_shift = 0.5 * r;        // in (0, r)
  const Complex Bs = symbol_B(s, beta_main, quad_budget);
  const Complex Bs1 = symbol_B(s - 1.0, beta_shift, quad_budget);
  return std::abs(Bs + symbol_W(s - 1.0) * Bs1) / std::abs(Bs);
}

} // namespace condkin

#include <doctest.h>

#include <cmath>

#include "condkin/errors.hpp"
#include "condkin/mellin.hpp"

using namespace condkin;

TEST_CASE("symbol W special values") {
  // W(2) = 0: psi(1) = -gamma_e cancels, cot(pi/2) = 0
  CHECK(std::abs(symbol_W(Complex(2.0, 0.0))) < 1e-14);
  // W(1) = 4 ln 2 - pi through psi(1/2) = -gamma_e - 2 ln 2
  const double w1 = 4.0 * std::log(2.0) - 3.14159265358979323846;
  CHECK(std::abs(symbol_W(Complex(1.0, 0.0)) - Complex(w1, 0.0)) < 1e-12);
  // 40-digit reference at a complex point
  const Complex ref(-4.380001019034558891980501, 0.1999990531131197603118373);
  CHECK(std::abs(symbol_W(Complex(2.0, 10.0)) - ref) < 1e-12 * std::abs(ref));
}

TEST_CASE("symbol W symmetry and domain") {
  for (double t : {0.3, 1.0, 4.0}) {
    const Complex s(1.2, t);
    const Complex a = symbol_W(std::conj(s));
    const Complex b = std::conj(symbol_W(s));
    CHECK(std::abs(a - b) <= 1e-13 * std::abs(b));
  }
  // real on the real segment away from the poles
  for (double x : {-1.5, -0.5, 0.5, 1.5, 2.5, 3.5})
    CHECK(std::abs(symbol_W(Complex(x, 0.0)).imag()) < 1e-13);

  CHECK_THROWS_AS(symbol_W(Complex(5.0, 0.0)), ContractError);
  CHECK_THROWS_AS(symbol_W(Complex(1e-9, 0.0)), SingularEvaluation);
  CHECK_THROWS_AS(symbol_W(Complex(4.0 - 1e-10, 0.0)), SingularEvaluation);
}

TEST_CASE("digamma spot checks") {
  // psi(1) = -gamma_e, psi(1/2) = -gamma_e - 2 ln 2
  const double gamma_e = 0.57721566490153286061;
  CHECK(std::abs(digamma(Complex(1.0, 0.0)) - Complex(-gamma_e, 0.0)) < 1e-13);
  CHECK(std::abs(digamma(Complex(0.5, 0.0)) - Complex(-gamma_e - 2.0 * std::log(2.0), 0.0)) <
        1e-13);
  // recurrence psi(z+1) = psi(z) + 1/z at a complex point
  const Complex z(0.3, 0.8);
  CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) < 1e-13);
  CHECK_THROWS_AS(digamma(Complex(-3.0, 0.0)), SingularEvaluation);
}

TEST_CASE("symbol B") {
  // contour references computed at 40 digits
  const Complex b0 = symbol_B(Complex(1.25, 0.0), 0.375);
  CHECK(std::abs(b0 - Complex(0.35992797441445461, 0.0)) < 1e-8);
  const Complex b1 = symbol_B(Complex(1.25, 0.6), 0.375);
  CHECK(std::abs(b1 - Complex(0.29206520825375442, -0.17202665839016093)) < 1e-8);

  // Schwarz reflection
  const Complex s(1.25, 0.7);
  CHECK(std::abs(symbol_B(std::conj(s), 0.375) - std::conj(symbol_B(s, 0.375))) < 1e-10);

  // stability under contour perturbation inside one half-integer cell
  const Complex s2(1.25, 0.4);
  const Complex c1 = symbol_B(s2, 0.3);
  const Complex c2 = symbol_B(s2, 0.45);
  CHECK(std::abs(c1 - c2) / std::abs(c1) < 1e-5);

  CHECK_THROWS_AS(symbol_B(Complex(1.25, 0.0), 2.5), ContractError);
  CHECK_THROWS_AS(symbol_B(Complex(3.0, 0.0), 0.375), ContractError);
}

TEST_CASE("functional equation") {
  const double imags[10] = {0.0, 0.3, -0.3, 0.6, -0.6, 0.9, -0.9, 1.2, -1.2, 1.5};
  for (double t : imags) CHECK(functional_equation_residual(Complex(1.25, t)) < 1e-6);
  // random admissible abscissas
  for (double re : {1.1, 1.3, 1.42}) CHECK(functional_equation_residual(Complex(re, 0.5)) < 1e-6);
  CHECK_THROWS_AS(functional_equation_residual(Complex(1.8, 0.0)), ContractError);
}

#ifndef CONDKIN_MELLIN_HPP
#define CONDKIN_MELLIN_HPP

#include <complex>

namespace condkin {

using Complex = std::complex<double>;

// Digamma psi(z) = Gamma'(z)/Gamma(z) for complex z, asymptotic series plus
// upward recurrence (reflection for Re z < 0.5).  Throws SingularEvaluation
// within 1e-8 of a pole.
Complex digamma(Complex z);

// Mellin symbol W(s) = -2 gamma_e - 2 psi(s/2) - pi cot(pi s/4) on the strip
// Re s in (-2, 4).  Throws near the poles s = 0, 4 (and the psi poles).
Complex symbol_W(Complex s);

struct SymbolPoint {
  Complex s;
  Complex W_val;
  Complex B_val;
  double beta = 0.0;
};

// B(s) via the contour integral of log(-W(rho)) along Re(rho) = beta,
// truncated where the integrand decays below 1e-14.  Requires beta in (0,2)
// and Re s in (beta, beta+1).  Asserts Re(-W) > 0 at every contour sample
// (principal log branch); a violation is reported as a branch event, never
// silently unwrapped.
Complex symbol_B(Complex s, double beta, int quad_budget = 100000);

// |B(s) + W(s-1) B(s-1)| / |B(s)| with the shifted point evaluated on its own
// contour.  Both contours are placed inside the cell (0, 1/2): the second
// bracket term of the representation has poles at half-integer rho, so the
// two-contour identity only holds when no half-integer lies between them.
// Requires Re(s) - 1 in (0.05, 0.45).
double functional_equation_residual(Complex s, int quad_budget = 100000);

} // namespace condkin

#endif

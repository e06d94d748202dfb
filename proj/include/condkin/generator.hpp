#ifndef CONDKIN_GENERATOR_HPP
#define CONDKIN_GENERATOR_HPP

#include <vector>

#include "condkin/grid.hpp"
#include "condkin/kernels.hpp"

namespace condkin {

// Dense discretization of L(f)(x) = int (f(y) - f(x)) M(x,y) dy.
//
// Assembled from the symmetric form S_ij = (1/4) W(x_i,x_j) x_i^4 x_j^4 w_i w_j
// and the balance measure mu_i = x_i^6/(4 sinh^2 x_i^2) w_i, so that
// mu_i A_ij = S_ij = S_ji holds by construction (A_ij = M(x_i,x_j) w_j
// algebraically).  Constants are annihilated exactly: applications always go
// through the difference form sum_j S_ij (f_j - f_i) / mu_i.
class GeneratorMatrix {
public:
  GeneratorMatrix() = default;

  std::size_t size() const { return n_; }
  const RadialGrid& grid() const { return grid_; }
  const std::vector<double>& balance_measure() const { return mu_; }

  double entry(std::size_t i, std::size_t j) const; // A_ij, diagonal = -row sum
  double symmetric_entry(std::size_t i, std::size_t j) const { return s_[i * n_ + j]; }

  // A f in the difference form (exact zero on constants).
  std::vector<double> apply(const std::vector<double>& f) const;

  // sum_i mu_i f_i (the conserved w6-moment in the balance measure).
  double weighted_sum(const std::vector<double>& f) const;

  // f^T diag(mu) A f = -sum_{i<j} S_ij (f_i - f_j)^2, computed over pairs.
  double quadratic_form(const std::vector<double>& f) const;

  // Dense copy of A (row-major) with the negative-row-sum diagonal.
  std::vector<double> dense() const;

  // Largest |A_ii|; cheap spectral-radius proxy for explicit stepping.
  double diagonal_bound() const;

  friend GeneratorMatrix assemble_generator(const RadialGrid& grid,
                                            const EquilibriumWeights& weights);

private:
  std::size_t n_ = 0;
  RadialGrid grid_;
  std::vector<double> s_;  // symmetric S, zero diagonal
  std::vector<double> mu_; // balance measure per node
};

// Builds the generator on `grid`.  `weights` must share the grid nodes; the
// balance measure itself is fixed by the kernels (sinh x^2 form) regardless of
// the observable convention carried by `weights`.
GeneratorMatrix assemble_generator(const RadialGrid& grid, const EquilibriumWeights& weights);

// Full generator, principal part and compact part as grid operations.
StateField apply_calL(const StateField& f, const GeneratorMatrix& gen);
StateField apply_L(const StateField& f, const RadialGrid& grid);
StateField apply_F(const StateField& f, const RadialGrid& grid);

} // namespace condkin

#endif

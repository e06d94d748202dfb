#ifndef CONDKIN_GRID_HPP
#define CONDKIN_GRID_HPP

#include <cstddef>
#include <vector>

namespace condkin {

// Graded nodes x_i = x_max (i/N)^grading with cell quadrature weights
// (cells split at midpoints, first cell starts at 0, last ends at x_max).
struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double x_max = 0.0;
  double grading = 2.0;

  std::size_t size() const { return nodes.size(); }

  static RadialGrid graded(std::size_t n, double x_max = 8.0, double grading = 2.0);
};

// Grid sample of the perturbation with the Hoelder-weight exponent used by
// the |||.|||_theta norm.
struct StateField {
  std::vector<double> values;
  double theta = 0.5;

  std::size_t size() const { return values.size(); }
  bool finite() const;
  // sup_{x<1} x^theta |f| + sup_{x>=1} |f| over the grid nodes.
  double norm_theta(const RadialGrid& grid) const;
};

} // namespace condkin

#endif

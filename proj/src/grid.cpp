#include "condkin/grid.hpp"

#include <cmath>

#include "condkin/errors.hpp"

namespace condkin {

RadialGrid RadialGrid::graded(std::size_t n, double x_max, double grading) {
  if (n < 16) throw ContractError("RadialGrid: need at least 16 nodes");
  if (!(x_max > 0.0) || !(grading > 0.0)) throw ContractError("RadialGrid: bad x_max/grading");
  RadialGrid g;
  g.x_max = x_max;
  g.grading = grading;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    g.nodes[i] = x_max * std::pow(double(i + 1) / double(n), grading);
  double lo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double hi = i + 1 < n ? 0.5 * (g.nodes[i] + g.nodes[i + 1]) : x_max;
    g.weights[i] = hi - lo;
    lo = hi;
  }
  return g;
}

bool StateField::finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

double StateField::norm_theta(const RadialGrid& grid) const {
  if (values.size() != grid.size()) throw ContractError("norm_theta: grid/state size mismatch");
  double inner = 0.0, outer = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = grid.nodes[i];
    if (x < 1.0)
      inner = std::max(inner, std::pow(x, theta) * std::abs(values[i]));
    else
      outer = std::max(outer, std::abs(values[i]));
  }
  return inner + outer;
}

} // namespace condkin

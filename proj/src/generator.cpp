#include "condkin/generator.hpp"

#include <cmath>

#include "condkin/errors.hpp"

namespace condkin {

namespace {

void check_shapes(const StateField& f, std::size_t n, const char* who) {
  if (f.values.size() != n) throw ContractError(std::string(who) + ": shape mismatch");
  if (!f.finite()) throw ContractError(std::string(who) + ": non-finite state");
}

} // namespace

GeneratorMatrix assemble_generator(const RadialGrid& grid, const EquilibriumWeights& weights) {
  const std::size_t n = grid.size();
  if (weights.nodes != grid.nodes)
    throw ContractError("assemble_generator: grid and weights do not share nodes");
  GeneratorMatrix gen;
  gen.n_ = n;
  gen.grid_ = grid;
  gen.mu_.resize(n);
  gen.s_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.nodes[i];
    const double w6 = weight_factor(x, WeightConvention::SinhX2) * std::pow(x, 6.0);
    gen.mu_[i] = w6 * grid.weights[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = grid.nodes[i];
    const double ci = xi * xi * xi * xi * grid.weights[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double xj = grid.nodes[j];
      const double cj = xj * xj * xj * xj * grid.weights[j];
      const double s = 0.25 * kernel_W(xi, xj) * ci * cj;
      gen.s_[i * n + j] = s;
      gen.s_[j * n + i] = s;
    }
  }
  return gen;
}

double GeneratorMatrix::entry(std::size_t i, std::size_t j) const {
  if (i != j) return s_[i * n_ + j] / mu_[i];
  double row = 0.0;
  for (std::size_t k = 0; k < n_; ++k) row += s_[i * n_ + k];
  return -row / mu_[i];
}

std::vector<double> GeneratorMatrix::apply(const std::vector<double>& f) const {
  if (f.size() != n_) throw ContractError("GeneratorMatrix::apply: shape mismatch");
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double fi = f[i];
    double acc = 0.0;
    const double* row = &s_[i * n_];
    for (std::size_t j = 0; j < n_; ++j) acc += row[j] * (f[j] - fi);
    out[i] = acc / mu_[i];
  }
  return out;
}

double GeneratorMatrix::weighted_sum(const std::vector<double>& f) const {
  if (f.size() != n_) throw ContractError("GeneratorMatrix::weighted_sum: shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i) acc += mu_[i] * f[i];
  return acc;
}

double GeneratorMatrix::quadratic_form(const std::vector<double>& f) const {
  if (f.size() != n_) throw ContractError("GeneratorMatrix::quadratic_form: shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = f[i] - f[j];
      acc += s_[i * n_ + j] * d * d;
    }
  return -acc;
}

std::vector<double> GeneratorMatrix::dense() const {
  std::vector<double> a(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
      if (j != i) {
        const double v = s_[i * n_ + j] / mu_[i];
        a[i * n_ + j] = v;
        row += v;
      }
    a[i * n_ + i] = -row;
  }
  return a;
}

double GeneratorMatrix::diagonal_bound() const {
  double bound = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += s_[i * n_ + j];
    bound = std::max(bound, row / mu_[i]);
  }
  return bound;
}

StateField apply_calL(const StateField& f, const GeneratorMatrix& gen) {
  check_shapes(f, gen.size(), "apply_calL");
  StateField out;
  out.theta = f.theta;
  out.values = gen.apply(f.values);
  return out;
}

StateField apply_L(const StateField& f, const RadialGrid& grid) {
  check_shapes(f, grid.size(), "apply_L");
  const std::size_t n = grid.size();
  StateField out;
  out.theta = f.theta;
  out.values.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.nodes[i], fi = f.values[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double y = grid.nodes[j];
      const double du = std::abs(x - y) * (x + y), su = x * x + y * y;
      // combined difference: never split the 1/|x^2-y^2| part off on its own
      const double k = (1.0 / du - 1.0 / su) * (y / x);
      acc += (f.values[j] - fi) * k * grid.weights[j];
    }
    out.values[i] = acc;
  }
  return out;
}

StateField apply_F(const StateField& f, const RadialGrid& grid) {
  check_shapes(f, grid.size(), "apply_F");
  const std::size_t n = grid.size();
  StateField out;
  out.theta = f.theta;
  out.values.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.nodes[i], fi = f.values[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      acc += (f.values[j] - fi) * kernel_T(x, grid.nodes[j]) * grid.weights[j];
    }
    out.values[i] = acc;
  }
  return out;
}

} // namespace condkin

#ifndef CONDKIN_ERRORS_HPP
#define CONDKIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace condkin {

// Bad arguments or mismatched objects (grid vs weights, shape mismatch).
class ContractError : public std::invalid_argument {
public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation requested at a genuine singularity (kernel diagonal, digamma pole).
class SingularEvaluation : public std::domain_error {
public:
  explicit SingularEvaluation(const std::string& what) : std::domain_error(what) {}
};

// A numerical procedure did not reach its target accuracy within budget.
// Carries the partial estimate so callers can still inspect it.
class NumericalFailure : public std::runtime_error {
public:
  NumericalFailure(const std::string& what, double partial, double achieved_tol)
      : std::runtime_error(what), partial_estimate(partial), achieved_tolerance(achieved_tol) {}
  double partial_estimate;
  double achieved_tolerance;
};

// Explicit time stepping outside its stability region.
class StepSizeError : public std::runtime_error {
public:
  explicit StepSizeError(const std::string& what) : std::runtime_error(what) {}
};

// A cross-check between two routes to the same quantity failed.
class ConsistencyError : public std::runtime_error {
public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// Query outside the available range (time horizon).
class RangeError : public std::out_of_range {
public:
  explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

} // namespace condkin

#endif

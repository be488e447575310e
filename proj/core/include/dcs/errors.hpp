#pragma once

#include <stdexcept>
#include <string>

namespace dcs {

// Initial data cannot satisfy the strict gradient dominance kappa_x > |rho_x|.
struct ConstraintInfeasible : std::runtime_error {
  explicit ConstraintInfeasible(const std::string& what) : std::runtime_error(what) {}
};

// A quotient with kappa_x (or theta_plus + theta_minus) hit a nonpositive denominator.
struct SingularDenominator : std::runtime_error {
  explicit SingularDenominator(const std::string& what) : std::runtime_error(what) {}
};

// Fixed-point sweep did not reach the gap tolerance within the iteration budget.
struct PicardDiverged : std::runtime_error {
  PicardDiverged(const std::string& what, int iterations_, double last_gap_)
      : std::runtime_error(what), iterations(iterations_), last_gap(last_gap_) {}
  int iterations;
  double last_gap;
};

// Step-size backoff drove dt below the collapse threshold.
struct StepCollapse : std::runtime_error {
  explicit StepCollapse(const std::string& what) : std::runtime_error(what) {}
};

// Lower envelope fit impossible (min kappa_x <= 0 somewhere).
struct InfeasibleFit : std::runtime_error {
  explicit InfeasibleFit(const std::string& what) : std::runtime_error(what) {}
};

// No admissible cylinder fits inside the space-time domain.
struct EmptyDomain : std::runtime_error {
  explicit EmptyDomain(const std::string& what) : std::runtime_error(what) {}
};

// Ratio undefined because the denominator norm vanishes.
struct ZeroDenominator : std::runtime_error {
  explicit ZeroDenominator(const std::string& what) : std::runtime_error(what) {}
};

// Anisotropic Holder order must be noninteger.
struct IntegerOrder : std::runtime_error {
  explicit IntegerOrder(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dcs

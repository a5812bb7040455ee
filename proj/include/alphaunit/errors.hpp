#pragma once

#include <stdexcept>
#include <string>

namespace alphaunit {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root finder was handed an interval without a sign change.
class bracket_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative method ran out of iterations.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sample carries no information about alpha (all observations equal to 1).
class degenerate_sample_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Likelihood requested at x = 1, where the density vanishes.
class boundary_likelihood_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or missing input data (files, columns, cells).
class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace alphaunit

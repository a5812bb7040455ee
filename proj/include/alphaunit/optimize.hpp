#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace alphaunit {

struct nelder_mead_options {
  double initial_step = 0.5;
  double f_rel_tol = 1e-10;  // spread of simplex values relative to max(1, |f_best|)
  double x_tol = 1e-9;       // simplex diameter in the search coordinates
  int max_iter = 20000;
};

struct minimize_result {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};

/// Derivative-free minimization with the standard Nelder-Mead moves
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Non-finite
/// objective values are treated as +infinity.
template <class F>
minimize_result nelder_mead(F&& objective, std::vector<double> start,
                            const nelder_mead_options& options = {}) {
  const std::size_t dim = start.size();
  auto eval = [&objective](const std::vector<double>& x) {
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> s(dim + 1);
    std::vector<double> v(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
      s[i] = simplex[order[i]];
      v[i] = values[order[i]];
    }
    simplex = std::move(s);
    values = std::move(v);
  };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        d = std::max(d, std::abs(simplex[i][j] - simplex[0][j]));
      }
    }
    return d;
  };
  auto along = [&](const std::vector<double>& centroid, double t) {
    std::vector<double> x(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      x[j] = centroid[j] + t * (simplex[dim][j] - centroid[j]);
    }
    return x;
  };

  int iter = 0;
  bool converged = false;
  sort_simplex();
  for (; iter < options.max_iter; ++iter) {
    const double spread = values[dim] - values[0];
    if (std::isfinite(spread) &&
        spread <= options.f_rel_tol * std::max(1.0, std::abs(values[0])) &&
        diameter() <= options.x_tol) {
      converged = true;
      break;
    }
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / dim;
    }
    const auto reflected = along(centroid, -1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < values[0]) {
      const auto expanded = along(centroid, -2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[dim] = expanded;
        values[dim] = f_expanded;
      } else {
        simplex[dim] = reflected;
        values[dim] = f_reflected;
      }
    } else if (f_reflected < values[dim - 1]) {
      simplex[dim] = reflected;
      values[dim] = f_reflected;
    } else {
      const bool outside = f_reflected < values[dim];
      const auto contracted = along(centroid, outside ? -0.5 : 0.5);
      const double f_contracted = eval(contracted);
      if (f_contracted < std::min(f_reflected, values[dim])) {
        simplex[dim] = contracted;
        values[dim] = f_contracted;
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) {
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          }
          values[i] = eval(simplex[i]);
        }
      }
    }
    sort_simplex();
  }
  return {simplex[0], values[0], iter, converged};
}

}  // namespace alphaunit

#pragma once

#include <span>
#include <vector>

namespace focalkit {

/// Finite-difference weights (Fornberg) for derivatives 0..max_order at x0
/// from values at `nodes`. Result[k][j] weights node j for derivative k.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes,
                                                  int max_order);

/// First derivative of uniformly spaced samples: 4th-order central
/// differences in the interior, 4th-order one-sided stencils at the two
/// points nearest each end. Requires at least 5 samples.
std::vector<double> grid_derivative(std::span<const double> values, double spacing);

/// n uniformly spaced points on [lo, hi], endpoints exact.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// True when consecutive spacings agree to `rel_tol` of the mean spacing.
bool is_uniform(std::span<const double> grid, double rel_tol = 1e-9);

}  // namespace focalkit

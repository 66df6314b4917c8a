#pragma once

#include <vector>

#include "focalkit/linalg.hpp"

// Truncated Taylor series. Coefficient k holds f^(k)(x0) / k!.
namespace focalkit::series {

using Series = std::vector<double>;
using VectorSeries = std::vector<VectorN>;

Series multiply(const Series& a, const Series& b, std::size_t terms);
Series add(const Series& a, const Series& b);
Series scale(const Series& a, double factor);
Series derivative(const Series& a);
Series sqrt(const Series& a);

/// Antiderivative with zero constant term; one more coefficient than `a`.
Series integrate(const Series& a);

/// Inverse function series. Requires a[0] == 0 and a[1] != 0.
Series revert(const Series& a);

/// g(inner(u)) where inner[0] == 0; result has inner.size() terms.
VectorSeries compose(const VectorSeries& g, const Series& inner);

/// Derivative values f^(k) -> coefficients f^(k)/k!, and back.
Series from_derivatives(const std::vector<double>& derivs);
VectorSeries from_derivatives(const std::vector<VectorN>& derivs);
std::vector<VectorN> to_derivatives(const VectorSeries& coeffs);
std::vector<double> to_derivatives(const Series& coeffs);

}  // namespace focalkit::series

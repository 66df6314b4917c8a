#include "focalkit/series.hpp"

#include <algorithm>
#include <cmath>

#include "focalkit/errors.hpp"

namespace focalkit::series {

Series multiply(const Series& a, const Series& b, std::size_t terms) {
  Series out(terms, 0.0);
  for (std::size_t i = 0; i < std::min(a.size(), terms); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < terms; ++j) out[i + j] += a[i] * b[j];
  return out;
}

Series add(const Series& a, const Series& b) {
  Series out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Series scale(const Series& a, double factor) {
  Series out = a;
  for (auto& c : out) c *= factor;
  return out;
}

Series derivative(const Series& a) {
  if (a.size() <= 1) return {};
  Series out(a.size() - 1);
  for (std::size_t k = 0; k + 1 < a.size(); ++k) out[k] = static_cast<double>(k + 1) * a[k + 1];
  return out;
}

Series integrate(const Series& a) {
  Series out(a.size() + 1, 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k + 1] = a[k] / static_cast<double>(k + 1);
  return out;
}

Series sqrt(const Series& a) {
  if (a.empty()) return {};
  if (!(a[0] > 0.0)) throw GeometryError(ErrorCode::bad_parameters, "series sqrt needs a positive constant term");
  Series out(a.size(), 0.0);
  out[0] = std::sqrt(a[0]);
  for (std::size_t n = 1; n < a.size(); ++n) {
    double acc = a[n];
    for (std::size_t j = 1; j < n; ++j) acc -= out[j] * out[n - j];
    out[n] = acc / (2.0 * out[0]);
  }
  return out;
}

namespace {

// f(inner(u)) for scalar f, truncated to inner.size() terms.
Series compose_scalar(const Series& f, const Series& inner) {
  const std::size_t terms = inner.size();
  Series out(terms, 0.0);
  Series power(terms, 0.0);
  power[0] = 1.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    for (std::size_t n = 0; n < terms; ++n) out[n] += f[k] * power[n];
    power = multiply(power, inner, terms);
  }
  return out;
}

}  // namespace

Series revert(const Series& a) {
  if (a.size() < 2 || a[0] != 0.0 || a[1] == 0.0)
    throw GeometryError(ErrorCode::bad_parameters, "series reversion needs a[0] = 0 and a[1] != 0");
  Series b(a.size(), 0.0);
  b[1] = 1.0 / a[1];
  for (std::size_t n = 2; n < a.size(); ++n) {
    Series trial(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n + 1));
    const Series composed = compose_scalar(a, trial);
    b[n] = -composed[n] / a[1];
  }
  return b;
}

VectorSeries compose(const VectorSeries& g, const Series& inner) {
  const std::size_t terms = inner.size();
  const auto dim = g.empty() ? 0 : g.front().size();
  VectorSeries out(terms, VectorN::Zero(dim));
  Series power(terms, 0.0);
  power[0] = 1.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (std::size_t n = 0; n < terms; ++n)
      if (power[n] != 0.0) out[n] += power[n] * g[k];
    power = multiply(power, inner, terms);
  }
  return out;
}

Series from_derivatives(const std::vector<double>& derivs) {
  Series out(derivs.size());
  double factorial = 1.0;
  for (std::size_t k = 0; k < derivs.size(); ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    out[k] = derivs[k] / factorial;
  }
  return out;
}

VectorSeries from_derivatives(const std::vector<VectorN>& derivs) {
  VectorSeries out(derivs.size());
  double factorial = 1.0;
  for (std::size_t k = 0; k < derivs.size(); ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    out[k] = derivs[k] / factorial;
  }
  return out;
}

std::vector<VectorN> to_derivatives(const VectorSeries& coeffs) {
  std::vector<VectorN> out(coeffs.size());
  double factorial = 1.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    out[k] = coeffs[k] * factorial;
  }
  return out;
}

std::vector<double> to_derivatives(const Series& coeffs) {
  std::vector<double> out(coeffs.size());
  double factorial = 1.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    out[k] = coeffs[k] * factorial;
  }
  return out;
}

}  // namespace focalkit::series

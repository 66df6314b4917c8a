#pragma once

#include <random>

#include <doctest.h>

#include "focalkit/errors.hpp"
#include "focalkit/linalg.hpp"

namespace test {

inline focalkit::VectorN random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  focalkit::VectorN v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline focalkit::VectorN vec(std::initializer_list<double> xs) {
  focalkit::VectorN v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

template <typename F>
focalkit::ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const focalkit::GeometryError& e) {
    return e.code();
  }
  FAIL("expected GeometryError");
  return focalkit::ErrorCode::parse_error;
}

}  // namespace test

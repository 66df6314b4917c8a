#include <cmath>

#include "focalkit/stencil.hpp"
#include "support.hpp"

using namespace focalkit;

TEST_CASE("fornberg reproduces the classical central stencils") {
  const std::vector<double> nodes{-1.0, 0.0, 1.0};
  const auto w = fornberg_weights(0.0, nodes, 2);
  CHECK(w[1][0] == doctest::Approx(-0.5));
  CHECK(w[1][2] == doctest::Approx(0.5));
  CHECK(w[2][0] == doctest::Approx(1.0));
  CHECK(w[2][1] == doctest::Approx(-2.0));
  CHECK(w[2][2] == doctest::Approx(1.0));
}

TEST_CASE("fornberg weights are exact on polynomials of degree < node count") {
  const std::vector<double> nodes{0.0, 0.3, 0.7, 1.2, 1.5, 2.1};
  const double x0 = 0.9;
  const auto w = fornberg_weights(x0, nodes, 4);
  // p(x) = x^5 - 2x^3 + x, p'''' = 120 x
  auto p = [](double x) { return std::pow(x, 5) - 2 * std::pow(x, 3) + x; };
  double d4 = 0.0, d1 = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    d4 += w[4][j] * p(nodes[j]);
    d1 += w[1][j] * p(nodes[j]);
  }
  CHECK(d4 == doctest::Approx(120 * x0).epsilon(1e-9));
  CHECK(d1 == doctest::Approx(5 * std::pow(x0, 4) - 6 * x0 * x0 + 1).epsilon(1e-10));
}

TEST_CASE("grid_derivative is exact for quartics and converges at 4th order") {
  const auto g = linspace(-1.0, 2.0, 31);
  std::vector<double> v;
  for (double x : g) v.push_back(x * x * x * x - x);
  const auto d = grid_derivative(v, g[1] - g[0]);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(d[i] == doctest::Approx(4 * std::pow(g[i], 3) - 1).epsilon(1e-9));

  auto err = [](std::size_t n) {
    const auto x = linspace(0.0, 2.0, n);
    std::vector<double> y;
    for (double t : x) y.push_back(std::sin(3 * t));
    const auto dy = grid_derivative(y, x[1] - x[0]);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(dy[i] - 3 * std::cos(3 * x[i])));
    return e;
  };
  const double rate = std::log2(err(101) / err(201));
  CHECK(rate > 3.7);
  CHECK_THROWS(grid_derivative(std::vector<double>{1, 2, 3, 4}, 1.0));
}

TEST_CASE("linspace and is_uniform") {
  const auto g = linspace(0.1, 0.7, 7);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 0.7);
  CHECK(is_uniform(g));
  CHECK_FALSE(is_uniform(std::vector<double>{0.0, 1.0, 3.0}));
}

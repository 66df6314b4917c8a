#include <cmath>

#include "focalkit/series.hpp"
#include "support.hpp"

using namespace focalkit;
namespace fs = focalkit::series;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

fs::Series sin_series(int terms) {
  fs::Series s(terms, 0.0);
  for (int k = 1; k < terms; k += 2) s[k] = ((k / 2) % 2 ? -1.0 : 1.0) / factorial(k);
  return s;
}

}  // namespace

TEST_CASE("multiply and sqrt invert each other") {
  const fs::Series a{4.0, 1.0, -0.5, 0.25, 2.0, 0.1};
  const auto r = fs::sqrt(a);
  const auto back = fs::multiply(r, r, a.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(back[k] == doctest::Approx(a[k]).epsilon(1e-14));
}

TEST_CASE("integrate and derivative") {
  const fs::Series a{1.0, 2.0, 3.0};
  const auto i = fs::integrate(a);
  REQUIRE(i.size() == 4);
  CHECK(i[0] == 0.0);
  CHECK(i[3] == doctest::Approx(1.0));
  const auto d = fs::derivative(i);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(d[k] == doctest::Approx(a[k]));
}

TEST_CASE("revert sin gives arcsin") {
  const int n = 10;
  const auto inv = fs::revert(sin_series(n));
  // arcsin x = x + x^3/6 + 3x^5/40 + 5x^7/112 + 35x^9/1152
  const double expected[] = {0, 1, 0, 1.0 / 6, 0, 3.0 / 40, 0, 5.0 / 112, 0, 35.0 / 1152};
  for (int k = 0; k < n; ++k) CHECK(inv[k] == doctest::Approx(expected[k]).epsilon(1e-13));
  CHECK_THROWS(fs::revert({1.0, 1.0}));
}

TEST_CASE("compose matches composition of known functions") {
  // g(u) = (e^u, u^2), inner = sin: e^{sin x} = 1 + x + x^2/2 - x^4/8 - x^5/15 ...
  const int n = 6;
  fs::VectorSeries g(n, VectorN::Zero(2));
  for (int k = 0; k < n; ++k) g[k][0] = 1.0 / factorial(k);
  g[2][1] = 1.0;
  const auto c = fs::compose(g, sin_series(n));
  const double e_sin[] = {1, 1, 0.5, 0, -1.0 / 8, -1.0 / 15};
  const double sin2[] = {0, 0, 1, 0, -1.0 / 3, 0};
  for (int k = 0; k < n; ++k) {
    CHECK(c[k][0] == doctest::Approx(e_sin[k]).epsilon(1e-13));
    CHECK(c[k][1] == doctest::Approx(sin2[k]).epsilon(1e-13));
  }
}

TEST_CASE("derivative/coefficient conversions round-trip") {
  const std::vector<double> d{1.0, -2.0, 6.0, 24.0};
  const auto c = fs::from_derivatives(d);
  CHECK(c[2] == doctest::Approx(3.0));
  CHECK(c[3] == doctest::Approx(4.0));
  const auto back = fs::to_derivatives(c);
  for (std::size_t k = 0; k < d.size(); ++k) CHECK(back[k] == doctest::Approx(d[k]));
}

#include <cmath>
#include <numbers>
#include <random>

#include "focalkit/frenet.hpp"
#include "focalkit/generators.hpp"
#include "focalkit/slant.hpp"
#include "focalkit/stencil.hpp"
#include "support.hpp"

using namespace focalkit;
using test::error_of;
using test::vec;

namespace {

std::vector<double> grid_of(const Curve& c, std::size_t n = 256) {
  return linspace(c.domain().lo, c.domain().hi, n);
}

double axis_angle(const VectorN& a, const VectorN& b) {
  const VectorN d = a - std::copysign(1.0, a.dot(b)) * b;
  return 2 * std::asin(std::min(1.0, d.norm() / 2));
}

struct Known {
  std::string name;
  Curve curve;
  int k;
  VectorN axis;
  double cos_theta;
};

std::vector<Known> known_axes() {
  const double r5 = std::sqrt(5.0);
  VectorN e5 = VectorN::Zero(5);
  e5[4] = 1.0;
  return {
      {"helix k=1", make_helix(2.0, 1.0), 1, vec({0, 0, 1}), 1 / r5},
      {"helix k=3", make_helix(2.0, 1.0), 3, vec({0, 0, 1}), 2 / r5},  // binormal z-component a / sqrt(a^2 + b^2)
      {"wcurve5 k=1", make_wcurve({1.0, 1.0}, {1.0, 2.0}, 1.0, 5), 1, e5, 1 / std::sqrt(6.0)},
  };
}

}  // namespace

TEST_CASE("estimate_axis on constant samples") {
  const std::vector<VectorN> s(10, vec({0, 0, 1}));
  const auto a = estimate_axis(s);
  CHECK((a.axis - vec({0, 0, 1})).norm() < 1e-15);
  CHECK(a.cos_theta == doctest::Approx(1.0));
  CHECK(a.deviation == 0.0);
  CHECK(a.degenerate);
}

TEST_CASE("estimate_axis on helix tangents") {
  const Curve h = make_helix(2.0, 1.0);
  std::vector<VectorN> t;
  for (double s : linspace(0.0, 6.0, 64)) t.push_back(frenet_apparatus(h, s, 3).frame[0]);
  const auto a = estimate_axis(t);
  CHECK(axis_angle(a.axis, vec({0, 0, 1})) < 1e-9);
  CHECK(a.axis[2] > 0);
  CHECK(a.cos_theta == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(a.deviation < 1e-9);
  CHECK(std::abs(a.axis.norm() - 1.0) < 1e-10);
}

TEST_CASE("estimate_axis on random directions") {
  std::mt19937_64 rng(42);
  std::vector<VectorN> s;
  for (int i = 0; i < 100; ++i) s.push_back(test::random_vector(rng, 3).normalized());
  CHECK(estimate_axis(s).deviation > 0.1);
}

TEST_CASE("estimate_axis input checks") {
  CHECK(error_of([] { estimate_axis(std::vector<VectorN>(7, vec({1, 0}))); }) == ErrorCode::bad_parameters);
  std::vector<VectorN> s(8, vec({1, 0}));
  s[3] = vec({2, 0});
  CHECK(error_of([&] { estimate_axis(s); }) == ErrorCode::bad_parameters);
  s[3] = vec({1, 0, 0});
  CHECK(error_of([&] { estimate_axis(s); }) == ErrorCode::bad_parameters);
}

TEST_CASE("slant verdicts on the helix and the Salkowski curve") {
  const Curve h = make_helix(2.0, 1.0);
  const auto profile = slant_profile(h, grid_of(h), 1e-6);
  REQUIRE(profile.size() == 3);
  CHECK(profile[0].is_slant);
  CHECK(profile[1].excluded_perpendicular);
  CHECK_FALSE(profile[1].is_slant);
  CHECK(profile[2].is_slant);
  for (int k = 1; k <= 3; ++k) {
    const auto single = is_k_slant(h, k, grid_of(h), 1e-6);
    CHECK(single.is_slant == profile[k - 1].is_slant);
    CHECK(single.deviation == doctest::Approx(profile[k - 1].deviation));
  }
  const Curve salk = make_salkowski(1.0 / 3.0);
  const auto s2 = is_k_slant(salk, 2, grid_of(salk), 1e-6);
  CHECK(s2.is_slant);
  CHECK(std::abs(s2.axis[2]) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(is_k_slant(salk, 1, grid_of(salk), 1e-6).is_slant);
  CHECK(error_of([&] { is_k_slant(h, 4, grid_of(h), 1e-6); }) == ErrorCode::bad_parameters);
}

TEST_CASE("detector recovers known axes") {
  for (const auto& [name, c, k, axis, cosine] : known_axes()) {
    CAPTURE(name);
    const auto r = is_k_slant(c, k, grid_of(c), 1e-6);
    CHECK(r.is_slant);
    CHECK(axis_angle(r.axis, axis) < 1e-6);
    CHECK(r.deviation < 1e-7);
    CHECK(r.cos_theta == doctest::Approx(cosine).epsilon(1e-9));
  }
}

TEST_CASE("random curve is not slant for any k") {
  const Curve c = make_random_trig(3, 4, 42);
  for (const auto& r : slant_profile(c, grid_of(c), 1e-4)) {
    CHECK_FALSE(r.is_slant);
    CHECK(r.deviation > 1e-2);
  }
}

TEST_CASE("coefficient residuals") {
  const Curve h = make_helix(2.0, 1.0);
  const auto r = coefficient_residuals(h, vec({0, 0, 1}), grid_of(h));
  CHECK(r.sup_norm() < 1e-6);
  REQUIRE(r.a.size() == 256);
  CHECK(r.a[10][0] == doctest::Approx(1 / std::sqrt(5.0)));
  CHECK(std::abs(r.a[10][1]) < 1e-12);

  // The P_i are the Frenet components of dU/ds, so any fixed direction
  // gives P = 0 up to differencing error, slant or not.
  std::mt19937_64 rng(9);
  for (const auto& c : {h, make_salkowski(1.0 / 3.0), make_moment_curve(4)}) {
    for (int trial = 0; trial < 3; ++trial) {
      const VectorN u = test::random_vector(rng, c.dimension()).normalized();
      CHECK(coefficient_residuals(c, u, grid_of(c)).sup_norm() < 1e-6);
    }
  }
  CHECK(error_of([&] { coefficient_residuals(h, vec({0, 1}), grid_of(h)); }) == ErrorCode::bad_parameters);
}

TEST_CASE("slant verdicts are consistent with the residual system") {
  const double tol = 1e-6;
  std::vector<std::pair<Curve, int>> cases{{make_helix(2.0, 1.0), 1},
                                           {make_helix(2.0, 1.0), 3},
                                           {make_salkowski(1.0 / 3.0), 2}};
  const Curve w5 = make_wcurve({1.0, 1.0}, {1.0, 2.0}, 1.0, 5);
  for (int k : {1, 3, 5}) cases.emplace_back(w5, k);
  for (const auto& [c, k] : cases) {
    const auto r = is_k_slant(c, k, grid_of(c), tol);
    REQUIRE(r.is_slant);
    CHECK(coefficient_residuals(c, r.axis, grid_of(c)).sup_norm() < 10 * tol);
  }
}

TEST_CASE("focal slant index map") {
  for (int m = 2; m <= 6; ++m) {
    for (int k = 1; k <= m + 1; ++k) {
      CAPTURE(m);
      CAPTURE(k);
      const int kk = focal_slant_index(k, m);
      CHECK(kk >= 1);
      CHECK(kk <= m + 1);
      CHECK(focal_slant_index(kk, m) == k);
      if (k == 1) {
        CHECK(focal_slant_case(k, m) == TheoremCase::tangent_to_last);
        CHECK(kk == m + 1);
      } else if (k == m + 1) {
        CHECK(focal_slant_case(k, m) == TheoremCase::last_to_tangent);
        CHECK(kk == 1);
      } else {
        CHECK(focal_slant_case(k, m) == TheoremCase::interior);
        CHECK(kk == m - k + 2);
      }
    }
    CHECK(error_of([&] { focal_slant_index(0, m); }) == ErrorCode::bad_parameters);
    CHECK(error_of([&] { focal_slant_index(m + 2, m); }) == ErrorCode::bad_parameters);
  }
  CHECK(std::string(to_string(TheoremCase::interior)) == "iii");
}

TEST_CASE("theorem check on every slant builtin") {
  struct Case {
    Curve curve;
    int k;
    int focal_k;
    bool boundary_note;
  };
  const Curve h = make_helix(2.0, 1.0);
  const Curve w5 = make_wcurve({1.0, 1.0}, {1.0, 2.0}, 1.0, 5);
  const std::vector<Case> cases{{h, 1, 3, false},  {h, 3, 1, false},  {make_salkowski(1.0 / 3.0), 2, 2, true},
                                {make_salkowski(0.5), 2, 2, true}, {w5, 1, 5, false}, {w5, 3, 3, false},
                                {w5, 5, 1, false}};
  for (const auto& [c, k, focal_k, note] : cases) {
    CAPTURE(k);
    const auto r = verify_focal_slant(c, k, grid_of(c));
    CHECK(r.focal_k == focal_k);
    CHECK(r.source_is_slant);
    CHECK(r.focal.is_slant);
    CHECK(r.focal.deviation < 1e-4);
    CHECK(r.axis_angle < 1e-3);
    CHECK(r.passed);
    CHECK(r.note.empty() != note);
  }
}

TEST_CASE("theorem check reports a non-slant source") {
  const Curve c = make_random_trig(3, 4, 42);
  const auto r = verify_focal_slant(c, 1, grid_of(c));
  CHECK_FALSE(r.source_is_slant);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("twisted cubic is a generalized helix") {
  // (t, t^2/2, t^3/6): |gamma'| = 1 + t^2/2 and <gamma', (1,0,1)> = 1 + t^2/2
  const Curve c = make_moment_curve(3);
  const auto r = is_k_slant(c, 1, grid_of(c), 1e-6);
  CHECK(r.is_slant);
  CHECK(axis_angle(r.axis, vec({1, 0, 1}) / std::sqrt(2.0)) < 1e-6);
  CHECK(r.cos_theta == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
  const auto v = verify_focal_slant(c, 1, grid_of(c));
  CHECK(v.focal_k == 3);
  CHECK(v.passed);
}

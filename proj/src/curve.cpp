#include "focalkit/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "focalkit/errors.hpp"
#include "focalkit/stencil.hpp"

namespace focalkit {

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::analytic: return "analytic";
    case CurveKind::sampled: return "sampled";
    case CurveKind::synthesized: return "synthesized";
  }
  return "unknown";
}

namespace {

constexpr int kProbePoints = 64;

std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double domain_slack(const Interval& d) {
  return 1e-12 * std::max({1.0, std::abs(d.lo), std::abs(d.hi)});
}

}  // namespace

Curve::Curve(int dimension, Interval domain, CurveKind kind, int max_order, JetFunction jet)
    : dimension_(dimension), domain_(domain), kind_(kind), max_order_(max_order), jet_(std::move(jet)) {
  if (dimension_ < 2) throw GeometryError(ErrorCode::bad_parameters, "curve dimension must be >= 2");
  if (!(domain_.hi > domain_.lo) || !std::isfinite(domain_.lo) || !std::isfinite(domain_.hi))
    throw GeometryError(ErrorCode::bad_parameters, "curve domain must be a finite interval with lo < hi");
  if (max_order_ < 1) throw GeometryError(ErrorCode::bad_parameters, "curve must support at least order 1");

  double extent = 1.0;
  std::vector<double> speeds;
  for (double t : linspace(domain_.lo, domain_.hi, kProbePoints)) {
    const auto d = jet_(t, 1);
    if (static_cast<int>(d.size()) != 2 || d[0].size() != dimension_ || !d[0].allFinite() || !d[1].allFinite())
      throw GeometryError(ErrorCode::regularity_failure, "evaluator returned malformed or non-finite values");
    extent = std::max(extent, d[0].cwiseAbs().maxCoeff());
    speeds.push_back(d[1].norm());
  }
  const double floor = 1e-10 * extent / domain_.length();
  for (std::size_t i = 0; i < speeds.size(); ++i)
    if (!(speeds[i] > floor))
      throw GeometryError(ErrorCode::regularity_failure,
                          "speed vanishes on the probe grid (|gamma'| = " + std::to_string(speeds[i]) + ")",
                          static_cast<int>(i));
}

std::vector<VectorN> Curve::derivatives(double t, int order) const {
  if (!domain_.contains(t, domain_slack(domain_)))
    throw GeometryError(ErrorCode::out_of_domain, "parameter " + std::to_string(t) + " outside [" +
                                                      std::to_string(domain_.lo) + ", " +
                                                      std::to_string(domain_.hi) + "]");
  if (order < 0 || order > max_order_)
    throw GeometryError(ErrorCode::order_unsupported,
                        "order " + std::to_string(order) + " exceeds max_order " + std::to_string(max_order_));
  return jet_(std::clamp(t, domain_.lo, domain_.hi), order);
}

std::vector<VectorN> eval_derivatives(const Curve& c, double t, int order) { return c.derivatives(t, order); }

double arc_length(const Curve& c, double t0, double t1) {
  const auto& dom = c.domain();
  const double slack = domain_slack(dom);
  if (!dom.contains(t0, slack) || !dom.contains(t1, slack))
    throw GeometryError(ErrorCode::out_of_domain, "arc_length bounds outside the curve domain");
  if (t0 == t1) return 0.0;
  auto speed = [&](double t) { return c.derivatives(t, 1)[1].norm(); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  // Boost's tolerance is relative; aim at 1e-11 absolute from a coarse
  // estimate but never below the rounding floor.
  const double rough = std::abs(GK::integrate(speed, t0, t1, 0, 0.0));
  const double rel = std::clamp(1e-11 / std::max(rough, 1e-300), 1e-14, 1e-6);
  double error = 0.0;
  const double length = GK::integrate(speed, t0, t1, 15, rel, &error);
  if (!std::isfinite(length) || error > 1e-10)
    throw GeometryError(ErrorCode::quadrature_failure,
                        "arc length quadrature error estimate " + fmt_g(error) + " exceeds 1e-10");
  return length;
}

Curve ensure_unit_speed(const Curve& c, double tol) {
  for (double t : linspace(c.domain().lo, c.domain().hi, kProbePoints))
    if (std::abs(c.speed(t) - 1.0) > tol) return reparam_to_arclength(c);
  return c;
}

}  // namespace focalkit

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "focalkit/linalg.hpp"

namespace focalkit {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double t, double slack = 0.0) const { return t >= lo - slack && t <= hi + slack; }
};

enum class CurveKind { analytic, sampled, synthesized };

const char* to_string(CurveKind kind);

/// Returns [gamma(t), gamma'(t), ..., gamma^(order)(t)].
using JetFunction = std::function<std::vector<VectorN>(double t, int order)>;

/// Regular parametrized curve in E^{m+1} with a derivative oracle.
/// Immutable; copies share the evaluator.
class Curve {
 public:
  /// Checks regularity (|gamma'| > 0) on a 64-point probe grid and throws
  /// regularity_failure otherwise.
  Curve(int dimension, Interval domain, CurveKind kind, int max_order, JetFunction jet);

  int dimension() const { return dimension_; }
  /// m, the number of Frenet curvatures of a generic curve.
  int codimension() const { return dimension_ - 1; }
  const Interval& domain() const { return domain_; }
  CurveKind kind() const { return kind_; }
  int max_order() const { return max_order_; }

  /// Throws out_of_domain / order_unsupported.
  std::vector<VectorN> derivatives(double t, int order) const;
  VectorN position(double t) const { return derivatives(t, 0).front(); }
  double speed(double t) const { return derivatives(t, 1)[1].norm(); }

 private:
  int dimension_;
  Interval domain_;
  CurveKind kind_;
  int max_order_;
  JetFunction jet_;
};

std::vector<VectorN> eval_derivatives(const Curve& c, double t, int order);

/// Length of the curve over [t0, t1] by adaptive Gauss-Kronrod quadrature
/// (absolute tolerance 1e-10).
double arc_length(const Curve& c, double t0, double t1);

/// Unit-speed reparametrization on [0, L]. The inverse parameter is found by
/// safeguarded Newton iteration on the cumulative length, and derivatives are
/// rebuilt by composing Taylor jets (chain rule to the full order).
Curve reparam_to_arclength(const Curve& c);

/// Returns `c` unchanged when it is already unit speed on a probe grid.
Curve ensure_unit_speed(const Curve& c, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Sampled curves

struct SampledOptions {
  // Polynomial accuracy order of the stencils: an order-k derivative uses
  // k + accuracy nodes (one more at a node when that centres the stencil).
  int accuracy = 8;
};

/// Curve through (t_j, x_j). Derivatives come from finite-difference
/// stencils on the nearest samples (Fornberg weights). `domain` defaults to
/// [t_0, t_{n-1}] and may be narrower, leaving the outer samples as stencil
/// support.
Curve make_sampled_curve(std::vector<double> params, std::vector<VectorN> points,
                         SampledOptions options = {}, std::optional<Interval> domain = std::nullopt);

// ---------------------------------------------------------------------------
// Curvature profiles and synthesis

/// One curvature function s -> kappa(s).
class CurvatureFunction {
 public:
  static CurvatureFunction constant(double value);
  /// sum_k coeffs[k] * s^k
  static CurvatureFunction polynomial(std::vector<double> coeffs);
  /// Clamped cubic spline through (s_j, kappa_j); end slopes from one-sided
  /// differences.
  static CurvatureFunction sampled(std::vector<double> s, std::vector<double> values);

  double value(double s) const { return derivatives(s, 0).front(); }
  /// [kappa(s), kappa'(s), ..., kappa^(order)(s)]
  std::vector<double> derivatives(double s, int order) const;

  struct Impl;

 private:
  explicit CurvatureFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct CurvatureProfile {
  std::vector<CurvatureFunction> functions;  // kappa_1 .. kappa_m
  Interval domain;

  int codimension() const { return static_cast<int>(functions.size()); }
};

/// Integrates gamma' = t, frame' = K(s) frame (unit speed) with classical RK4
/// at a fixed step, re-orthonormalizing the frame every step. `step <= 0`
/// selects (domain length) / 4096. Initial frame rows: t, n_1, ..., n_m.
Curve synthesize_from_curvatures(const CurvatureProfile& profile, int dimension,
                                 const VectorN& initial_point,
                                 const std::vector<VectorN>& initial_frame, double step = 0.0);

}  // namespace focalkit

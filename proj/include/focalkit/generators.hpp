#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "focalkit/curve.hpp"

// Builtin analytic curve families with closed-form derivatives of any order.
namespace focalkit {

constexpr int kAnalyticMaxOrder = 16;

/// (r cos t, r sin t), default domain [0, 2 pi].
Curve make_circle(double r, std::optional<Interval> domain = std::nullopt);

/// (a cos t, a sin t, b t), default domain [0, 2 pi].
Curve make_helix(double a, double b, std::optional<Interval> domain = std::nullopt);

/// Sum of planar rotations (r_j cos w_j t, r_j sin w_j t) in coordinate pairs,
/// plus pitch * t in the last coordinate when `dim` is odd. Default domain
/// [0, 2 pi].
Curve make_wcurve(const std::vector<double>& radii, const std::vector<double>& frequencies, double pitch,
                  int dim, std::optional<Interval> domain = std::nullopt);

/// Salkowski curve (constant curvature, principal normal at a constant angle
/// with e_3). `m` is the family parameter, n = m / sqrt(1 + m^2); the speed is
/// |cos(n t)| / sqrt(1 + m^2), so the default domain is
/// [0.1, 0.7] * pi / (2n). The constructor re-checks the slant property.
Curve make_salkowski(double m, std::optional<Interval> domain = std::nullopt);

/// (a cos t, b sin t), default domain [0.2, 1.3] (between the vertices).
Curve make_ellipse(double a, double b, std::optional<Interval> domain = std::nullopt);

/// (t, t^2/2!, ..., t^dim/dim!), generic everywhere; default domain [0.2, 1.5].
Curve make_moment_curve(int dim, std::optional<Interval> domain = std::nullopt);

/// point + t * direction, default domain [0, 1].
Curve make_line(const VectorN& point, const VectorN& direction, std::optional<Interval> domain = std::nullopt);

/// Random trigonometric curve: each coordinate is a sum of `harmonics`
/// cos/sin terms with seeded normal coefficients scaled by 1/j. Default domain
/// [0, 2 pi].
Curve make_random_trig(int dim, int harmonics, std::uint64_t seed,
                       std::optional<Interval> domain = std::nullopt);

}  // namespace focalkit

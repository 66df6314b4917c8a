#include "focalkit/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "focalkit/errors.hpp"
#include "focalkit/stencil.hpp"

namespace focalkit {

namespace {

constexpr double kPi = std::numbers::pi;

// d^k/dt^k of r (cos wt, sin wt) = r w^k (cos(wt + k pi/2), sin(wt + k pi/2)).
void add_rotation(std::vector<VectorN>& out, Eigen::Index row, double r, double w, double t) {
  double scale = r;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double phase = w * t + static_cast<double>(k) * kPi / 2.0;
    out[k][row] += scale * std::cos(phase);
    out[k][row + 1] += scale * std::sin(phase);
    scale *= w;
  }
}

std::vector<VectorN> zeros(int dim, int order) {
  return std::vector<VectorN>(static_cast<std::size_t>(order) + 1, VectorN::Zero(dim));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw GeometryError(ErrorCode::bad_parameters, what);
}

// d^k/dt^k of A cos(wt) + B sin(wt)
double trig_derivative(double a, double b, double w, double t, int k) {
  const double phase = w * t + k * kPi / 2.0;
  return std::pow(w, k) * (a * std::cos(phase) + b * std::sin(phase));
}

}  // namespace

Curve make_circle(double r, std::optional<Interval> domain) {
  require(r > 0.0 && std::isfinite(r), "circle radius must be positive");
  return Curve(2, domain.value_or(Interval{0.0, 2.0 * kPi}), CurveKind::analytic, kAnalyticMaxOrder,
               [r](double t, int order) {
                 auto out = zeros(2, order);
                 add_rotation(out, 0, r, 1.0, t);
                 return out;
               });
}

Curve make_helix(double a, double b, std::optional<Interval> domain) {
  require(a > 0.0 && std::isfinite(a) && std::isfinite(b), "helix needs a > 0 and finite b");
  return Curve(3, domain.value_or(Interval{0.0, 2.0 * kPi}), CurveKind::analytic, kAnalyticMaxOrder,
               [a, b](double t, int order) {
                 auto out = zeros(3, order);
                 add_rotation(out, 0, a, 1.0, t);
                 out[0][2] = b * t;
                 if (order >= 1) out[1][2] = b;
                 return out;
               });
}

Curve make_wcurve(const std::vector<double>& radii, const std::vector<double>& frequencies, double pitch, int dim,
                  std::optional<Interval> domain) {
  require(dim >= 2, "W-curve dimension must be >= 2");
  const auto pairs = static_cast<std::size_t>(dim / 2);
  require(radii.size() == pairs && frequencies.size() == pairs,
          "W-curve in dimension " + std::to_string(dim) + " needs " + std::to_string(pairs) +
              " radii and frequencies");
  for (std::size_t j = 0; j < pairs; ++j) {
    require(radii[j] > 0.0 && frequencies[j] > 0.0, "W-curve radii and frequencies must be positive");
    for (std::size_t i = 0; i < j; ++i)
      require(frequencies[i] != frequencies[j], "W-curve frequencies must be pairwise distinct");
  }
  require(std::isfinite(pitch), "W-curve pitch must be finite");
  const bool odd = dim % 2 == 1;
  return Curve(dim, domain.value_or(Interval{0.0, 2.0 * kPi}), CurveKind::analytic, kAnalyticMaxOrder,
               [radii, frequencies, pitch, dim, odd](double t, int order) {
                 auto out = zeros(dim, order);
                 for (std::size_t j = 0; j < radii.size(); ++j)
                   add_rotation(out, static_cast<Eigen::Index>(2 * j), radii[j], frequencies[j], t);
                 if (odd) {
                   out[0][dim - 1] = pitch * t;
                   if (order >= 1) out[1][dim - 1] = pitch;
                 }
                 return out;
               });
}

Curve make_salkowski(double m, std::optional<Interval> domain) {
  require(std::isfinite(m) && m != 0.0, "Salkowski parameter must be non-zero");
  const double n = m / std::sqrt(1.0 + m * m);
  require(std::abs(std::abs(n) - 0.5) > 1e-9, "Salkowski parameter gives n = 1/2");
  const double norm = 1.0 / std::sqrt(1.0 + m * m);
  const double p = (1.0 - n) / (4.0 * (1.0 + 2.0 * n));
  const double q = (1.0 + n) / (4.0 * (1.0 - 2.0 * n));
  const double w1 = 1.0 + 2.0 * n;
  const double w2 = 1.0 - 2.0 * n;
  const double z = 1.0 / (4.0 * m);
  const double quarter = kPi / (2.0 * std::abs(n));
  const Interval dom = domain.value_or(Interval{0.1 * quarter, 0.7 * quarter});
  require(std::abs(dom.lo) < quarter && std::abs(dom.hi) < quarter,
          "Salkowski domain must stay inside |t| < pi / (2n) where the speed is positive");

  Curve curve(3, dom, CurveKind::analytic, kAnalyticMaxOrder, [=](double t, int order) {
    auto out = zeros(3, order);
    for (int k = 0; k <= order; ++k) {
      auto& v = out[static_cast<std::size_t>(k)];
      // x = -p sin(w1 t) - q sin(w2 t) - sin(t)/2 ; y = p cos(w1 t) + q cos(w2 t) + cos(t)/2
      v[0] = norm * (trig_derivative(0.0, -p, w1, t, k) + trig_derivative(0.0, -q, w2, t, k) +
                     trig_derivative(0.0, -0.5, 1.0, t, k));
      v[1] = norm * (trig_derivative(p, 0.0, w1, t, k) + trig_derivative(q, 0.0, w2, t, k) +
                     trig_derivative(0.5, 0.0, 1.0, t, k));
      v[2] = norm * trig_derivative(z, 0.0, 2.0 * n, t, k);
    }
    return out;
  });

  // Self-check of the closed form: constant curvature and <e_3, n_1> constant.
  double kmin = 1e300, kmax = -1e300, cmin = 1e300, cmax = -1e300;
  for (double t : linspace(dom.lo, dom.hi, 33)) {
    const auto d = curve.derivatives(t, 2);
    const double v = d[1].norm();
    const VectorN normal = d[2] - d[2].dot(d[1]) / (v * v) * d[1];
    const double kappa = normal.norm() / (v * v);
    const double c = normal.normalized()[2];
    kmin = std::min(kmin, kappa);
    kmax = std::max(kmax, kappa);
    cmin = std::min(cmin, c);
    cmax = std::max(cmax, c);
  }
  if (kmax - kmin > 1e-6 || cmax - cmin > 1e-6)
    throw GeometryError(ErrorCode::bad_parameters, "Salkowski closed form failed its slant self-check");
  return curve;
}

Curve make_ellipse(double a, double b, std::optional<Interval> domain) {
  require(a > 0.0 && b > 0.0, "ellipse semi-axes must be positive");
  return Curve(2, domain.value_or(Interval{0.2, 1.3}), CurveKind::analytic, kAnalyticMaxOrder,
               [a, b](double t, int order) {
                 auto out = zeros(2, order);
                 for (int k = 0; k <= order; ++k) {
                   out[static_cast<std::size_t>(k)][0] = trig_derivative(a, 0.0, 1.0, t, k);
                   out[static_cast<std::size_t>(k)][1] = trig_derivative(0.0, b, 1.0, t, k);
                 }
                 return out;
               });
}

Curve make_moment_curve(int dim, std::optional<Interval> domain) {
  require(dim >= 2, "moment curve dimension must be >= 2");
  return Curve(dim, domain.value_or(Interval{0.2, 1.5}), CurveKind::analytic, kAnalyticMaxOrder,
               [dim](double t, int order) {
                 auto out = zeros(dim, order);
                 // coordinate i (1-based power p = i + 1): t^p / p!, k-th derivative t^(p-k) / (p-k)!
                 for (int i = 0; i < dim; ++i) {
                   const int p = i + 1;
                   for (int k = 0; k <= std::min(order, p); ++k) {
                     double term = 1.0;
                     for (int j = 1; j <= p - k; ++j) term *= t / j;
                     out[static_cast<std::size_t>(k)][i] = term;
                   }
                 }
                 return out;
               });
}

Curve make_line(const VectorN& point, const VectorN& direction, std::optional<Interval> domain) {
  require(point.size() == direction.size() && point.size() >= 2, "line point/direction dimension mismatch");
  require(direction.norm() > 0.0, "line direction must be non-zero");
  return Curve(static_cast<int>(point.size()), domain.value_or(Interval{0.0, 1.0}), CurveKind::analytic,
               kAnalyticMaxOrder, [point, direction](double t, int order) {
                 auto out = zeros(static_cast<int>(point.size()), order);
                 out[0] = point + t * direction;
                 if (order >= 1) out[1] = direction;
                 return out;
               });
}

Curve make_random_trig(int dim, int harmonics, std::uint64_t seed, std::optional<Interval> domain) {
  require(dim >= 2 && harmonics >= 1, "random trig curve needs dim >= 2 and harmonics >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // coeffs[i][j] = (A, B) for coordinate i, frequency j + 1
  std::vector<std::vector<std::pair<double, double>>> coeffs(static_cast<std::size_t>(dim));
  for (auto& row : coeffs)
    for (int j = 1; j <= harmonics; ++j) {
      const double a = normal(rng) / j;
      const double b = normal(rng) / j;
      row.emplace_back(a, b);
    }
  return Curve(dim, domain.value_or(Interval{0.0, 2.0 * kPi}), CurveKind::analytic, kAnalyticMaxOrder,
               [coeffs, dim](double t, int order) {
                 auto out = zeros(dim, order);
                 for (int i = 0; i < dim; ++i)
                   for (std::size_t j = 0; j < coeffs[static_cast<std::size_t>(i)].size(); ++j) {
                     const auto [a, b] = coeffs[static_cast<std::size_t>(i)][j];
                     for (int k = 0; k <= order; ++k)
                       out[static_cast<std::size_t>(k)][i] +=
                           trig_derivative(a, b, static_cast<double>(j + 1), t, k);
                   }
                 return out;
               });
}

}  // namespace focalkit

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "focalkit/curve.hpp"
#include "focalkit/errors.hpp"
#include "focalkit/series.hpp"
#include "focalkit/stencil.hpp"

namespace focalkit {

// ---------------------------------------------------------------------------
// CurvatureFunction

struct CurvatureFunction::Impl {
  virtual ~Impl() = default;
  virtual std::vector<double> derivatives(double s, int order) const = 0;
};

namespace {

struct PolynomialImpl final : CurvatureFunction::Impl {
  std::vector<double> coeffs;

  std::vector<double> derivatives(double s, int order) const override {
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    std::vector<double> c = coeffs;
    for (int k = 0; k <= order && !c.empty(); ++k) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
      out[static_cast<std::size_t>(k)] = acc;
      for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<double>(i);
      c.pop_back();
    }
    return out;
  }
};

// Clamped cubic spline; third derivative is piecewise constant, higher ones vanish.
struct SplineImpl final : CurvatureFunction::Impl {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> m;  // second derivatives at the knots

  SplineImpl(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
    const std::size_t n = x.size();
    const auto slope_at = [&](std::size_t from_front) {
      const std::size_t count = std::min<std::size_t>(n, 4);
      std::vector<double> nodes(count), vals(count);
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = from_front ? i : n - 1 - i;
        nodes[i] = x[j];
        vals[i] = y[j];
      }
      const auto w = fornberg_weights(nodes[0], nodes, 1);
      double d = 0.0;
      for (std::size_t i = 0; i < count; ++i) d += w[1][i] * vals[i];
      return d;
    };
    const double d0 = slope_at(1);
    const double dn = slope_at(0);

    std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
    const double h0 = x[1] - x[0];
    diag[0] = h0 / 3.0;
    upper[0] = h0 / 6.0;
    rhs[0] = (y[1] - y[0]) / h0 - d0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hl = x[i] - x[i - 1];
      const double hr = x[i + 1] - x[i];
      lower[i] = hl / 6.0;
      diag[i] = (hl + hr) / 3.0;
      upper[i] = hr / 6.0;
      rhs[i] = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl;
    }
    const double hn = x[n - 1] - x[n - 2];
    lower[n - 1] = hn / 6.0;
    diag[n - 1] = hn / 3.0;
    rhs[n - 1] = dn - (y[n - 1] - y[n - 2]) / hn;

    for (std::size_t i = 1; i < n; ++i) {
      const double f = lower[i] / diag[i - 1];
      diag[i] -= f * upper[i - 1];
      rhs[i] -= f * rhs[i - 1];
    }
    m.assign(n, 0.0);
    m[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
  }

  std::vector<double> derivatives(double s, int order) const override {
    s = std::clamp(s, x.front(), x.back());
    auto it = std::upper_bound(x.begin(), x.end(), s);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(std::distance(x.begin(), it) - 1, 0));
    i = std::min(i, x.size() - 2);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - s) / h;
    const double b = (s - x[i]) / h;
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    out[0] = a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
    if (order >= 1)
      out[1] = (y[i + 1] - y[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m[i] + (3.0 * b * b - 1.0) / 6.0 * h * m[i + 1];
    if (order >= 2) out[2] = a * m[i] + b * m[i + 1];
    if (order >= 3) out[3] = (m[i + 1] - m[i]) / h;
    return out;
  }
};

}  // namespace

CurvatureFunction CurvatureFunction::constant(double value) { return polynomial({value}); }

CurvatureFunction CurvatureFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  for (double c : coeffs)
    if (!std::isfinite(c)) throw GeometryError(ErrorCode::invalid_profile, "non-finite polynomial coefficient");
  auto impl = std::make_shared<PolynomialImpl>();
  impl->coeffs = std::move(coeffs);
  return CurvatureFunction(std::move(impl));
}

CurvatureFunction CurvatureFunction::sampled(std::vector<double> s, std::vector<double> values) {
  if (s.size() != values.size() || s.size() < 2)
    throw GeometryError(ErrorCode::invalid_profile, "sampled curvature needs >= 2 matching (s, kappa) pairs");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1])) throw GeometryError(ErrorCode::invalid_profile, "curvature samples must increase in s");
  for (double v : values)
    if (!std::isfinite(v)) throw GeometryError(ErrorCode::invalid_profile, "non-finite curvature sample");
  return CurvatureFunction(std::make_shared<SplineImpl>(std::move(s), std::move(values)));
}

std::vector<double> CurvatureFunction::derivatives(double s, int order) const {
  return impl_->derivatives(s, order);
}

// ---------------------------------------------------------------------------
// Frenet ODE integration

namespace {

// Rows of `frame` are t, n_1, ..., n_m; returns K(s) * frame.
MatrixN frenet_rhs(const std::vector<double>& kappa, const MatrixN& frame) {
  const Eigen::Index rows = frame.rows();
  MatrixN out = MatrixN::Zero(rows, frame.cols());
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (i + 1 < rows) out.row(i) += kappa[static_cast<std::size_t>(i)] * frame.row(i + 1);
    if (i > 0) out.row(i) -= kappa[static_cast<std::size_t>(i - 1)] * frame.row(i - 1);
  }
  return out;
}

void orthonormalize_rows(MatrixN& frame) {
  for (Eigen::Index a = 0; a < frame.rows(); ++a) {
    for (Eigen::Index i = 0; i < a; ++i) frame.row(a) -= frame.row(a).dot(frame.row(i)) * frame.row(i);
    frame.row(a).normalize();
  }
}

double row_orthonormality_error(const MatrixN& frame) {
  return (frame * frame.transpose() - MatrixN::Identity(frame.rows(), frame.rows())).cwiseAbs().maxCoeff();
}

struct Trajectory {
  CurvatureProfile profile;
  double lo;
  double h;
  std::vector<VectorN> x;
  std::vector<MatrixN> frame;
  std::vector<MatrixN> frame_rate;

  std::vector<double> kappa_at(double s) const {
    std::vector<double> k;
    for (const auto& f : profile.functions) k.push_back(f.value(s));
    return k;
  }

  std::vector<VectorN> jet(double s, int order) const {
    const auto steps = static_cast<std::ptrdiff_t>(x.size()) - 1;
    auto j = static_cast<std::ptrdiff_t>(std::floor((s - lo) / h));
    j = std::clamp<std::ptrdiff_t>(j, 0, steps - 1);
    const auto ju = static_cast<std::size_t>(j);
    const double th = std::clamp((s - (lo + h * static_cast<double>(j))) / h, 0.0, 1.0);
    const double h00 = (2.0 * th - 3.0) * th * th + 1.0;
    const double h10 = ((th - 2.0) * th + 1.0) * th;
    const double h01 = (3.0 - 2.0 * th) * th * th;
    const double h11 = (th - 1.0) * th * th;

    std::vector<VectorN> out;
    out.push_back(h00 * x[ju] + h10 * h * VectorN(frame[ju].row(0).transpose()) + h01 * x[ju + 1] +
                  h11 * h * VectorN(frame[ju + 1].row(0).transpose()));
    if (order == 0) return out;

    MatrixN e = h00 * frame[ju] + h10 * h * frame_rate[ju] + h01 * frame[ju + 1] + h11 * h * frame_rate[ju + 1];
    orthonormalize_rows(e);

    // gamma^(k) = sum_j a_j(s) V_j; a_j carried as Taylor series so the
    // derivative of each coefficient is available at the next order.
    const int m = profile.codimension();
    const auto terms = static_cast<std::size_t>(order);
    std::vector<series::Series> kappa;
    for (const auto& f : profile.functions) {
      auto ks = series::from_derivatives(f.derivatives(s, order - 1));
      ks.resize(terms, 0.0);
      kappa.push_back(std::move(ks));
    }
    std::vector<series::Series> a(static_cast<std::size_t>(m) + 1, series::Series(terms, 0.0));
    a[0][0] = 1.0;
    for (int k = 1; k <= order; ++k) {
      VectorN d = VectorN::Zero(e.cols());
      for (int i = 0; i <= m; ++i) d += a[static_cast<std::size_t>(i)][0] * e.row(i).transpose();
      out.push_back(std::move(d));
      if (k == order) break;
      const std::size_t len = a[0].size() - 1;
      std::vector<series::Series> next(static_cast<std::size_t>(m) + 1, series::Series(len, 0.0));
      for (int i = 0; i <= m; ++i) {
        const auto& ai = a[static_cast<std::size_t>(i)];
        next[static_cast<std::size_t>(i)] = series::add(next[static_cast<std::size_t>(i)], series::derivative(ai));
        if (i < m) {
          const auto up = series::multiply(ai, kappa[static_cast<std::size_t>(i)], len);
          next[static_cast<std::size_t>(i) + 1] = series::add(next[static_cast<std::size_t>(i) + 1], up);
        }
        if (i > 0) {
          const auto down = series::multiply(ai, kappa[static_cast<std::size_t>(i) - 1], len);
          next[static_cast<std::size_t>(i) - 1] =
              series::add(next[static_cast<std::size_t>(i) - 1], series::scale(down, -1.0));
        }
      }
      a = std::move(next);
    }
    return out;
  }
};

}  // namespace

Curve synthesize_from_curvatures(const CurvatureProfile& profile, int dimension, const VectorN& initial_point,
                                 const std::vector<VectorN>& initial_frame, double step) {
  const int m = profile.codimension();
  if (m < 1 || dimension != m + 1)
    throw GeometryError(ErrorCode::invalid_profile,
                        "profile has " + std::to_string(m) + " curvatures; dimension must be m + 1");
  if (initial_point.size() != dimension || !initial_point.allFinite())
    throw GeometryError(ErrorCode::bad_parameters, "initial point has the wrong dimension");
  if (static_cast<int>(initial_frame.size()) != dimension)
    throw GeometryError(ErrorCode::non_orthonormal_frame, "initial frame must hold dim vectors");
  for (const auto& v : initial_frame)
    if (v.size() != dimension) throw GeometryError(ErrorCode::non_orthonormal_frame, "frame vector dimension");
  if (orthonormality_error(initial_frame) > 1e-10)
    throw GeometryError(ErrorCode::non_orthonormal_frame, "initial frame is not orthonormal within 1e-10");
  const double length = profile.domain.length();
  if (!(length > 0.0)) throw GeometryError(ErrorCode::invalid_profile, "profile domain is empty");

  const auto steps = static_cast<std::size_t>(
      step > 0.0 ? std::max(1.0, std::ceil(length / step - 1e-9)) : 4096.0);
  auto traj = std::make_shared<Trajectory>();
  traj->profile = profile;
  traj->lo = profile.domain.lo;
  traj->h = length / static_cast<double>(steps);
  const double h = traj->h;

  bool last_nonzero = false;
  for (std::size_t j = 0; j <= steps; ++j) {
    const auto k = traj->kappa_at(traj->lo + h * static_cast<double>(j));
    for (int i = 0; i + 1 < m; ++i)
      if (!(k[static_cast<std::size_t>(i)] > 0.0))
        throw GeometryError(ErrorCode::invalid_profile,
                            "kappa_" + std::to_string(i + 1) + " must be positive on the domain",
                            static_cast<int>(j));
    if (!std::isfinite(k.back())) throw GeometryError(ErrorCode::invalid_profile, "non-finite curvature");
    last_nonzero = last_nonzero || k.back() != 0.0;
  }
  if (!last_nonzero)
    throw GeometryError(ErrorCode::invalid_profile,
                        "kappa_m vanishes identically; the curve would not have full osculating order");

  MatrixN e(dimension, dimension);
  for (int i = 0; i < dimension; ++i) e.row(i) = initial_frame[static_cast<std::size_t>(i)].transpose();
  VectorN x = initial_point;

  traj->x.reserve(steps + 1);
  traj->frame.reserve(steps + 1);
  traj->frame_rate.reserve(steps + 1);
  auto record = [&](double s) {
    traj->x.push_back(x);
    traj->frame.push_back(e);
    traj->frame_rate.push_back(frenet_rhs(traj->kappa_at(s), e));
  };
  record(traj->lo);
  for (std::size_t j = 0; j < steps; ++j) {
    const double s = traj->lo + h * static_cast<double>(j);
    const auto k1m = traj->kappa_at(s);
    const auto k2m = traj->kappa_at(s + 0.5 * h);
    const auto k4m = traj->kappa_at(s + h);

    const VectorN x1 = e.row(0).transpose();
    const MatrixN e1 = frenet_rhs(k1m, e);
    const MatrixN ea = e + 0.5 * h * e1;
    const VectorN x2 = ea.row(0).transpose();
    const MatrixN e2 = frenet_rhs(k2m, ea);
    const MatrixN eb = e + 0.5 * h * e2;
    const VectorN x3 = eb.row(0).transpose();
    const MatrixN e3 = frenet_rhs(k2m, eb);
    const MatrixN ec = e + h * e3;
    const VectorN x4 = ec.row(0).transpose();
    const MatrixN e4 = frenet_rhs(k4m, ec);

    x += (h / 6.0) * (x1 + 2.0 * x2 + 2.0 * x3 + x4);
    e += (h / 6.0) * (e1 + 2.0 * e2 + 2.0 * e3 + e4);
    const double drift = row_orthonormality_error(e);
    if (drift > 1e-10)
      throw GeometryError(ErrorCode::non_orthonormal_frame,
                          "frame drift " + std::to_string(drift) + " in one step; reduce the step",
                          static_cast<int>(j));
    orthonormalize_rows(e);
    record(s + h);
  }

  return Curve(dimension, profile.domain, CurveKind::synthesized, m + 2,
               [traj](double s, int order) { return traj->jet(s, order); });
}

}  // namespace focalkit

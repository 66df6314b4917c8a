#include "focalkit/slant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "focalkit/errors.hpp"
#include "focalkit/focal.hpp"
#include "focalkit/frenet.hpp"
#include "focalkit/stencil.hpp"

namespace focalkit {

namespace {

constexpr double kNullspaceTolerance = 1e-12;

SlantReport report_from_samples(int k, std::span<const VectorN> samples, double tol) {
  const auto est = estimate_axis(samples);
  SlantReport r;
  r.k = k;
  r.axis = est.axis;
  r.cos_theta = est.cos_theta;
  r.deviation = est.deviation;
  r.degenerate = est.degenerate;
  r.excluded_perpendicular = std::abs(est.cos_theta) <= kPerpendicularGuard;
  r.is_slant = est.deviation < tol && !r.excluded_perpendicular;
  return r;
}

std::vector<FrenetData> aligned_frames(const Curve& c, std::span<const double> grid, Execution exec) {
  auto rows = frenet_along(c, grid, c.dimension(), exec);
  align_frames(rows);
  return rows;
}

}  // namespace

AxisEstimate estimate_axis(std::span<const VectorN> samples) {
  if (samples.size() < 8) throw GeometryError(ErrorCode::bad_parameters, "axis estimation needs >= 8 samples");
  const auto dim = samples.front().size();
  VectorN mean = VectorN::Zero(dim);
  for (const auto& v : samples) {
    if (v.size() != dim) throw GeometryError(ErrorCode::bad_parameters, "samples of mixed dimension");
    if (std::abs(v.norm() - 1.0) > 1e-8) throw GeometryError(ErrorCode::bad_parameters, "samples must be unit");
    mean += v;
  }
  mean /= static_cast<double>(samples.size());
  MatrixN cov = MatrixN::Zero(dim, dim);
  for (const auto& v : samples) {
    const VectorN d = v - mean;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(samples.size());

  const auto eig = jacobi_eigen(SymMatrix(cov));
  Eigen::Index null_dim = 1;
  while (null_dim < dim && eig.values[null_dim] - eig.values[0] <= kNullspaceTolerance) ++null_dim;

  AxisEstimate out;
  out.degenerate = null_dim > 1;
  if (out.degenerate) {
    const MatrixN basis = eig.vectors.leftCols(null_dim);
    const VectorN proj = basis * (basis.transpose() * mean);
    out.axis = proj.norm() > 1e-12 ? VectorN(proj.normalized()) : VectorN(eig.vectors.col(0));
  } else {
    out.axis = eig.vectors.col(0);
  }
  double c = 0.0;
  for (const auto& v : samples) c += out.axis.dot(v);
  c /= static_cast<double>(samples.size());
  if (c < 0.0) {
    out.axis = -out.axis;
    c = -c;
  }
  out.cos_theta = c;
  for (const auto& v : samples) out.deviation = std::max(out.deviation, std::abs(out.axis.dot(v) - c));
  return out;
}

SlantReport is_k_slant(const Curve& c, int k, std::span<const double> grid, double tol, Execution exec) {
  if (k < 1 || k > c.dimension())
    throw GeometryError(ErrorCode::bad_parameters, "k must lie in [1, m + 1]");
  const auto rows = aligned_frames(c, grid, exec);
  std::vector<VectorN> samples;
  samples.reserve(rows.size());
  for (const auto& r : rows) samples.push_back(r.frame[static_cast<std::size_t>(k - 1)]);
  return report_from_samples(k, samples, tol);
}

std::vector<SlantReport> slant_profile(const Curve& c, std::span<const double> grid, double tol, Execution exec) {
  const auto rows = aligned_frames(c, grid, exec);
  std::vector<SlantReport> out;
  for (int k = 1; k <= c.dimension(); ++k) {
    std::vector<VectorN> samples;
    for (const auto& r : rows) samples.push_back(r.frame[static_cast<std::size_t>(k - 1)]);
    out.push_back(report_from_samples(k, samples, tol));
  }
  return out;
}

double CoefficientResiduals::sup_norm(std::size_t margin) const {
  double sup = 0.0;
  for (std::size_t j = margin; j + margin < P.size(); ++j)
    for (double p : P[j]) sup = std::max(sup, std::abs(p));
  return sup;
}

CoefficientResiduals coefficient_residuals(const Curve& c, const VectorN& direction, std::span<const double> grid,
                                           Execution exec) {
  if (direction.size() != c.dimension()) throw GeometryError(ErrorCode::bad_parameters, "direction dimension");
  if (grid.size() < 5 || !is_uniform(grid))
    throw GeometryError(ErrorCode::bad_parameters, "coefficient residuals need a uniform grid of >= 5 points");
  const VectorN u = direction.normalized();
  const auto rows = aligned_frames(c, grid, exec);
  const std::size_t n = rows.size();
  const auto dim = static_cast<std::size_t>(c.dimension());
  const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);

  CoefficientResiduals out;
  out.s.assign(grid.begin(), grid.end());
  out.a.assign(n, std::vector<double>(dim));
  out.P.assign(n, std::vector<double>(dim));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < dim; ++i) out.a[j][i] = u.dot(rows[j].frame[i]);

  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> column(n);
    for (std::size_t j = 0; j < n; ++j) column[j] = out.a[j][i];
    const auto d = grid_derivative(column, h);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& kappa = rows[j].curvatures;  // kappa[q] = kappa_{q+1}
      const auto& a = out.a[j];
      double p = d[j] / rows[j].speed;
      if (i > 0) p += kappa[i - 1] * a[i - 1];
      if (i + 1 < dim) p -= kappa[i] * a[i + 1];
      out.P[j][i] = p;
    }
  }
  return out;
}

const char* to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::tangent_to_last: return "i";
    case TheoremCase::last_to_tangent: return "ii";
    case TheoremCase::interior: return "iii";
  }
  return "?";
}

TheoremCase focal_slant_case(int k, int m) {
  if (m < 1 || k < 1 || k > m + 1) throw GeometryError(ErrorCode::bad_parameters, "k must lie in [1, m + 1]");
  if (k == 1) return TheoremCase::tangent_to_last;
  if (k == m + 1) return TheoremCase::last_to_tangent;
  return TheoremCase::interior;
}

int focal_slant_index(int k, int m) {
  switch (focal_slant_case(k, m)) {
    case TheoremCase::tangent_to_last: return m + 1;
    case TheoremCase::last_to_tangent: return 1;
    case TheoremCase::interior: return m - k + 2;
  }
  return 0;
}

TheoremReport verify_focal_slant(const Curve& c, int k, std::span<const double> grid, SlantTolerances tol,
                                 Execution exec, SampledOptions options) {
  TheoremReport rep;
  rep.m = c.codimension();
  rep.k = k;
  rep.theorem_case = focal_slant_case(k, rep.m);
  rep.focal_k = focal_slant_index(k, rep.m);
  if (rep.theorem_case == TheoremCase::interior && (k == 2 || k == rep.m))
    rep.note = "k = " + std::to_string(k) +
               " lies on the boundary of the open range 2 < k < m; the index map m - k + 2 is applied on the "
               "closed range 2 <= k <= m";

  rep.source = is_k_slant(c, k, grid, tol.source, exec);
  rep.source_is_slant = rep.source.is_slant;
  if (!rep.source_is_slant) {
    rep.note = rep.note.empty() ? "source curve is not k-slant; nothing to verify"
                                : rep.note + "; source curve is not k-slant";
    return rep;
  }

  Curve focal = [&] {
    try {
      return focal_curve(c, grid, exec, options);
    } catch (const GeometryError& e) {
      if (e.code() == ErrorCode::focal_not_regular || e.code() == ErrorCode::regularity_failure)
        throw GeometryError(ErrorCode::focal_not_regular, e.what(), e.index());
      throw;
    }
  }();
  rep.focal = is_k_slant(focal, rep.focal_k, grid, tol.focal, exec);
  const double cosine = std::min(1.0, std::abs(rep.source.axis.dot(rep.focal.axis)));
  rep.axis_angle = std::acos(cosine);
  // acos loses precision near 1; recover small angles from the cross term.
  if (rep.axis_angle < 1e-4) {
    const VectorN diff = rep.focal.axis - std::copysign(1.0, rep.source.axis.dot(rep.focal.axis)) * rep.source.axis;
    rep.axis_angle = 2.0 * std::asin(std::min(1.0, diff.norm() / 2.0));
  }
  rep.axes_agree = rep.axis_angle < tol.axis_angle;
  rep.passed = rep.focal.is_slant && rep.axes_agree;
  return rep;
}

}  // namespace focalkit

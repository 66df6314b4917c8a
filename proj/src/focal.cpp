#include "focalkit/focal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "focalkit/errors.hpp"
#include "focalkit/stencil.hpp"

namespace focalkit {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

std::vector<double> arc_derivative(std::span<const double> values, std::span<const FrenetData> rows, double h) {
  auto d = grid_derivative(values, h);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] /= rows[i].speed;
  return d;
}

}  // namespace

std::vector<FocalData> focal_curvatures(const Curve& c, std::span<const double> grid, Execution exec) {
  if (grid.size() < 64) throw GeometryError(ErrorCode::bad_parameters, "focal grid needs at least 64 points");
  if (!is_uniform(grid)) throw GeometryError(ErrorCode::bad_parameters, "focal grid must be uniform");
  const int m = c.codimension();
  const std::size_t n = grid.size();
  const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);

  const auto rows = frenet_along(c, grid, m + 1, exec);

  // coeff[i][j] = c_{i+1} at grid point j
  std::vector<std::vector<double>> coeff(static_cast<std::size_t>(m), std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) coeff[0][j] = 1.0 / rows[j].curvatures[0];
  for (int i = 1; i < m; ++i) {
    // c_{i+1} = (c_i' + kappa_i c_{i-1}) / kappa_{i+1}
    const auto& ci = coeff[static_cast<std::size_t>(i - 1)];
    const auto dci = arc_derivative(ci, rows, h);
    for (std::size_t j = 0; j < n; ++j) {
      const double prev = i >= 2 ? coeff[static_cast<std::size_t>(i - 2)][j] : 0.0;
      const auto& k = rows[j].curvatures;
      coeff[static_cast<std::size_t>(i)][j] =
          (dci[j] + k[static_cast<std::size_t>(i - 1)] * prev) / k[static_cast<std::size_t>(i)];
    }
  }
  const auto dcm = arc_derivative(coeff[static_cast<std::size_t>(m - 1)], rows, h);

  std::vector<FocalData> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& f = out[j];
    f.s = grid[j];
    f.apparatus = rows[j];
    const auto& frame = rows[j].frame;
    const double kappa_m = rows[j].curvatures[static_cast<std::size_t>(m - 1)];
    f.focal_point = c.position(grid[j]);
    double r2 = 0.0;
    for (int i = 0; i < m; ++i) {
      const double ci = coeff[static_cast<std::size_t>(i)][j];
      f.focal_curvatures.push_back(ci);
      f.focal_point += ci * frame[static_cast<std::size_t>(i) + 1];
      r2 += ci * ci;
    }
    f.R_m = std::sqrt(r2);
    const double prev = m >= 2 ? coeff[static_cast<std::size_t>(m - 2)][j] : 0.0;
    f.focal_rate = dcm[j] + prev * kappa_m;
    f.A = std::abs(f.focal_rate);
    f.vertex = f.A < kVertexThreshold;
    f.epsilon = f.vertex ? 0 : sign_of(f.focal_rate);
    for (int a = 1; a <= m; ++a) f.deltas.push_back(sign_of((a % 2 == 0 ? 1.0 : -1.0) * f.epsilon * kappa_m));
  }
  return out;
}

VectorN osculating_center_oracle(const Curve& c, double s) {
  const int dim = c.dimension();
  const auto g = c.derivatives(s, dim);
  // k-th theta-derivative of F is
  //   <gamma - q, gamma^(k)> + sum_{j=1}^{k-1} C(k-1, j) <gamma^(j), gamma^(k-j)>,
  // so F^(k) = 0 reads <q, gamma^(k)> = rhs_k.
  MatrixN a(dim, dim);
  VectorN b(dim);
  for (int k = 1; k <= dim; ++k) {
    double rhs = g[0].dot(g[static_cast<std::size_t>(k)]);
    double binom = 1.0;  // C(k-1, j)
    for (int j = 1; j <= k - 1; ++j) {
      binom = binom * (k - j) / j;
      rhs += binom * g[static_cast<std::size_t>(j)].dot(g[static_cast<std::size_t>(k - j)]);
    }
    const double row_norm = g[static_cast<std::size_t>(k)].norm();
    if (!(row_norm > 0.0))
      throw GeometryError(ErrorCode::singular_system, "vanishing derivative of order " + std::to_string(k), k);
    a.row(k - 1) = g[static_cast<std::size_t>(k)].transpose() / row_norm;
    b[k - 1] = rhs / row_norm;
  }
  return solve_linear(a, b);
}

std::vector<VectorN> osculating_centers(const Curve& c, std::span<const double> grid, Execution exec) {
  std::vector<VectorN> out(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t i) { out[i] = osculating_center_oracle(c, grid[i]); });
  return out;
}

Curve focal_curve(const Curve& c, std::span<const double> grid, Execution exec, SampledOptions options) {
  if (grid.size() < 64) throw GeometryError(ErrorCode::bad_parameters, "focal grid needs at least 64 points");
  if (!is_uniform(grid)) throw GeometryError(ErrorCode::bad_parameters, "focal grid must be uniform");
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  const int m = c.codimension();

  // Enough outer samples for centred stencils up to order m + 1 at the grid
  // ends, plus the two one-sided points of the recursion's differences.
  const auto wanted = static_cast<std::size_t>((m + 1 + options.accuracy) / 2 + 3);
  const auto fit = [&](double room) {
    return std::min(wanted, static_cast<std::size_t>(std::floor(room / h + 1e-9)));
  };
  const std::size_t pad_lo = fit(grid.front() - c.domain().lo);
  const std::size_t pad_hi = fit(c.domain().hi - grid.back());

  std::vector<double> extended;
  extended.reserve(grid.size() + pad_lo + pad_hi);
  for (std::size_t i = pad_lo; i > 0; --i) extended.push_back(grid.front() - h * static_cast<double>(i));
  extended.insert(extended.end(), grid.begin(), grid.end());
  for (std::size_t i = 1; i <= pad_hi; ++i) extended.push_back(grid.back() + h * static_cast<double>(i));
  extended.front() = std::max(extended.front(), c.domain().lo);
  extended.back() = std::min(extended.back(), c.domain().hi);

  const auto data = focal_curvatures(c, extended, exec);
  std::vector<double> params;
  std::vector<VectorN> points;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool inside = i >= pad_lo && i < pad_lo + grid.size();
    if (data[i].vertex && inside)
      throw GeometryError(ErrorCode::focal_not_regular,
                          "vertex (c_m' + c_{m-1} kappa_m = 0) at s = " + std::to_string(data[i].s),
                          static_cast<int>(i - pad_lo));
    params.push_back(data[i].s);
    points.push_back(data[i].focal_point);
  }
  try {
    return make_sampled_curve(std::move(params), std::move(points), options, Interval{grid.front(), grid.back()});
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::regularity_failure) throw;
    throw GeometryError(ErrorCode::focal_not_regular, e.what(), e.index());
  }
}

std::vector<double> scalar_frenet_residuals(std::span<const FocalData> data) {
  const std::size_t n = data.size();
  std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
  if (n < 5) return out;
  const std::size_t m = data.front().focal_curvatures.size();
  const double h = (data.back().s - data.front().s) / static_cast<double>(n - 1);
  std::vector<double> cm(n), r2(n);
  std::vector<FrenetData> rows(n);
  for (std::size_t j = 0; j < n; ++j) {
    cm[j] = data[j].focal_curvatures[m - 1];
    r2[j] = data[j].R_m * data[j].R_m;
    rows[j] = data[j].apparatus;
  }
  const auto dcm = arc_derivative(cm, rows, h);
  const auto dr2 = arc_derivative(r2, rows, h);
  for (std::size_t j = 0; j < n; ++j) {
    if (data[j].vertex || std::abs(cm[j]) < 1e-8 * data[j].R_m) continue;
    const double prev = m >= 2 ? data[j].focal_curvatures[m - 2] : 0.0;
    out[j] = std::abs(dcm[j] - dr2[j] / (2.0 * cm[j]) + data[j].apparatus.curvatures[m - 1] * prev);
  }
  return out;
}

FocalRelationsReport focal_relations_check(const Curve& c, std::span<const double> grid, Execution exec,
                                           std::size_t margin, SampledOptions options) {
  const int m = c.codimension();
  const auto data = focal_curvatures(c, grid, exec);
  const Curve focal = focal_curve(c, grid, exec, options);
  const auto focal_rows = frenet_along(focal, grid, m + 1, exec);

  FocalRelationsReport rep;
  rep.m = m;
  rep.parity = m % 2 == 0 ? "even" : "odd";
  rep.min_normal_alignment.assign(static_cast<std::size_t>(m), 1.0);
  rep.mean_direct_curvatures.assign(static_cast<std::size_t>(m), 0.0);
  rep.mean_predicted_curvatures.assign(static_cast<std::size_t>(m), 0.0);

  const std::size_t lo = std::min(margin, grid.size());
  const std::size_t hi = grid.size() > margin ? grid.size() - margin : 0;
  for (std::size_t j = lo; j < hi; ++j) {
    const auto& src = data[j];
    const auto& frame = src.apparatus.frame;      // t, n_1, ..., n_m
    const auto& kappa = src.apparatus.curvatures;
    const auto& foc = focal_rows[j];
    ++rep.points_checked;

    double ratio_lo = std::numeric_limits<double>::infinity(), ratio_hi = -ratio_lo;
    for (int i = 1; i <= m; ++i) {
      const double k_src = kappa[static_cast<std::size_t>(m - i)];  // kappa_{m-i+1}
      const double predicted = k_src / src.A;
      const double direct = foc.curvatures[static_cast<std::size_t>(i - 1)];
      rep.max_curvature_residual = std::max(rep.max_curvature_residual, std::abs(direct - predicted));
      rep.mean_direct_curvatures[static_cast<std::size_t>(i - 1)] += direct;
      rep.mean_predicted_curvatures[static_cast<std::size_t>(i - 1)] += predicted;
      ratio_lo = std::min(ratio_lo, direct / k_src);
      ratio_hi = std::max(ratio_hi, direct / k_src);
    }
    rep.max_chain_spread = std::max(rep.max_chain_spread, (ratio_hi - ratio_lo) / ratio_hi);

    const double t_dot = foc.frame[0].dot(frame[static_cast<std::size_t>(m)]);
    rep.min_tangent_alignment = std::min(rep.min_tangent_alignment, std::abs(t_dot));
    if (sign_of(t_dot) != src.epsilon) ++rep.sign_mismatches;
    if (src.epsilon != 1) rep.epsilon_positive = false;
    if (sign_of(t_dot) != 1) rep.parity_pattern_holds = false;
    for (int a = 1; a <= m; ++a) {
      const double dot = foc.frame[static_cast<std::size_t>(a)].dot(frame[static_cast<std::size_t>(m - a)]);
      auto& slot = rep.min_normal_alignment[static_cast<std::size_t>(a - 1)];
      slot = std::min(slot, std::abs(dot));
      if (sign_of(dot) != src.deltas[static_cast<std::size_t>(a - 1)]) ++rep.sign_mismatches;
      if (sign_of(dot) != (a % 2 == 0 ? 1 : -1)) rep.parity_pattern_holds = false;
    }
  }
  if (rep.points_checked > 0)
    for (int i = 0; i < m; ++i) {
      rep.mean_direct_curvatures[static_cast<std::size_t>(i)] /= static_cast<double>(rep.points_checked);
      rep.mean_predicted_curvatures[static_cast<std::size_t>(i)] /= static_cast<double>(rep.points_checked);
    }
  return rep;
}

}  // namespace focalkit

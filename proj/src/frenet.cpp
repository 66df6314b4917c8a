#include "focalkit/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "focalkit/errors.hpp"

namespace focalkit {

FrenetData frenet_from_derivatives(std::span<const VectorN> derivatives, double s) {
  GramSchmidtResult gs;
  try {
    gs = gram_schmidt(derivatives);
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::degenerate_flag) throw;
    throw GeometryError(ErrorCode::reduced_order,
                        "osculating order drops at step " + std::to_string(e.index()) + " (s = " +
                            std::to_string(s) + ")",
                        e.index());
  }
  FrenetData out;
  out.s = s;
  out.speed = gs.norms[0];
  out.osculating_order = static_cast<int>(derivatives.size());
  for (std::size_t a = 0; a < gs.orthogonal.size(); ++a) {
    out.frame.push_back(gs.orthogonal[a] / gs.norms[a]);
    if (a > 0) out.curvatures.push_back(gs.norms[a] / (gs.norms[a - 1] * gs.norms[0]));
  }
  return out;
}

FrenetData frenet_apparatus(const Curve& c, double s, int d) {
  if (d < 1 || d > c.dimension())
    throw GeometryError(ErrorCode::bad_parameters, "osculating order d must lie in [1, dimension]");
  const auto derivs = c.derivatives(s, d);
  return frenet_from_derivatives(std::span<const VectorN>(derivs).subspan(1), s);
}

std::vector<CurvatureRow> curvature_table(const Curve& c, std::span<const double> grid, int d, Execution exec) {
  std::vector<CurvatureRow> rows(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t i) {
    auto& row = rows[i];
    row.s = grid[i];
    const auto derivs = c.derivatives(grid[i], d);
    std::span<const VectorN> tail(derivs.data() + 1, static_cast<std::size_t>(d));
    try {
      const auto f = frenet_from_derivatives(tail, grid[i]);
      row.curvatures = f.curvatures;
      row.speed = f.speed;
    } catch (const GeometryError& e) {
      if (e.code() != ErrorCode::reduced_order) throw;
      row.reduced = true;
      row.reduced_at = e.index();
      row.speed = derivs[1].norm();
      // Curvatures up to the failing step are still well defined.
      if (e.index() > 1) {
        const auto partial = frenet_from_derivatives(tail.first(static_cast<std::size_t>(e.index() - 1)), grid[i]);
        row.curvatures = partial.curvatures;
      }
    }
  });
  return rows;
}

std::vector<FrenetData> frenet_along(const Curve& c, std::span<const double> grid, int d, Execution exec) {
  std::vector<FrenetData> rows(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t i) {
    try {
      rows[i] = frenet_apparatus(c, grid[i], d);
    } catch (const GeometryError& e) {
      if (e.code() != ErrorCode::reduced_order) throw;
      throw GeometryError(ErrorCode::not_generic,
                          "curve is not of osculating order " + std::to_string(d) + " at s = " +
                              std::to_string(grid[i]),
                          static_cast<int>(i));
    }
  });
  return rows;
}

void align_frames(std::vector<FrenetData>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto& cur = rows[i].frame;
    const auto& prev = rows[i - 1].frame;
    for (std::size_t j = 0; j < std::min(cur.size(), prev.size()); ++j)
      if (cur[j].dot(prev[j]) < 0.0) cur[j] = -cur[j];
  }
}

Classification classify(const Curve& c, std::span<const double> grid, double tol, Execution exec) {
  if (grid.size() < 8) throw GeometryError(ErrorCode::bad_parameters, "classify needs at least 8 grid points");
  const auto rows = frenet_along(c, grid, c.dimension(), exec);
  const std::size_t m = rows.front().curvatures.size();

  Classification out;
  out.is_w_curve = true;
  out.is_ccr = true;
  for (std::size_t i = 0; i < m; ++i) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (const auto& r : rows) {
      lo = std::min(lo, r.curvatures[i]);
      hi = std::max(hi, r.curvatures[i]);
      sum += r.curvatures[i];
    }
    const double mean = sum / static_cast<double>(rows.size());
    if (mean < 1e-12)
      throw GeometryError(ErrorCode::division_guard,
                          "mean kappa_" + std::to_string(i + 1) + " below 1e-12", static_cast<int>(i));
    out.mean_curvatures.push_back(mean);
    const double spread = (hi - lo) / mean;
    out.max_curvature_spread = std::max(out.max_curvature_spread, spread);
    if (!(spread < tol)) out.is_w_curve = false;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (const auto& r : rows) {
      const double q = r.curvatures[i + 1] / r.curvatures[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      sum += q;
    }
    const double mean = sum / static_cast<double>(rows.size());
    out.ratios.push_back(mean);
    const double spread = (hi - lo) / std::max(std::abs(mean), 1e-300);
    out.max_ratio_spread = std::max(out.max_ratio_spread, spread);
    if (!(spread < tol)) out.is_ccr = false;
  }
  return out;
}

}  // namespace focalkit

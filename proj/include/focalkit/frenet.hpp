#pragma once

#include <span>
#include <vector>

#include "focalkit/curve.hpp"
#include "focalkit/parallel.hpp"

namespace focalkit {

/// Frenet apparatus at one parameter value.
struct FrenetData {
  double s = 0.0;
  double speed = 0.0;
  std::vector<VectorN> frame;       // t, n_1, ..., n_{d-1}
  std::vector<double> curvatures;   // kappa_1, ..., kappa_{d-1}, all positive
  int osculating_order = 0;
};

/// Gram-Schmidt on [gamma', ..., gamma^(d)]:
///   kappa_{a-1} = |v_a| / (|v_{a-1}| |v_1|),  n_{a-1} = v_a / |v_a|.
/// Throws reduced_order (index = a) when v_a degenerates.
FrenetData frenet_apparatus(const Curve& c, double s, int d);

/// Same, from precomputed derivatives gamma', ..., gamma^(d).
FrenetData frenet_from_derivatives(std::span<const VectorN> derivatives, double s);

struct CurvatureRow {
  double s = 0.0;
  std::vector<double> curvatures;
  double speed = 0.0;
  bool reduced = false;  // ReducedOrder at this row; curvatures then hold the
  int reduced_at = 0;    // ones computed before step `reduced_at`
};

std::vector<CurvatureRow> curvature_table(const Curve& c, std::span<const double> grid, int d,
                                          Execution exec = Execution::parallel);

/// Frenet apparatus at every grid point; throws not_generic (index = row) on
/// the first row whose order drops below d.
std::vector<FrenetData> frenet_along(const Curve& c, std::span<const double> grid, int d,
                                     Execution exec = Execution::parallel);

/// Sequential pass flipping each frame vector whose dot product with its
/// predecessor along the grid is negative.
void align_frames(std::vector<FrenetData>& rows);

struct Classification {
  bool is_w_curve = false;
  bool is_ccr = false;
  std::vector<double> mean_curvatures;
  std::vector<double> ratios;  // mean of kappa_{i+1} / kappa_i
  double max_curvature_spread = 0.0;
  double max_ratio_spread = 0.0;
};

/// W-curve: every kappa_i has (max - min) / mean < tol. ccr: every ratio
/// kappa_{i+1} / kappa_i has (max - min) / |mean| < tol. Uses d = dimension.
Classification classify(const Curve& c, std::span<const double> grid, double tol = 1e-6,
                        Execution exec = Execution::parallel);

}  // namespace focalkit

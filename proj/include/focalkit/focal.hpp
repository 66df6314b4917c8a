#pragma once

#include <span>
#include <string>
#include <vector>

#include "focalkit/curve.hpp"
#include "focalkit/frenet.hpp"
#include "focalkit/parallel.hpp"

namespace focalkit {

/// Focal data of a generic curve at one grid point.
struct FocalData {
  double s = 0.0;
  std::vector<double> focal_curvatures;  // c_1 .. c_m
  VectorN focal_point;                   // gamma + sum c_i n_i
  double focal_rate = 0.0;               // c_m' + c_{m-1} kappa_m (d/ds, arc length of gamma)
  double A = 0.0;                        // |focal_rate|
  int epsilon = 0;                       // sign of focal_rate, 0 at a vertex
  std::vector<int> deltas;               // delta_a = sign((-1)^a epsilon kappa_m), a = 1..m
  double R_m = 0.0;                      // sqrt(sum c_i^2)
  bool vertex = false;                   // A < 1e-10: focal curve singular here
  FrenetData apparatus;                  // Frenet data of the source curve
};

constexpr double kVertexThreshold = 1e-10;

/// Focal curvatures on a uniform grid by the scalar Frenet recursion
///   c_1 = 1 / kappa_1,  c_{i+1} = (c_i' + kappa_i c_{i-1}) / kappa_{i+1},
/// with ' = d/ds taken by 4th-order grid differences (divided by the speed,
/// so any regular parametrization works). Grid: uniform, >= 64 points.
/// Throws not_generic when the curve loses full osculating order.
std::vector<FocalData> focal_curvatures(const Curve& c, std::span<const double> grid,
                                        Execution exec = Execution::parallel);

/// Centre of the osculating hypersphere from the caustic family
/// F(q, theta) = |q - gamma(theta)|^2 / 2: the first m + 1 theta-derivatives
/// of F vanish at theta = s, which is linear in q. Independent of the
/// recursion above. Throws singular_system at non-generic points.
VectorN osculating_center_oracle(const Curve& c, double s);

std::vector<VectorN> osculating_centers(const Curve& c, std::span<const double> grid,
                                        Execution exec = Execution::parallel);

/// Focal curve sampled on the grid (plus padding samples outside the grid
/// where the source domain allows, so stencils at the grid ends stay
/// centred). Throws focal_not_regular when a vertex falls on the grid.
Curve focal_curve(const Curve& c, std::span<const double> grid, Execution exec = Execution::parallel,
                  SampledOptions options = {});

/// |c_m' - (R_m^2)' / (2 c_m) + kappa_m c_{m-1}| per grid point; NaN where
/// |c_m| < 1e-8 R_m or at vertices.
std::vector<double> scalar_frenet_residuals(std::span<const FocalData> data);

struct FocalRelationsReport {
  int m = 0;
  std::string parity;  // "even" or "odd"
  std::size_t points_checked = 0;

  // |K_i - kappa_{m-i+1} / A|, i = 1..m
  double max_curvature_residual = 0.0;
  std::vector<double> mean_direct_curvatures;     // K_i from the focal curve's own Frenet apparatus
  std::vector<double> mean_predicted_curvatures;  // kappa_{m-i+1} / A
  // Relative spread of K_i / kappa_{m-i+1} across i (all equal 1/A).
  double max_chain_spread = 0.0;

  // Frame mapping: |<T, n_m>| and |<N_a, n_{m-a}>| (n_0 = t), minima over the grid.
  double min_tangent_alignment = 1.0;
  std::vector<double> min_normal_alignment;

  // Signs: T = eps n_m, N_a = delta_a n_{m-a}.
  std::size_t sign_mismatches = 0;
  bool epsilon_positive = true;
  // Fixed parity table: T = n_m, N_a = (-1)^a n_{m-a}; holds iff eps = +1.
  bool parity_pattern_holds = true;
};

/// Compares the focal curve's directly computed Frenet apparatus with the
/// relations predicted from gamma's apparatus. `margin` grid points at each
/// end are left out.
FocalRelationsReport focal_relations_check(const Curve& c, std::span<const double> grid,
                                           Execution exec = Execution::parallel, std::size_t margin = 3,
                                           SampledOptions options = {});

}  // namespace focalkit

#pragma once

#include <span>
#include <string>
#include <vector>

#include "focalkit/curve.hpp"
#include "focalkit/parallel.hpp"

namespace focalkit {

/// Below this |cos theta| the constant angle counts as perpendicular, which
/// the slant-helix definition excludes.
constexpr double kPerpendicularGuard = 1e-3;

struct AxisEstimate {
  VectorN axis;            // unit, sign chosen so cos_theta >= 0
  double cos_theta = 0.0;  // mean <axis, sample>
  double deviation = 0.0;  // max |<axis, sample_j> - cos_theta|
  // Covariance had a multi-dimensional near-nullspace. The axis is then the
  // unit projection of the sample mean onto that nullspace, or the
  // lowest-index null eigenvector when the mean projects to zero.
  bool degenerate = false;
};

/// Direction minimising the variance of <U, sample_j> over unit U: the
/// smallest-eigenvalue eigenvector of the sample covariance (Jacobi).
/// Needs >= 8 unit samples of equal dimension.
AxisEstimate estimate_axis(std::span<const VectorN> samples);

struct SlantReport {
  int k = 0;
  VectorN axis;
  double cos_theta = 0.0;
  double deviation = 0.0;
  bool is_slant = false;
  bool excluded_perpendicular = false;
  bool degenerate = false;
};

/// V_1 = t, V_k = n_{k-1}. Frames are computed at full osculating order and
/// sign-aligned along the grid before sampling V_k.
SlantReport is_k_slant(const Curve& c, int k, std::span<const double> grid, double tol,
                       Execution exec = Execution::parallel);

/// is_k_slant for k = 1..m+1 from a single pass of frame computations.
std::vector<SlantReport> slant_profile(const Curve& c, std::span<const double> grid, double tol,
                                       Execution exec = Execution::parallel);

/// Residuals of the fixed-direction system for a_j = <U, V_j>:
///   P_1 = a_1' - kappa_1 a_2
///   P_i = a_i' + kappa_{i-1} a_{i-1} - kappa_i a_{i+1}   (2 <= i <= m)
///   P_{m+1} = a_{m+1}' + kappa_m a_m
/// with ' = d/ds by grid differences. These are the components of dU/ds in
/// the Frenet frame, so they vanish for every constant U.
struct CoefficientResiduals {
  std::vector<double> s;
  std::vector<std::vector<double>> a;  // a[j][i] at grid point j
  std::vector<std::vector<double>> P;  // P[j][i] at grid point j

  /// max |P| over grid points [margin, n - margin).
  double sup_norm(std::size_t margin = 3) const;
};

CoefficientResiduals coefficient_residuals(const Curve& c, const VectorN& direction, std::span<const double> grid,
                                           Execution exec = Execution::parallel);

enum class TheoremCase {
  tangent_to_last,   // k = 1      -> k' = m + 1
  last_to_tangent,   // k = m + 1  -> k' = 1
  interior,          // 2 <= k <= m -> k' = m - k + 2
};

const char* to_string(TheoremCase c);

TheoremCase focal_slant_case(int k, int m);

/// Index of the focal curve's frame vector that inherits gamma's constant angle.
int focal_slant_index(int k, int m);

struct SlantTolerances {
  double source = 1e-6;      // analytic source curve
  double focal = 1e-4;       // finite-difference focal curve
  double axis_angle = 1e-3;  // rad
};

struct TheoremReport {
  int m = 0;
  int k = 0;
  int focal_k = 0;
  TheoremCase theorem_case = TheoremCase::interior;
  SlantReport source;
  SlantReport focal;
  double axis_angle = 0.0;  // angle between the two axes, up to sign
  bool axes_agree = false;
  bool source_is_slant = false;
  bool passed = false;
  std::string note;
};

/// Builds the focal curve of `c` and checks that it is focal_slant_index(k, m)
/// -slant about the same axis.
TheoremReport verify_focal_slant(const Curve& c, int k, std::span<const double> grid, SlantTolerances tol = {},
                                 Execution exec = Execution::parallel, SampledOptions options = {});

}  // namespace focalkit

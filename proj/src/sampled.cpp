#include <algorithm>
#include <cmath>
#include <memory>

#include "focalkit/curve.hpp"
#include "focalkit/errors.hpp"
#include "focalkit/stencil.hpp"

namespace focalkit {

namespace {

struct SampleTable {
  std::vector<double> t;
  std::vector<VectorN> x;
  int accuracy;

  std::vector<VectorN> jet(double at, int order) const {
    const auto n = static_cast<std::ptrdiff_t>(t.size());
    std::vector<VectorN> out;
    out.reserve(static_cast<std::size_t>(order) + 1);

    const auto upper = std::lower_bound(t.begin(), t.end(), at);
    const auto idx = std::distance(t.begin(), upper);
    const double tol = 1e-12 * std::max(1.0, std::abs(at));
    const bool on_node = idx < n && std::abs(t[static_cast<std::size_t>(idx)] - at) <= tol;
    if (on_node && order >= 0) out.push_back(x[static_cast<std::size_t>(idx)]);

    for (int k = on_node ? 1 : 0; k <= order; ++k) {
      auto width = static_cast<std::ptrdiff_t>(k + accuracy);
      std::ptrdiff_t first;
      if (on_node) {
        if (width % 2 == 0) ++width;
        first = idx - width / 2;
      } else {
        if (width % 2 == 1) ++width;
        first = idx - width / 2;
      }
      width = std::min(width, n);
      first = std::clamp<std::ptrdiff_t>(first, 0, n - width);
      const std::span<const double> nodes(t.data() + first, static_cast<std::size_t>(width));
      const auto w = fornberg_weights(at, nodes, k);
      VectorN acc = VectorN::Zero(x.front().size());
      for (std::ptrdiff_t j = 0; j < width; ++j)
        acc += w[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(first + j)];
      out.push_back(std::move(acc));
    }
    return out;
  }
};

}  // namespace

Curve make_sampled_curve(std::vector<double> params, std::vector<VectorN> points, SampledOptions options,
                         std::optional<Interval> domain) {
  if (params.size() != points.size())
    throw GeometryError(ErrorCode::bad_parameters, "sample parameters and points differ in length");
  if (options.accuracy < 2) throw GeometryError(ErrorCode::bad_parameters, "stencil accuracy must be >= 2");
  if (params.size() < static_cast<std::size_t>(options.accuracy) + 2)
    throw GeometryError(ErrorCode::bad_parameters, "too few samples for the stencil accuracy");
  for (std::size_t i = 1; i < params.size(); ++i)
    if (!(params[i] > params[i - 1]))
      throw GeometryError(ErrorCode::bad_parameters, "sample parameters must be strictly increasing");
  const auto dim = points.front().size();
  for (const auto& p : points)
    if (p.size() != dim || !p.allFinite())
      throw GeometryError(ErrorCode::bad_parameters, "sample points must be finite and of equal dimension");

  const Interval full{params.front(), params.back()};
  const Interval dom = domain.value_or(full);
  if (dom.lo < full.lo || dom.hi > full.hi)
    throw GeometryError(ErrorCode::bad_parameters, "sampled curve domain exceeds the samples");

  // Derivatives beyond this order need more samples than most grids carry.
  const int max_order =
      std::min<int>(8, static_cast<int>(params.size()) - options.accuracy - 1);
  auto table = std::make_shared<const SampleTable>(SampleTable{std::move(params), std::move(points), options.accuracy});
  return Curve(static_cast<int>(dim), dom, CurveKind::sampled, max_order,
               [table](double t, int order) { return table->jet(t, order); });
}

}  // namespace focalkit

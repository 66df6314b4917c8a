#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "focalkit/curve.hpp"
#include "focalkit/errors.hpp"
#include "focalkit/series.hpp"
#include "focalkit/stencil.hpp"

namespace focalkit {

namespace {

constexpr std::size_t kPanels = 512;

// Cumulative length table of a curve, inverted panel by panel.
struct ArcLengthMap {
  Curve curve;
  std::vector<double> t;
  std::vector<double> s;

  explicit ArcLengthMap(const Curve& c) : curve(c) {
    t = linspace(c.domain().lo, c.domain().hi, kPanels + 1);
    s.assign(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) s[i] = s[i - 1] + arc_length(curve, t[i - 1], t[i]);
  }

  double total() const { return s.back(); }

  double panel_length(std::size_t panel, double to) const {
    auto speed = [&](double x) { return curve.derivatives(x, 1)[1].norm(); };
    return boost::math::quadrature::gauss<double, 15>::integrate(speed, t[panel], to);
  }

  double parameter_at(double arc) const {
    if (arc <= 0.0) return t.front();
    if (arc >= total()) return t.back();
    auto it = std::upper_bound(s.begin(), s.end(), arc);
    const auto panel = static_cast<std::size_t>(std::distance(s.begin(), it) - 1);
    const double lo = t[panel];
    const double hi = t[panel + 1];
    const double target = arc - s[panel];
    auto f = [&](double x) {
      const auto d = curve.derivatives(x, 1);
      return std::make_pair(panel_length(panel, x) - target, d[1].norm());
    };
    const double guess = lo + (hi - lo) * target / (s[panel + 1] - s[panel]);
    std::uintmax_t iterations = 50;
    return boost::math::tools::newton_raphson_iterate(f, guess, lo, hi, 50, iterations);
  }
};

}  // namespace

Curve reparam_to_arclength(const Curve& c) {
  auto map = std::make_shared<const ArcLengthMap>(c);
  const int max_order = c.max_order();
  auto jet = [map, max_order](double arc, int order) {
    const double t0 = map->parameter_at(arc);
    const auto derivs = map->curve.derivatives(t0, std::max(order, 1));
    if (order == 0) return std::vector<VectorN>{derivs[0]};

    // gamma(t0 + tau) as a series, then sigma(tau) = int |gamma'|, inverted.
    const auto g = series::from_derivatives(derivs);
    const std::size_t terms = static_cast<std::size_t>(order) + 1;
    series::Series speed_sq(terms - 1, 0.0);
    for (std::size_t i = 1; i < g.size(); ++i)
      for (std::size_t j = 1; j < g.size() && (i - 1) + (j - 1) < speed_sq.size(); ++j)
        speed_sq[(i - 1) + (j - 1)] += static_cast<double>(i * j) * g[i].dot(g[j]);
    const auto sigma = series::integrate(series::sqrt(speed_sq));
    const auto tau = series::revert(sigma);
    auto composed = series::compose(g, tau);
    composed.resize(terms);
    return series::to_derivatives(composed);
  };
  return Curve(c.dimension(), Interval{0.0, map->total()}, c.kind(), max_order, std::move(jet));
}

}  // namespace focalkit

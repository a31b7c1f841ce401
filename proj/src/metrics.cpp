#include "projgeom/metrics.hpp"

namespace projgeom {

namespace {

template <class T>
Sym2<T> conformal(const T& factor)
{
  return {factor, T(0.0), factor};
}

}  // namespace

MetricField flat_metric()
{
  return MetricField::from_expression("flat", [](const auto& x, const auto&) {
    using T = std::decay_t<decltype(x)>;
    return conformal(T(1.0));
  });
}

MetricField poincare_metric()
{
  return MetricField::from_expression(
      "poincare",
      [](const auto& x, const auto& y) {
        const auto w = 1.0 - x * x - y * y;
        return conformal(4.0 / (w * w));
      },
      [](Point p) { return p.x * p.x + p.y * p.y < 1.0 - 1e-12; });
}

MetricField sphere_stereographic_metric()
{
  return MetricField::from_expression("sphere-stereographic", [](const auto& x, const auto& y) {
    const auto w = 1.0 + x * x + y * y;
    return conformal(4.0 / (w * w));
  });
}

MetricField bump_metric()
{
  return MetricField::from_expression("bump", [](const auto& x, const auto& y) {
    using std::exp;
    return conformal(exp(2.0 * x * x * y));
  });
}

}  // namespace projgeom

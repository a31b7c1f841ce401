#include "projgeom/fields.hpp"

#include <array>
#include <cmath>
#include <optional>

namespace projgeom {

namespace {

// Fourth-order central stencils on offsets -3..3 (index = offset + 3), as integer numerators over
// a common denominator.
struct Stencil
{
  std::array<double, 7> w;
  double denom;
};

constexpr Stencil kD0 = {{0, 0, 0, 1, 0, 0, 0}, 1};
constexpr Stencil kD1 = {{0, 1, -8, 0, 8, -1, 0}, 12};
constexpr Stencil kD2 = {{0, -1, 16, -30, 16, -1, 0}, 12};
constexpr Stencil kD3 = {{1, -8, 13, 0, -13, 8, -1}, 8};

const Stencil& stencil(int order)
{
  switch (order)
  {
    case 0: return kD0;
    case 1: return kD1;
    case 2: return kD2;
    default: return kD3;
  }
}

}  // namespace

ScalarJet3 fd_jet_adaptor(const ScalarFn& field, Point p, double step_scale, const DomainFn& domain)
{
  const double hx = step_scale * (1.0 + std::abs(p.x));
  const double hy = step_scale * (1.0 + std::abs(p.y));

  std::array<std::optional<double>, 49> cache;
  auto sample = [&](int i, int j) {
    auto& slot = cache[static_cast<std::size_t>((i + 3) * 7 + (j + 3))];
    if (!slot)
    {
      const Point q{p.x + i * hx, p.y + j * hy};
      if (!domain(q))
        throw DomainError("finite-difference stencil leaves the field domain", q);
      slot = field(q);
    }
    return *slot;
  };

  return ScalarJet3::from_partials([&](int nx, int ny) {
    const auto& wx = stencil(nx);
    const auto& wy = stencil(ny);
    double acc = 0.0;
    for (int i = -3; i <= 3; ++i)
    {
      const double ax = wx.w[static_cast<std::size_t>(i + 3)];
      if (ax == 0.0)
        continue;
      for (int j = -3; j <= 3; ++j)
      {
        const double ay = wy.w[static_cast<std::size_t>(j + 3)];
        if (ay == 0.0)
          continue;
        acc += ax * ay * sample(i, j);
      }
    }
    return acc / (wx.denom * wy.denom * std::pow(hx, nx) * std::pow(hy, ny));
  });
}

MetricField MetricField::from_components(std::string name, ScalarFn g00, ScalarFn g01, ScalarFn g11,
                                         DomainFn domain, double step_scale)
{
  MetricField m;
  m.name_ = std::move(name);
  m.domain_ = domain;
  m.value_ = [g00, g01, g11](Point p) { return Sym2<double>{g00(p), g01(p), g11(p)}; };
  auto jet3 = [=](Point p) {
    return Sym2<Jet<3>>{fd_jet_adaptor(g00, p, step_scale, domain), fd_jet_adaptor(g01, p, step_scale, domain),
                        fd_jet_adaptor(g11, p, step_scale, domain)};
  };
  auto lower = [jet3]<int N>(Point p) {
    const auto g = jet3(p);
    return Sym2<Jet<N>>{g.xx.template truncate<N>(), g.xy.template truncate<N>(), g.yy.template truncate<N>()};
  };
  m.evals_ = std::make_tuple(JetEval<1>([lower](Point p) { return lower.template operator()<1>(p); }),
                             JetEval<2>([lower](Point p) { return lower.template operator()<2>(p); }),
                             JetEval<3>(jet3));
  return m;
}

ConnectionField ConnectionField::flat()
{
  return from_expression("flat", [](const auto& x, const auto&) {
    using T = std::decay_t<decltype(x)>;
    return std::array<T, 6>{};
  });
}

CovectorField CovectorField::zero()
{
  return from_expression("zero", [](const auto& x, const auto&) {
    using T = std::decay_t<decltype(x)>;
    return std::array<T, 2>{};
  });
}

}  // namespace projgeom

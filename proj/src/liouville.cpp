#include "projgeom/liouville.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "projgeom/geometry.hpp"
#include "series.hpp"

namespace projgeom {

LiouvilleTerms liouville_terms(const LiouvilleParams& k, Point pt)
{
  const double x = pt.x, y = pt.y;
  return {k.r * x * x + 2.0 * k.p * x + k.s, k.r * y * y + 2.0 * k.q * y + k.u,
          k.r * x * y + k.q * x + k.p * y + k.t};
}

bool domain_contains(const LiouvilleParams& params, Point pt)
{
  const auto terms = liouville_terms(params, pt);
  return terms.b > kLiouvilleDomainTolerance && terms.det() > kLiouvilleDomainTolerance;
}

double k_formula(const LiouvilleParams& k)
{
  return k.r * (k.s * k.u - k.t * k.t) - k.p * k.p * k.u + 2.0 * k.p * k.q * k.t - k.q * k.q * k.s;
}

void check_nondegenerate(const LiouvilleParams& params)
{
  // A B - C^2 is a polynomial of degree <= 4; a 5x5 probe grid detects the zero polynomial.
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
    {
      const Point probe{0.37 * i + 0.011, 0.41 * j - 0.013};
      if (std::abs(liouville_terms(params, probe).det()) > kLiouvilleDomainTolerance)
        return;
    }
  throw DegenerateParamsError("Liouville parameters give an identically degenerate metric");
}

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;
template <int N>
using QuadSeries = detail::Series<Quad, N>;

// Christoffel symbols in slot order from g = (B, -C, A) / D^2 and the exact inverse
// g^-1 = D (A, C, B), in quad precision.
template <int N>
std::array<QuadSeries<N>, 6> christoffel_series(const LiouvilleParams& k, Point pt)
{
  constexpr int M = N + 1;
  const Quad x = pt.x, y = pt.y;
  const Quad p = k.p, q = k.q, r = k.r, s = k.s, t = k.t, u = k.u;
  QuadSeries<M> a, b, c;
  a.at(0, 0) = r * x * x + 2 * p * x + s;
  a.at(1, 0) = 2 * r * x + 2 * p;
  a.at(2, 0) = r;
  b.at(0, 0) = r * y * y + 2 * q * y + u;
  b.at(0, 1) = 2 * r * y + 2 * q;
  b.at(0, 2) = r;
  c.at(0, 0) = r * x * y + q * x + p * y + t;
  c.at(1, 0) = r * y + q;
  c.at(0, 1) = r * x + p;
  if constexpr (M >= 2)
    c.at(1, 1) = r;
  const auto det = a * b - c * c;
  const auto scale = detail::reciprocal(det * det);
  const std::array<QuadSeries<M>, 3> g{b * scale, -c * scale, a * scale};  // xx, xy, yy
  auto metric = [&g](int i, int j) -> const QuadSeries<M>& { return g[static_cast<std::size_t>(i + j)]; };

  const auto dn = det.template truncate<N>();
  const std::array<QuadSeries<N>, 3> inv{dn * a.template truncate<N>(), dn * c.template truncate<N>(),
                                         dn * b.template truncate<N>()};
  std::array<QuadSeries<N>, 6> gamma;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j)
    {
      std::array<QuadSeries<N>, 2> first;
      for (int d = 0; d < 2; ++d)
        first[static_cast<std::size_t>(d)] =
            (metric(j, d).derivative(i) + metric(i, d).derivative(j) - metric(i, j).derivative(d)) * Quad(0.5);
      for (int e = 0; e < 2; ++e)
        gamma[Christoffel<N>::slot(i, j, e)] = inv[static_cast<std::size_t>(e)] * first[0] +
                                               inv[static_cast<std::size_t>(e + 1)] * first[1];
    }
  return gamma;
}

template <int N>
Christoffel<N> christoffel_jet(const LiouvilleParams& k, Point pt)
{
  const auto series = christoffel_series<N>(k, pt);
  Christoffel<N> out;
  for (std::size_t i = 0; i < 6; ++i)
    out.g[i] = series[i].to_jet();
  return out;
}

template <int N>
Mat2<Jet<N>> ricci_series_jet(const LiouvilleParams& k, Point pt)
{
  const auto gamma = christoffel_series<N + 1>(k, pt);
  auto at = [&gamma](int i, int j, int e) -> const QuadSeries<N + 1>& {
    return gamma[Christoffel<N>::slot(std::min(i, j), std::max(i, j), e)];
  };
  auto low = [&at](int i, int j, int e) { return at(i, j, e).template truncate<N>(); };
  Mat2<Jet<N>> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
    {
      QuadSeries<N> v;
      for (int c = 0; c < 2; ++c)
      {
        v += at(i, j, c).derivative(c);
        v -= at(c, j, c).derivative(i);
      }
      for (int d = 0; d < 2; ++d)
      {
        v += (low(0, d, 0) + low(1, d, 1)) * low(i, j, d);
        for (int c = 0; c < 2; ++c)
          v -= low(i, d, c) * low(c, j, d);
      }
      out(i, j) = v.to_jet();
    }
  return out;
}

Sym2<double> metric_value(const LiouvilleParams& k, Point pt)
{
  const auto terms = liouville_terms(k, pt);
  const double det = terms.det();
  const double scale = 1.0 / (det * det);
  return {terms.b * scale, -terms.c * scale, terms.a * scale};
}

ConnectionField closed_form_connection(const LiouvilleParams& k, const std::string& name)
{
  auto guarded = [k]<int N>(Point pt) {
    require_positive_definite(metric_value(k, pt), pt);
    return christoffel_jet<N>(k, pt);
  };
  auto ricci = [k]<int N>(Point pt) {
    require_positive_definite(metric_value(k, pt), pt);
    return ricci_series_jet<N>(k, pt);
  };
  ConnectionField c("levi-civita(" + name + ")", [k](Point pt) { return domain_contains(k, pt); },
                    [guarded](Point pt) { return guarded.template operator()<0>(pt); },
                    [guarded](Point pt) { return guarded.template operator()<1>(pt); },
                    [guarded](Point pt) { return guarded.template operator()<2>(pt); });
  return c.with_ricci([ricci](Point pt) { return ricci.template operator()<0>(pt); },
                      [ricci](Point pt) { return ricci.template operator()<1>(pt); });
}

MetricField make_liouville(const LiouvilleParams& params, std::string name)
{
  check_nondegenerate(params);
  const LiouvilleParams k = params;
  auto expr = [k](const auto& x, const auto& y) {
    const auto a = k.r * x * x + 2.0 * k.p * x + k.s;
    const auto b = k.r * y * y + 2.0 * k.q * y + k.u;
    const auto c = k.r * x * y + k.q * x + k.p * y + k.t;
    const auto det = a * b - c * c;
    const auto scale = 1.0 / (det * det);
    using T = std::decay_t<decltype(scale)>;
    return Sym2<T>{b * scale, -c * scale, a * scale};
  };
  auto connection = closed_form_connection(k, name);
  return MetricField::from_expression(std::move(name), expr, [k](Point pt) { return domain_contains(k, pt); })
      .with_levi_civita(std::move(connection));
}

}  // namespace

MetricField liouville_metric(const LiouvilleParams& params)
{
  return make_liouville(params, "liouville");
}

MetricField thales()
{
  return make_liouville(LiouvilleParams::thales(), "thales");
}

MetricField beltrami()
{
  return make_liouville(LiouvilleParams::beltrami(), "beltrami");
}

}  // namespace projgeom

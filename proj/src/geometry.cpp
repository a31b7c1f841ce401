#include "projgeom/geometry.hpp"

#include <cmath>
#include <sstream>

#include "projgeom/quadrature.hpp"

namespace projgeom {

namespace {

std::string describe(Point p)
{
  std::ostringstream os;
  os.precision(12);
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

template <int N>
Mat2<Jet<N>> ricci_change_jet(const Mat2<Jet<N>>& r, const Christoffel<N>& gamma,
                              const std::array<Jet<N + 1>, 2>& ups)
{
  // nabla_a U_b = d_a U_b - Gamma_ab^c U_c
  Mat2<Jet<N>> grad;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
    {
      Jet<N> v = ups[static_cast<std::size_t>(b)].derivative(a);
      for (int c = 0; c < 2; ++c)
        v -= gamma(a, b, c) * ups[static_cast<std::size_t>(c)].template truncate<N>();
      grad(a, b) = v;
    }
  Mat2<Jet<N>> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      out(a, b) = r(a, b) - 2.0 * grad(a, b) + grad(b, a) +
                  ups[static_cast<std::size_t>(a)].template truncate<N>() *
                      ups[static_cast<std::size_t>(b)].template truncate<N>();
  return out;
}

template <int N>
Christoffel<N> projective_change_jet(const Christoffel<N>& gamma, const std::array<Jet<N>, 2>& ups)
{
  Christoffel<N> out = gamma;
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
      {
        if (a == c)
          out(a, b, c) += ups[static_cast<std::size_t>(b)];
        if (b == c)
          out(a, b, c) += ups[static_cast<std::size_t>(a)];
      }
  return out;
}

}  // namespace

void require_positive_definite(const Sym2<double>& g, Point where)
{
  const double det = g.xx * g.yy - g.xy * g.xy;
  if (!(g.xx > kDegeneracyTolerance) || !(det > kDegeneracyTolerance))
    throw DegenerateMetricError("metric is not positive definite at " + describe(where));
}

template <int N>
Christoffel<N> levi_civita_jet(const Sym2<Jet<N + 1>>& g, Point where)
{
  require_positive_definite({g.xx.value(), g.xy.value(), g.yy.value()}, where);

  // dg[d](b, e) = d_d g_be
  std::array<Sym2<Jet<N>>, 2> dg;
  for (int d = 0; d < 2; ++d)
    dg[static_cast<std::size_t>(d)] = {g.xx.derivative(d), g.xy.derivative(d), g.yy.derivative(d)};

  const Jet<N> gxx = g.xx.template truncate<N>();
  const Jet<N> gxy = g.xy.template truncate<N>();
  const Jet<N> gyy = g.yy.template truncate<N>();
  const Jet<N> inv_det = 1.0 / (gxx * gyy - gxy * gxy);
  const Sym2<Jet<N>> ginv{gyy * inv_det, -gxy * inv_det, gxx * inv_det};

  Christoffel<N> gamma;
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b)
    {
      // Christoffel symbols of the first kind, Gamma_abd
      std::array<Jet<N>, 2> first;
      for (int d = 0; d < 2; ++d)
        first[static_cast<std::size_t>(d)] = 0.5 * (dg[static_cast<std::size_t>(a)](b, d) +
                                                    dg[static_cast<std::size_t>(b)](a, d) -
                                                    dg[static_cast<std::size_t>(d)](a, b));
      for (int c = 0; c < 2; ++c)
        gamma(a, b, c) = ginv(c, 0) * first[0] + ginv(c, 1) * first[1];
    }
  return gamma;
}

template Christoffel<0> levi_civita_jet<0>(const Sym2<Jet<1>>&, Point);
template Christoffel<1> levi_civita_jet<1>(const Sym2<Jet<2>>&, Point);
template Christoffel<2> levi_civita_jet<2>(const Sym2<Jet<3>>&, Point);

ConnectionField levi_civita(const MetricField& metric)
{
  if (metric.levi_civita_override())
    return *metric.levi_civita_override();
  return ConnectionField(
      "levi-civita(" + metric.name() + ")", metric.domain(),
      [metric](Point p) { return levi_civita_jet<0>(metric.jet<1>(p), p); },
      [metric](Point p) { return levi_civita_jet<1>(metric.jet<2>(p), p); },
      [metric](Point p) { return levi_civita_jet<2>(metric.jet<3>(p), p); });
}

Christoffel<2> levi_civita(const MetricField& metric, Point p)
{
  if (metric.levi_civita_override())
    return metric.levi_civita_override()->at<2>(p);
  return levi_civita_jet<2>(metric.jet<3>(p), p);
}

double metric_compat_residual(const MetricField& metric, const ConnectionField& connection, Point p)
{
  const auto g = metric.jet<1>(p);
  const auto gamma = connection.at<0>(p);
  double sup = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = b; c < 2; ++c)
      {
        double v = g(b, c).d1(a);
        for (int d = 0; d < 2; ++d)
          v -= gamma.value(a, b, d) * g(d, c).value() + gamma.value(a, c, d) * g(b, d).value();
        sup = std::max(sup, std::abs(v));
      }
  return sup;
}

template <int N>
Mat2<Jet<N>> ricci_jet(const Christoffel<N + 1>& gamma)
{
  const Christoffel<N> g0 = gamma.template truncate<N>();
  // trace[d] = Gamma_cd^c
  std::array<Jet<N>, 2> trace;
  for (int d = 0; d < 2; ++d)
    trace[static_cast<std::size_t>(d)] = g0(0, d, 0) + g0(1, d, 1);

  Mat2<Jet<N>> r;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
    {
      Jet<N> v;
      for (int c = 0; c < 2; ++c)
      {
        v += gamma(a, b, c).derivative(c);
        v -= gamma(c, b, c).derivative(a);
      }
      for (int d = 0; d < 2; ++d)
      {
        v += trace[static_cast<std::size_t>(d)] * g0(a, b, d);
        for (int c = 0; c < 2; ++c)
          v -= g0(a, d, c) * g0(c, b, d);
      }
      r(a, b) = v;
    }
  return r;
}

template Mat2<Jet<0>> ricci_jet<0>(const Christoffel<1>&);
template Mat2<Jet<1>> ricci_jet<1>(const Christoffel<2>&);

template <int N>
Mat2<Jet<N>> ricci_jet_at(const ConnectionField& connection, Point p)
{
  if (connection.has_ricci())
    return connection.ricci_override<N>(p);
  return ricci_jet<N>(connection.at<N + 1>(p));
}

template Mat2<Jet<0>> ricci_jet_at<0>(const ConnectionField&, Point);
template Mat2<Jet<1>> ricci_jet_at<1>(const ConnectionField&, Point);

double RicciValue::max_abs() const
{
  double m = 0.0;
  for (double v : r.m)
    m = std::max(m, std::abs(v));
  return m;
}

RicciValue ricci(const ConnectionField& connection, Point p, bool with_jets)
{
  RicciValue out;
  if (with_jets)
  {
    const auto rj = ricci_jet_at<1>(connection, p);
    for (std::size_t i = 0; i < 4; ++i)
      out.r.m[i] = rj.m[i].value();
    out.jets = rj;
  }
  else
  {
    const auto rj = ricci_jet_at<0>(connection, p);
    for (std::size_t i = 0; i < 4; ++i)
      out.r.m[i] = rj.m[i].value();
  }
  return out;
}

void require_symmetric_ricci(const RicciValue& ricci, Point where, double tol)
{
  if (!ricci.is_symmetric(tol))
  {
    std::ostringstream os;
    os.precision(6);
    os << "Ricci tensor is not symmetric at " << describe(where) << " (|R01 - R10| = " << ricci.asymmetry()
       << "); symmetrise the connection first";
    throw PreconditionError(os.str());
  }
}

ConnectionField projective_change(const ConnectionField& connection, const CovectorField& upsilon)
{
  auto both = [connection, upsilon](Point p) { return connection.contains(p) && upsilon.domain()(p); };
  auto order = [&](int n) { return connection.has_order(n) && upsilon.has_order(n); };

  ConnectionField::JetEval<0> c0;
  ConnectionField::JetEval<1> c1;
  ConnectionField::JetEval<2> c2;
  if (order(0))
    c0 = [connection, upsilon](Point p) { return projective_change_jet<0>(connection.at<0>(p), upsilon.at<0>(p)); };
  if (order(1))
    c1 = [connection, upsilon](Point p) { return projective_change_jet<1>(connection.at<1>(p), upsilon.at<1>(p)); };
  if (order(2))
    c2 = [connection, upsilon](Point p) { return projective_change_jet<2>(connection.at<2>(p), upsilon.at<2>(p)); };
  return ConnectionField(connection.name() + "+proj(" + upsilon.name() + ")", both, c0, c1, c2);
}

RicciValue ricci_change(const ConnectionField& connection, const CovectorField& upsilon, Point p)
{
  const auto gamma = connection.at<1>(p);
  const auto r = ricci_jet_at<0>(connection, p);
  const auto changed = ricci_change_jet<0>(r, gamma.truncate<0>(), upsilon.at<1>(p));
  RicciValue out;
  for (std::size_t i = 0; i < 4; ++i)
    out.r.m[i] = changed.m[i].value();
  return out;
}

CovectorField radial_primitive(TwoFormFn omega, Point base, DomainFn domain)
{
  static const QuadratureRule rule = gauss_legendre_unit(32);

  // Returns (U_0, U_1) and their gradients: grad[b][c] = d_c U_b.
  auto integrate = [omega, base, domain](Point x) {
    const Vec2 v = x - base;
    std::array<double, 2> ups{};
    std::array<std::array<double, 2>, 2> grad{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    {
      const double t = rule.nodes[k];
      const double w = rule.weights[k];
      const Point q{base.x + t * v[0], base.y + t * v[1]};
      if (!domain(q))
        throw DomainError("radial segment from base leaves the domain", q);
      const Jet<1> om = omega(q);
      const double o = om.value();
      const double d0 = om.d1(0), d1 = om.d1(1);
      // U_0 = -int t w v^1, U_1 = int t w v^0
      ups[0] += w * (-t * o * v[1]);
      ups[1] += w * (t * o * v[0]);
      grad[0][0] += w * (-t * t * d0 * v[1]);
      grad[0][1] += w * (-t * t * d1 * v[1] - t * o);
      grad[1][0] += w * (t * t * d0 * v[0] + t * o);
      grad[1][1] += w * (t * t * d1 * v[0]);
    }
    return std::make_pair(ups, grad);
  };

  auto c0 = [integrate](Point x) {
    const auto [u, g] = integrate(x);
    return CovectorField::Components<0>{Jet<0>(u[0]), Jet<0>(u[1])};
  };
  auto c1 = [integrate](Point x) {
    const auto [u, g] = integrate(x);
    CovectorField::Components<1> out;
    for (std::size_t b = 0; b < 2; ++b)
    {
      out[b] = Jet<1>(u[b]);
      out[b].coeff(1, 0) = g[b][0];
      out[b].coeff(0, 1) = g[b][1];
    }
    return out;
  };
  return CovectorField("radial-primitive", domain, c0, c1, nullptr);
}

CovectorField symmetrizing_upsilon(const ConnectionField& connection, Point base)
{
  auto omega = [connection](Point q) {
    const auto r = ricci_jet_at<1>(connection, q);
    return (r(0, 1) - r(1, 0)) * (1.0 / 3.0);
  };
  return radial_primitive(omega, base, connection.domain());
}

YTensorValue y_tensor(const ConnectionField& connection, Point p, double ricci_tol)
{
  const auto gamma = connection.at<0>(p);
  const auto rj = ricci_jet_at<1>(connection, p);
  RicciValue rv;
  for (std::size_t i = 0; i < 4; ++i)
    rv.r.m[i] = rj.m[i].value();
  require_symmetric_ricci(rv, p, ricci_tol);

  // nabla_a R_bc = d_a R_bc - Gamma_ab^d R_dc - Gamma_ac^d R_bd
  auto cov = [&](int a, int b, int c) {
    double v = rj(b, c).d1(a);
    for (int d = 0; d < 2; ++d)
      v -= gamma.value(a, b, d) * rv(d, c) + gamma.value(a, c, d) * rv(b, d);
    return v;
  };
  YTensorValue y;
  for (int c = 0; c < 2; ++c)
    y.y01[static_cast<std::size_t>(c)] = cov(0, 1, c) - cov(1, 0, c);
  return y;
}

Jet<1> gaussian_curvature_jet(const MetricField& metric, Point p)
{
  const auto g3 = metric.jet<3>(p);
  const auto rj = ricci_jet<1>(levi_civita_jet<2>(g3, p));
  const Jet<1> gxx = g3.xx.truncate<1>(), gxy = g3.xy.truncate<1>(), gyy = g3.yy.truncate<1>();
  const Jet<1> det = gxx * gyy - gxy * gxy;
  // g^ab R_ab / 2 with g^-1 = [gyy, -gxy; -gxy, gxx] / det
  return (gyy * rj(0, 0) - gxy * (rj(0, 1) + rj(1, 0)) + gxx * rj(1, 1)) / (2.0 * det);
}

CurvatureValue gaussian_curvature(const MetricField& metric, Point p)
{
  const auto g2 = metric.jet<2>(p);
  const Sym2<double> g{g2.xx.value(), g2.xy.value(), g2.yy.value()};
  const auto r = ricci_jet<0>(levi_civita_jet<1>(g2, p));
  const double det = g.xx * g.yy - g.xy * g.xy;
  CurvatureValue out;
  out.k = (g.yy * r(0, 0).value() - g.xy * (r(0, 1).value() + r(1, 0).value()) + g.xx * r(1, 1).value()) /
          (2.0 * det);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      out.residual = std::max(out.residual, std::abs(r(a, b).value() - out.k * g(a, b)));
  return out;
}

double curvature_commutator_residual(const ConnectionField& connection, Point p, Vec2 x)
{
  const auto gamma = connection.at<1>(p);
  const auto r = ricci_jet_at<0>(connection, p);

  // first[b][c] = nabla_b X^c = Gamma_bd^c X^d as an order-1 jet
  std::array<std::array<Jet<1>, 2>, 2> first;
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c)
      first[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = gamma(b, 0, c) * x[0] + gamma(b, 1, c) * x[1];

  // nabla_a nabla_b X^c up to the symmetric Gamma_ab^e nabla_e X^c term, which cancels.
  auto second = [&](int a, int b, int c) {
    const auto& fb = first[static_cast<std::size_t>(b)];
    double v = fb[static_cast<std::size_t>(c)].d1(a);
    for (int e = 0; e < 2; ++e)
      v += gamma.value(a, e, c) * fb[static_cast<std::size_t>(e)].value();
    return v;
  };

  double sup = 0.0;
  for (int c = 0; c < 2; ++c)
  {
    const double commutator = second(0, 1, c) - second(1, 0, c);
    double expected = 0.0;
    for (int d = 0; d < 2; ++d)
      expected += ((c == 0 ? 1.0 : 0.0) * r(1, d).value() - (c == 1 ? 1.0 : 0.0) * r(0, d).value()) * x[static_cast<std::size_t>(d)];
    sup = std::max(sup, std::abs(commutator - expected));
  }
  return sup;
}

}  // namespace projgeom

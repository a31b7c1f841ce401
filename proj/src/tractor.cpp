#include "projgeom/tractor.hpp"

#include <cmath>
#include <sstream>

namespace projgeom {

namespace {

RicciValue ricci_values(const Mat2<Jet<0>>& r)
{
  RicciValue out;
  for (std::size_t i = 0; i < 4; ++i)
    out.r.m[i] = r.m[i].value();
  return out;
}

Mat3 multiply(const Mat3& a, const Mat3& b)
{
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        r[i][j] += a[i][k] * b[k][j];
  return r;
}

Mat3 axpy(const Mat3& m, double s, const Mat3& d)
{
  Mat3 r = m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i][j] += s * d[i][j];
  return r;
}

}  // namespace

std::array<TractorValue, 2> tractor_derivative(const ConnectionField& connection, const TractorJet& section, Point p,
                                               double ricci_tol)
{
  const auto gamma = connection.at<1>(p);
  const auto r = ricci_values(ricci_jet_at<0>(connection, p));
  require_symmetric_ricci(r, p, ricci_tol);

  std::array<TractorValue, 2> out;
  for (int a = 0; a < 2; ++a)
  {
    auto& d = out[static_cast<std::size_t>(a)];
    for (int b = 0; b < 2; ++b)
    {
      double v = section.x[static_cast<std::size_t>(b)].d1(a) - (a == b ? section.rho.value() : 0.0);
      for (int c = 0; c < 2; ++c)
        v += gamma.value(a, c, b) * section.x[static_cast<std::size_t>(c)].value();
      d.x[static_cast<std::size_t>(b)] = v;
    }
    d.rho = section.rho.d1(a);
    for (int b = 0; b < 2; ++b)
      d.rho += r(a, b) * section.x[static_cast<std::size_t>(b)].value();
  }
  return out;
}

TractorValue tractor_curvature_residual(const ConnectionField& connection, Point p, const TractorValue& tractor,
                                        double ricci_tol)
{
  const auto gamma2 = connection.at<2>(p);
  const auto rj = ricci_jet_at<1>(connection, p);
  RicciValue rv;
  for (std::size_t i = 0; i < 4; ++i)
    rv.r.m[i] = rj.m[i].value();
  require_symmetric_ricci(rv, p, ricci_tol);
  const auto gamma = gamma2.truncate<1>();

  // first[b] = nabla_b of the constant section, as order-1 jets
  std::array<TractorJet, 2> first;
  for (int b = 0; b < 2; ++b)
  {
    auto& f = first[static_cast<std::size_t>(b)];
    for (int c = 0; c < 2; ++c)
    {
      Jet<1> v = gamma(b, 0, c) * tractor.x[0] + gamma(b, 1, c) * tractor.x[1];
      if (b == c)
        v = v - tractor.rho;
      f.x[static_cast<std::size_t>(c)] = v;
    }
    f.rho = rj(b, 0) * tractor.x[0] + rj(b, 1) * tractor.x[1];
  }

  // nabla_a nabla_b, dropping the Gamma_ab^e nabla_e term that cancels in the commutator
  auto second = [&](int a, int b) {
    const auto& f = first[static_cast<std::size_t>(b)];
    TractorValue v;
    for (int c = 0; c < 2; ++c)
    {
      double acc = f.x[static_cast<std::size_t>(c)].d1(a) - (a == c ? f.rho.value() : 0.0);
      for (int e = 0; e < 2; ++e)
        acc += gamma.value(a, e, c) * f.x[static_cast<std::size_t>(e)].value();
      v.x[static_cast<std::size_t>(c)] = acc;
    }
    v.rho = f.rho.d1(a);
    for (int e = 0; e < 2; ++e)
      v.rho += rv(a, e) * f.x[static_cast<std::size_t>(e)].value();
    return v;
  };

  return second(0, 1) + (-1.0) * second(1, 0);
}

Mat3 transport_coefficient(const ConnectionField& connection, Point p, Vec2 u, double ricci_tol)
{
  const auto gamma = connection.at<1>(p);
  const auto r = ricci_values(ricci_jet_at<0>(connection, p));
  require_symmetric_ricci(r, p, ricci_tol);

  Mat3 a{};
  for (int b = 0; b < 2; ++b)
  {
    for (int c = 0; c < 2; ++c)
      a[b][c] = -(gamma.value(0, c, b) * u[0] + gamma.value(1, c, b) * u[1]);
    a[b][2] = u[static_cast<std::size_t>(b)];
  }
  for (int c = 0; c < 2; ++c)
    a[2][c] = -(u[0] * r(0, c) + u[1] * r(1, c));
  return a;
}

Mat3 transport_segment(const ConnectionField& connection, Point from, Point to, const TransportSettings& settings)
{
  const Vec2 d = to - from;
  const double length = norm(d);
  Mat3 y = identity3();
  if (length == 0.0)
    return y;

  // unit chart speed along the segment
  const Vec2 u{d[0] / length, d[1] / length};
  const int steps = std::max(1, static_cast<int>(std::ceil(length * settings.steps_per_unit - 1e-9)));
  const double h = length / steps;
  auto at = [&](double s) {
    const Point p{from.x + s * u[0], from.y + s * u[1]};
    if (!connection.contains(p))
      throw IntegrationError("parallel transport left the domain", p, s);
    return transport_coefficient(connection, p, u, settings.ricci_tol);
  };

  Mat3 a_start = at(0.0);
  for (int k = 0; k < steps; ++k)
  {
    const double s0 = k * h;
    const Mat3 a_mid = at(s0 + 0.5 * h);
    const Mat3 a_end = at(k + 1 == steps ? length : s0 + h);
    const Mat3 k1 = multiply(a_start, y);
    const Mat3 k2 = multiply(a_mid, axpy(y, 0.5 * h, k1));
    const Mat3 k3 = multiply(a_mid, axpy(y, 0.5 * h, k2));
    const Mat3 k4 = multiply(a_end, axpy(y, h, k3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        y[i][j] += h / 6.0 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
    a_start = a_end;
  }
  return y;
}

Mat3 transport_polyline(const ConnectionField& connection, std::span<const Point> vertices,
                        const TransportSettings& settings)
{
  Mat3 total = identity3();
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    total = multiply(transport_segment(connection, vertices[i], vertices[i + 1], settings), total);
  return total;
}

std::vector<Mat3> transport_along_curve(const ConnectionField& connection, const Curve& curve,
                                        const TransportSettings& settings)
{
  auto coefficient = [&](const PathState& s) {
    if (!connection.contains(s.point))
      throw IntegrationError("parallel transport left the domain", s.point, s.t);
    return transport_coefficient(connection, s.point, s.velocity, settings.ricci_tol);
  };
  return propagate_along_curve<3>(curve, coefficient, settings.steps_per_unit);
}

TractorValue apply_matrix(const Mat3& m, const TractorValue& v)
{
  const std::array<double, 3> in{v.x[0], v.x[1], v.rho};
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out[static_cast<std::size_t>(i)] += m[i][j] * in[static_cast<std::size_t>(j)];
  return {{out[0], out[1]}, out[2]};
}

TractorValue transport_tractor(const ConnectionField& connection, const Curve& curve, const TractorValue& initial,
                               const TransportSettings& settings)
{
  if (curve.samples.empty())
    throw GeometryError("cannot transport along an empty curve");
  return apply_matrix(transport_along_curve(connection, curve, settings).back(), initial);
}

double holonomy_deviation(const ConnectionField& connection, std::span<const Point> loop,
                          const TransportSettings& settings)
{
  std::vector<Point> closed(loop.begin(), loop.end());
  if (!closed.empty() && !(closed.front() == closed.back()))
    closed.push_back(closed.front());
  return max_abs_diff(transport_polyline(connection, closed, settings), identity3());
}

double sampled_sup_y(const ConnectionField& connection, const Box& region, int grid, double ricci_tol)
{
  double sup = 0.0;
  const int n = std::max(grid, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
    {
      const Point p{region.xlo + (region.xhi - region.xlo) * i / (n - 1),
                    region.ylo + (region.yhi - region.ylo) * j / (n - 1)};
      if (!connection.contains(p))
        continue;
      sup = std::max(sup, y_tensor(connection, p, ricci_tol).sup_norm());
    }
  return sup;
}

ParallelFrame::ParallelFrame(ConnectionField connection, Point base, FrameOptions options)
    : connection_(std::move(connection)), base_(base), options_(options), basis_(identity3())
{
}

Mat3 ParallelFrame::sections_at(Point target) const
{
  if (target == base_)
    return basis_;
  return multiply(transport_segment(connection_, base_, target, options_.transport), basis_);
}

ParallelFrame parallel_frame(const ConnectionField& connection, Point base, const FrameOptions& options)
{
  if (!connection.contains(base))
    throw DomainError("frame base lies outside the domain", base);
  const double sup_y = sampled_sup_y(connection, options.region, options.flatness_grid, options.transport.ricci_tol);
  if (sup_y > options.flatness_threshold)
  {
    std::ostringstream os;
    os.precision(6);
    os << "connection is not projectively flat on the working region: sampled sup|Y| = " << sup_y
       << " exceeds " << options.flatness_threshold;
    throw NotProjectivelyFlatError(os.str(), sup_y);
  }
  return ParallelFrame(connection, base, options);
}

ProjectivePoint ProjectivePoint::canonical(std::array<double, 3> v)
{
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(n > 0.0))
    throw GeometryError("homogeneous coordinates must not all vanish");
  for (auto& c : v)
    c /= n;
  for (double c : v)
  {
    if (std::abs(c) > 1e-12)
    {
      if (c < 0.0)
        for (auto& d : v)
          d = -d;
      break;
    }
  }
  ProjectivePoint out;
  out.h = v;
  return out;
}

ProjectivePoint developing_map(const ParallelFrame& frame, Point x)
{
  const Mat3 s = frame.sections_at(x);
  const auto& r0 = s[0];
  const auto& r1 = s[1];
  const std::array<double, 3> k{r0[1] * r1[2] - r0[2] * r1[1], r0[2] * r1[0] - r0[0] * r1[2],
                                r0[0] * r1[1] - r0[1] * r1[0]};
  if (std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) <= 1e-10)
    throw DegenerateFrameError("tangent parts of the frame sections have rank < 2");
  return ProjectivePoint::canonical(k);
}

Point affine_chart(const ProjectivePoint& p)
{
  if (std::abs(p.h[2]) <= 1e-10)
    throw ChartError("point lies on the line at infinity of the affine chart");
  return {p.h[0] / p.h[2], p.h[1] / p.h[2]};
}

Point straightened_coordinates(const ParallelFrame& frame, Point x)
{
  const Point c = affine_chart(developing_map(frame, x));
  return {-c.x, -c.y};
}

}  // namespace projgeom

#include "projgeom/geodesics.hpp"

#include "projgeom/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace projgeom {

namespace {

using State = std::array<double, 4>;  // x, y, U^0, U^1

struct StageResult
{
  bool ok = true;
  Point offending;
  State derivative{};
};

class GeodesicRhs
{
public:
  GeodesicRhs(const ConnectionField& connection, const IntegratorSettings& settings)
      : connection_(connection), settings_(settings)
  {
  }

  StageResult operator()(const State& s) const
  {
    StageResult r;
    const Point p{s[0], s[1]};
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
    {
      r.derivative.fill(std::numeric_limits<double>::quiet_NaN());
      return r;
    }
    if (!inside(p))
    {
      r.ok = false;
      r.offending = p;
      return r;
    }
    Christoffel<0> gamma;
    try
    {
      gamma = connection_.at<0>(p);
    }
    catch (const DegenerateMetricError&)
    {
      // numerically singular metric: reported as a blow-up by the caller
      r.derivative.fill(std::numeric_limits<double>::quiet_NaN());
      return r;
    }
    r.derivative[0] = s[2];
    r.derivative[1] = s[3];
    for (int c = 0; c < 2; ++c)
    {
      double acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          acc += gamma.value(a, b, c) * s[static_cast<std::size_t>(2 + a)] * s[static_cast<std::size_t>(2 + b)];
      r.derivative[static_cast<std::size_t>(2 + c)] = -acc;
    }
    return r;
  }

  bool inside(Point p) const
  {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      return true;  // reported as a blow-up by the caller
    if (settings_.region && !settings_.region->contains(p))
      return false;
    return connection_.contains(p);
  }

private:
  const ConnectionField& connection_;
  const IntegratorSettings& settings_;
};

State axpy(const State& y, double h, const State& k)
{
  State r = y;
  for (std::size_t i = 0; i < 4; ++i)
    r[i] += h * k[i];
  return r;
}

CurveSample to_sample(double t, const State& s) { return {t, {s[0], s[1]}, {s[2], s[3]}}; }

bool healthy(const State& s, double escape_radius)
{
  for (double v : s)
    if (!std::isfinite(v))
      return false;
  return std::abs(s[0]) <= escape_radius && std::abs(s[1]) <= escape_radius;
}

std::string format_point(const char* what, Point p, double t)
{
  std::ostringstream os;
  os.precision(12);
  os << what << " at t = " << t << ", (" << p.x << ", " << p.y << ")";
  return os.str();
}

// Dormand-Prince 5(4) tableau.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB4[7] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

std::vector<Point> Curve::points() const
{
  std::vector<Point> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples)
    pts.push_back(s.point);
  return pts;
}

Curve geodesic_ivp(const ConnectionField& connection, Point start, Vec2 direction, double t_max,
                   const IntegratorSettings& settings)
{
  if (!(norm(direction) > 0.0))
    throw PreconditionError("geodesic direction must be nonzero");
  if (!(t_max > 0.0))
    throw PreconditionError("geodesic t_max must be positive");

  const GeodesicRhs rhs(connection, settings);
  if (!rhs.inside(start))
    throw DomainError("geodesic start lies outside the domain", start);

  Curve curve;
  State y{start.x, start.y, direction[0], direction[1]};
  double t = 0.0;
  curve.samples.push_back(to_sample(t, y));
  const int stride = std::max(1, settings.stride);

  auto truncate = [&](Point where) {
    curve.truncated = true;
    curve.exit_point = where;
    if (curve.samples.back().t != t)
      curve.samples.push_back(to_sample(t, y));
  };
  auto fail = [&](const char* what, Point where) {
    if (!std::isfinite(where.x) || !std::isfinite(where.y))
      where = {y[0], y[1]};
    if (curve.samples.back().t != t)
      curve.samples.push_back(to_sample(t, y));
    throw GeodesicIntegrationError(format_point(what, where, t), where, t, curve);
  };

  if (!settings.adaptive)
  {
    const long steps = std::max(1L, static_cast<long>(std::ceil(t_max * settings.steps_per_unit - 1e-9)));
    const double h = t_max / static_cast<double>(steps);
    for (long n = 0; n < steps; ++n)
    {
      const auto k1 = rhs(y);
      const auto k2 = k1.ok ? rhs(axpy(y, 0.5 * h, k1.derivative)) : k1;
      const auto k3 = k2.ok ? rhs(axpy(y, 0.5 * h, k2.derivative)) : k2;
      const auto k4 = k3.ok ? rhs(axpy(y, h, k3.derivative)) : k3;
      if (!k4.ok)
      {
        truncate(k4.offending);
        return curve;
      }
      State next = y;
      for (std::size_t i = 0; i < 4; ++i)
        next[i] += h / 6.0 * (k1.derivative[i] + 2.0 * k2.derivative[i] + 2.0 * k3.derivative[i] + k4.derivative[i]);
      if (!healthy(next, settings.escape_radius))
        fail("geodesic blew up", {next[0], next[1]});
      if (!rhs.inside({next[0], next[1]}))
      {
        truncate({next[0], next[1]});
        return curve;
      }
      y = next;
      t = (n + 1 == steps) ? t_max : static_cast<double>(n + 1) * h;
      if ((n + 1) % stride == 0 || n + 1 == steps)
        curve.samples.push_back(to_sample(t, y));
    }
    return curve;
  }

  double h = std::min(t_max, 1.0 / std::max(1, settings.steps_per_unit));
  long accepted = 0;
  Point last_offending = start;
  bool hit_boundary = false;
  while (t < t_max)
  {
    h = std::min(h, t_max - t);
    if (h < settings.min_step)
    {
      if (hit_boundary)
      {
        truncate(last_offending);
        return curve;
      }
      fail("adaptive step size collapsed", {y[0], y[1]});
    }

    std::array<State, 7> k{};
    bool ok = true;
    for (std::size_t stage = 0; stage < 7 && ok; ++stage)
    {
      State ys = y;
      for (std::size_t j = 0; j < stage; ++j)
        for (std::size_t i = 0; i < 4; ++i)
          ys[i] += h * kA[stage][j] * k[j][i];
      const auto r = rhs(ys);
      if (!r.ok)
      {
        ok = false;
        last_offending = r.offending;
      }
      k[stage] = r.derivative;
    }
    if (!ok)
    {
      hit_boundary = true;
      h *= 0.5;
      continue;
    }

    State y5 = y;
    double err = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
    {
      double e = -h * kB4[6] * k[6][i];
      for (std::size_t s = 0; s < 6; ++s)
      {
        y5[i] += h * kA[6][s] * k[s][i];
        e += h * (kA[6][s] - kB4[s]) * k[s][i];
      }
      err = std::max(err, std::abs(e) / (settings.tolerance * (1.0 + std::abs(y[i]))));
    }
    if (!healthy(y5, settings.escape_radius) || !std::isfinite(err))
      fail("geodesic blew up", {y5[0], y5[1]});

    if (err <= 1.0)
    {
      if (!rhs.inside({y5[0], y5[1]}))
      {
        hit_boundary = true;
        last_offending = {y5[0], y5[1]};
        h *= 0.5;
        continue;
      }
      y = y5;
      t += h;
      ++accepted;
      hit_boundary = false;
      if (accepted % stride == 0 || t >= t_max)
        curve.samples.push_back(to_sample(t, y));
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  return curve;
}

double unparam_geodesic_residual(const ConnectionField& connection, const Curve& curve)
{
  const auto n = curve.size();
  if (n < 3)
    throw PreconditionError("unparameterised residual needs at least 3 samples");

  double sup = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i)
  {
    const std::size_t lo = i >= 2 ? i - 2 : 0;
    const std::size_t hi = std::min(n - 1, i + 2);

    // Fornberg weights for the first derivative at t_i over samples lo..hi.
    const std::size_t m = hi - lo + 1;
    std::vector<std::array<double, 2>> w(m, {0.0, 0.0});
    {
      const double z = curve.samples[i].t;
      double c1 = 1.0;
      double c4 = curve.samples[lo].t - z;
      w[0][0] = 1.0;
      for (std::size_t a = 1; a < m; ++a)
      {
        const std::size_t mn = std::min<std::size_t>(a, 1);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = curve.samples[lo + a].t - z;
        for (std::size_t b = 0; b < a; ++b)
        {
          const double c3 = curve.samples[lo + a].t - curve.samples[lo + b].t;
          c2 *= c3;
          if (b == a - 1)
          {
            for (std::size_t k = mn; k >= 1; --k)
              w[a][k] = c1 * (static_cast<double>(k) * w[a - 1][k - 1] - c5 * w[a - 1][k]) / c2;
            w[a][0] = -c1 * c5 * w[a - 1][0] / c2;
          }
          for (std::size_t k = mn; k >= 1; --k)
            w[b][k] = (c4 * w[b][k] - static_cast<double>(k) * w[b][k - 1]) / c3;
          w[b][0] = c4 * w[b][0] / c3;
        }
        c1 = c2;
      }
    }

    Vec2 du{0.0, 0.0};
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t c = 0; c < 2; ++c)
        du[c] += w[a][1] * curve.samples[lo + a].velocity[c];

    const auto& s = curve.samples[i];
    const double speed = norm(s.velocity);
    if (!(speed > 0.0))
      throw GeometryError("degenerate velocity in unparameterised residual");
    const auto gamma = connection.at<0>(s.point);
    Vec2 acc = du;
    for (int c = 0; c < 2; ++c)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          acc[static_cast<std::size_t>(c)] +=
              gamma.value(a, b, c) * s.velocity[static_cast<std::size_t>(a)] * s.velocity[static_cast<std::size_t>(b)];
    const double cross = s.velocity[0] * acc[1] - s.velocity[1] * acc[0];
    sup = std::max(sup, std::abs(cross) / (speed * speed * speed));
  }
  return sup;
}

PathState hermite(const CurveSample& a, const CurveSample& b, double t)
{
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1, d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
  PathState out;
  out.t = t;
  out.point.x = h00 * a.point.x + h10 * h * a.velocity[0] + h01 * b.point.x + h11 * h * b.velocity[0];
  out.point.y = h00 * a.point.y + h10 * h * a.velocity[1] + h01 * b.point.y + h11 * h * b.velocity[1];
  for (std::size_t c = 0; c < 2; ++c)
    out.velocity[c] = (d00 * a.point[static_cast<int>(c)] + d01 * b.point[static_cast<int>(c)]) / h +
                      d10 * a.velocity[c] + d11 * b.velocity[c];
  return out;
}

std::vector<JacobiSample> jacobi_f_solutions(const ConnectionField& connection, const Curve& geodesic,
                                             double f0, double fdot0, int steps_per_unit)
{
  auto coefficient = [&connection](const PathState& s) {
    const auto r = ricci_jet_at<0>(connection, s.point);
    double ruu = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        ruu += r(a, b).value() * s.velocity[static_cast<std::size_t>(a)] * s.velocity[static_cast<std::size_t>(b)];
    return SquareMatrix<2>{{{0.0, 1.0}, {-ruu, 0.0}}};
  };
  const auto fundamental = propagate_along_curve<2>(geodesic, coefficient, steps_per_unit);
  std::vector<JacobiSample> out;
  out.reserve(fundamental.size());
  for (std::size_t i = 0; i < fundamental.size(); ++i)
  {
    const auto& m = fundamental[i];
    out.push_back({geodesic.samples[i].t, m[0][0] * f0 + m[0][1] * fdot0, m[1][0] * f0 + m[1][1] * fdot0});
  }
  return out;
}

double collinearity_residual(std::span<const Point> points)
{
  if (points.size() < 3)
    throw PreconditionError("collinearity residual needs at least 3 points");

  double xlo = points[0].x, xhi = xlo, ylo = points[0].y, yhi = ylo;
  double mx = 0.0, my = 0.0;
  for (const auto& p : points)
  {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
    mx += p.x;
    my += p.y;
  }
  const double diag = std::hypot(xhi - xlo, yhi - ylo);
  if (!(diag > 0.0))
    throw GeometryError("collinearity residual of coincident points is undefined");
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points)
  {
    const double dx = p.x - mx, dy = p.y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  // principal axis of the scatter matrix; the fitted line's normal is perpendicular to it
  const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const double nx = -std::sin(theta), ny = std::cos(theta);
  double worst = 0.0;
  for (const auto& p : points)
    worst = std::max(worst, std::abs((p.x - mx) * nx + (p.y - my) * ny));
  return worst / diag;
}

namespace {

std::vector<Point> cut_at_length(const std::vector<Point>& pts, double length)
{
  std::vector<Point> out{pts.front()};
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
  {
    const double seg = norm(pts[i] - pts[i - 1]);
    if (acc + seg >= length)
    {
      const double f = seg > 0.0 ? (length - acc) / seg : 0.0;
      out.push_back({pts[i - 1].x + f * (pts[i].x - pts[i - 1].x), pts[i - 1].y + f * (pts[i].y - pts[i - 1].y)});
      return out;
    }
    acc += seg;
    out.push_back(pts[i]);
  }
  return out;
}

double polyline_length(const std::vector<Point>& pts)
{
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    acc += norm(pts[i] - pts[i - 1]);
  return acc;
}

double distance_to_polyline(Point p, const std::vector<Point>& line)
{
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < line.size(); ++i)
  {
    const Vec2 d = line[i + 1] - line[i];
    const Vec2 w = p - line[i];
    const double len2 = d[0] * d[0] + d[1] * d[1];
    const double f = len2 > 0.0 ? std::clamp((w[0] * d[0] + w[1] * d[1]) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::hypot(w[0] - f * d[0], w[1] - f * d[1]));
  }
  if (line.size() == 1)
    best = norm(p - line[0]);
  return best;
}

}  // namespace

double trace_hausdorff(const Curve& a, const Curve& b)
{
  if (a.size() < 2 || b.size() < 2)
    throw GeometryError("trace comparison needs at least two samples per curve");
  const auto pa = a.points();
  const auto pb = b.points();
  const double length = std::min(polyline_length(pa), polyline_length(pb));
  const auto ca = cut_at_length(pa, length);
  const auto cb = cut_at_length(pb, length);
  double worst = 0.0;
  for (const auto& p : ca)
    worst = std::max(worst, distance_to_polyline(p, cb));
  for (const auto& p : cb)
    worst = std::max(worst, distance_to_polyline(p, ca));
  return worst;
}

}  // namespace projgeom

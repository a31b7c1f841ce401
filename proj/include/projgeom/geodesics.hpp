#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "projgeom/fields.hpp"

namespace projgeom {

struct CurveSample
{
  double t = 0.0;
  Point point;
  Vec2 velocity{};
};

// Sampled curve: strictly increasing t, nonzero velocity at every sample.
struct Curve
{
  std::vector<CurveSample> samples;
  bool truncated = false;             // stopped at a domain/region exit
  std::optional<Point> exit_point;    // first offending point when truncated

  std::vector<Point> points() const;
  std::size_t size() const { return samples.size(); }
};

struct IntegratorSettings
{
  int steps_per_unit = 1000;   // fixed-step RK4 resolution
  int stride = 1;              // keep every stride-th step
  bool adaptive = false;       // Dormand-Prince 5(4) instead of fixed RK4
  double tolerance = 1e-9;     // adaptive error tolerance
  double min_step = 1e-12;     // adaptive step-size floor
  double escape_radius = 1e8;  // |coordinates| beyond this is a blow-up
  std::optional<Box> region;   // optional working region; leaving it truncates like a domain exit
};

// Thrown when a geodesic integration fails outright (blow-up, non-finite state, step collapse).
// `partial` holds every sample accepted before the failure.
class GeodesicIntegrationError : public IntegrationError
{
public:
  GeodesicIntegrationError(const std::string& what, Point where, double param, Curve partial_curve)
      : IntegrationError(what, where, param), partial(std::move(partial_curve))
  {
  }
  Curve partial;
};

// Affinely parameterised geodesic x'' + Gamma_ab^c x'^a x'^b = 0 from `start` with initial
// velocity `direction`, for t in [0, t_max]. Domain or region exit truncates the curve.
Curve geodesic_ivp(const ConnectionField& connection, Point start, Vec2 direction, double t_max,
                   const IntegratorSettings& settings = {});

// sup over interior samples of |U x A| / |U|^3 with A = dU/dt + Gamma(U, U) (dU/dt by
// finite differences along the samples). Zero exactly for unparameterised geodesics.
double unparam_geodesic_residual(const ConnectionField& connection, const Curve& curve);

// Position and velocity on a curve between samples (cubic Hermite).
struct PathState
{
  double t = 0.0;
  Point point;
  Vec2 velocity{};
};

PathState hermite(const CurveSample& a, const CurveSample& b, double t);

template <std::size_t K>
using SquareMatrix = std::array<std::array<double, K>, K>;

// Fundamental matrix of y' = A(path(t)) y along a sampled curve, one entry per sample (identity
// at the first). Each sample interval is split into ceil(dt * steps_per_unit) RK4 steps, with
// intermediate states taken from the Hermite interpolant.
template <std::size_t K, class CoefficientFn>
std::vector<SquareMatrix<K>> propagate_along_curve(const Curve& curve, CoefficientFn&& coefficient,
                                                   int steps_per_unit)
{
  std::vector<SquareMatrix<K>> out;
  out.reserve(curve.size());
  SquareMatrix<K> y{};
  for (std::size_t i = 0; i < K; ++i)
    y[i][i] = 1.0;
  if (curve.samples.empty())
    return out;
  out.push_back(y);

  auto apply = [](const SquareMatrix<K>& a, const SquareMatrix<K>& m) {
    SquareMatrix<K> r{};
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t k = 0; k < K; ++k)
      {
        const double aik = a[i][k];
        if (aik == 0.0)
          continue;
        for (std::size_t j = 0; j < K; ++j)
          r[i][j] += aik * m[k][j];
      }
    return r;
  };
  auto axpy = [](const SquareMatrix<K>& m, double s, const SquareMatrix<K>& d) {
    SquareMatrix<K> r = m;
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j)
        r[i][j] += s * d[i][j];
    return r;
  };

  for (std::size_t n = 0; n + 1 < curve.size(); ++n)
  {
    const auto& s0 = curve.samples[n];
    const auto& s1 = curve.samples[n + 1];
    const double span = s1.t - s0.t;
    const int steps = std::max(1, static_cast<int>(std::ceil(span * steps_per_unit - 1e-9)));
    const double h = span / steps;
    SquareMatrix<K> a_start = coefficient(PathState{s0.t, s0.point, s0.velocity});
    for (int k = 0; k < steps; ++k)
    {
      const double t0 = s0.t + k * h;
      const SquareMatrix<K> a_mid = coefficient(hermite(s0, s1, t0 + 0.5 * h));
      const SquareMatrix<K> a_end = (k + 1 == steps) ? coefficient(PathState{s1.t, s1.point, s1.velocity})
                                                     : coefficient(hermite(s0, s1, t0 + h));
      const auto k1 = apply(a_start, y);
      const auto k2 = apply(a_mid, axpy(y, 0.5 * h, k1));
      const auto k3 = apply(a_mid, axpy(y, 0.5 * h, k2));
      const auto k4 = apply(a_end, axpy(y, h, k3));
      for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j)
          y[i][j] += h / 6.0 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
      a_start = a_end;
    }
    out.push_back(y);
  }
  return out;
}

// Solutions of f'' + R_ab U^a U^b f = 0 along an affinely parameterised geodesic.
struct JacobiSample
{
  double t = 0.0;
  double f = 0.0;
  double fdot = 0.0;
};

std::vector<JacobiSample> jacobi_f_solutions(const ConnectionField& connection, const Curve& geodesic,
                                             double f0, double fdot0, int steps_per_unit = 1000);

// Max perpendicular distance from the total-least-squares line, over the bounding-box diagonal.
double collinearity_residual(std::span<const Point> points);

// Symmetric vertex Hausdorff distance between two traces sharing a start point, after cutting
// both to their common chart arclength.
double trace_hausdorff(const Curve& a, const Curve& b);

}  // namespace projgeom

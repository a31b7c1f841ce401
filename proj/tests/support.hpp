#pragma once

// Shared generators and independent closed-form oracles for the test suites. Nothing here calls
// into the jet/connection machinery it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "projgeom/fields.hpp"
#include "projgeom/liouville.hpp"

namespace projgeom::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Point random_point(std::mt19937_64& rng, const Box& box)
{
  return {uniform(rng, box.xlo, box.xhi), uniform(rng, box.ylo, box.yhi)};
}

// Largest coefficient difference, relative to 1 + |coefficient|.
template <int N>
double jet_distance(const Jet<N>& a, const Jet<N>& b)
{
  double d = 0.0;
  for (int k = 0; k <= N; ++k)
    for (int j = 0; j <= k; ++j)
      d = std::max(d, std::abs(a.coeff(k - j, j) - b.coeff(k - j, j)) / (1.0 + std::abs(b.coeff(k - j, j))));
  return d;
}

struct ValidLiouville
{
  LiouvilleParams params;
  Point point;
};

// Rejection sampler: params uniform in [-1,1]^6 and a point in [-0.5,0.5]^2, accepted when the
// point is in the positivity domain and the squared denominator exceeds 1e-6 there.
inline ValidLiouville random_valid_liouville(std::mt19937_64& rng)
{
  for (;;)
  {
    LiouvilleParams k{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1),
                      uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
    const Point p{uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5)};
    if (!domain_contains(k, p))
      continue;
    const double det = liouville_terms(k, p).det();
    if (det * det > 1e-6)
      return {k, p};
  }
}

// Quadratic polynomial one-form with coefficients in [-amp, amp].
struct PolyCovector
{
  std::array<std::array<double, 6>, 2> c{};

  template <class T>
  std::array<T, 2> operator()(const T& x, const T& y) const
  {
    std::array<T, 2> out;
    for (std::size_t a = 0; a < 2; ++a)
    {
      const auto& k = c[a];
      out[a] = k[0] + k[1] * x + k[2] * y + k[3] * x * x + k[4] * x * y + k[5] * y * y;
    }
    return out;
  }
};

inline PolyCovector random_poly_covector(std::mt19937_64& rng, double amp)
{
  PolyCovector u;
  for (auto& row : u.c)
    for (auto& v : row)
      v = uniform(rng, -amp, amp);
  return u;
}

//--------------------------------------------------------------------------------------------------
// Conformal metrics e^{2 lambda} (dx^2 + dy^2):
//   Gamma_ab^c = delta_a^c d_b lambda + delta_b^c d_a lambda - delta_ab d_c lambda
//   K = -e^{-2 lambda} Laplacian(lambda)

// d lambda for the Poincare disc, lambda = log(2 / (1 - r^2)).
inline Vec2 poincare_dlambda(Point p)
{
  const double w = 1.0 - p.x * p.x - p.y * p.y;
  return {2.0 * p.x / w, 2.0 * p.y / w};
}

inline double conformal_christoffel(const Vec2& dl, int a, int b, int c)
{
  const auto i = [](int k) { return static_cast<std::size_t>(k); };
  return (a == c ? dl[i(b)] : 0.0) + (b == c ? dl[i(a)] : 0.0) - (a == b ? dl[i(c)] : 0.0);
}

// K by a 4th-order finite-difference Laplacian of lambda.
inline double conformal_k_fd(const std::function<double(Point)>& lambda, Point p, double h = 1e-3)
{
  auto d2 = [&](double dx, double dy) {
    const double f2p = lambda({p.x + 2 * dx, p.y + 2 * dy}), f1p = lambda({p.x + dx, p.y + dy});
    const double f1m = lambda({p.x - dx, p.y - dy}), f2m = lambda({p.x - 2 * dx, p.y - 2 * dy});
    return (-f2p + 16 * f1p - 30 * lambda(p) + 16 * f1m - f2m) / (12 * h * h);
  };
  return -std::exp(-2.0 * lambda(p)) * (d2(h, 0) + d2(0, h));
}

// Curvature of the bump metric exp(2 x^2 y) delta: lambda = x^2 y, Laplacian = 2y.
inline double bump_k(Point p) { return -2.0 * p.y * std::exp(-2.0 * p.x * p.x * p.y); }

inline double bump_lambda(Point p) { return p.x * p.x * p.y; }

}  // namespace projgeom::testing

#include "projgeom/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace projgeom {

QuadratureRule gauss_legendre_unit(int n)
{
  if (n < 1)
    throw std::invalid_argument("quadrature needs at least one node");

  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));

  // Newton on P_n from the Chebyshev-like initial guess; roots are symmetric about 0.
  for (int i = 0; i < (n + 1) / 2; ++i)
  {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter)
    {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k)
      {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16)
        break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - z);
    rule.nodes[hi] = 0.5 * (1.0 + z);
    rule.weights[lo] = rule.weights[hi] = 0.5 * w;
  }
  return rule;
}

}  // namespace projgeom

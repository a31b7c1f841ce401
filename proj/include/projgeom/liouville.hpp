#pragma once

#include "projgeom/fields.hpp"

namespace projgeom {

// Coefficients of the six-parameter family of metrics whose geodesics are straight lines:
//
//   g = (B dx^2 - 2 C dx dy + A dy^2) / (A B - C^2)^2,
//   A = r x^2 + 2 p x + s,  B = r y^2 + 2 q y + u,  C = r x y + q x + p y + t.
struct LiouvilleParams
{
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0, t = 0.0, u = 0.0;

  static LiouvilleParams thales() { return {0.0, 0.0, 1.0, 1.0, 0.0, 1.0}; }
  static LiouvilleParams beltrami() { return {0.0, 0.0, -1.0, 1.0, 0.0, 1.0}; }
  static LiouvilleParams flat() { return {0.0, 0.0, 0.0, 1.0, 0.0, 1.0}; }

  friend bool operator==(const LiouvilleParams&, const LiouvilleParams&) = default;
};

// Strict tolerance on the numerator's principal minors in domain_contains.
inline constexpr double kLiouvilleDomainTolerance = 1e-12;

struct LiouvilleTerms
{
  double a, b, c;
  double det() const { return a * b - c * c; }
};

LiouvilleTerms liouville_terms(const LiouvilleParams& params, Point pt);

// Positive definiteness of the numerator: B > tol and A B - C^2 > tol.
bool domain_contains(const LiouvilleParams& params, Point pt);

// Constant Gaussian curvature of the family member.
double k_formula(const LiouvilleParams& params);

// Throws DegenerateParamsError when A B - C^2 vanishes at every probe point.
void check_nondegenerate(const LiouvilleParams& params);

MetricField liouville_metric(const LiouvilleParams& params);

// (1 + y^2) dx^2 - 2 x y dx dy + (1 + x^2) dy^2 over (1 + x^2 + y^2)^2; defined everywhere, K = 1.
MetricField thales();
// (1 - y^2) dx^2 + 2 x y dx dy + (1 - x^2) dy^2 over (1 - x^2 - y^2)^2; unit disc, K = -1.
MetricField beltrami();

}  // namespace projgeom

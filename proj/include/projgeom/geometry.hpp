#pragma once

#include <optional>

#include "projgeom/fields.hpp"

namespace projgeom {

// Minimum leading principal minors for a metric to count as positive definite.
inline constexpr double kDegeneracyTolerance = 1e-12;
// Default gate on |R_01 - R_10| (relative to 1 + max|R|) wherever a symmetric Ricci is assumed.
inline constexpr double kRicciSymmetryTolerance = 1e-8;

void require_positive_definite(const Sym2<double>& g, Point where);

//--------------------------------------------------------------------------------------------------
// Levi-Civita connection
//
// Gamma_ab^c = 1/2 g^cd (d_a g_bd + d_b g_ad - d_d g_ab), computed on jets so that a metric jet
// of order N + 1 yields Christoffel jets of order N.

template <int N>
Christoffel<N> levi_civita_jet(const Sym2<Jet<N + 1>>& g, Point where);

ConnectionField levi_civita(const MetricField& metric);
Christoffel<2> levi_civita(const MetricField& metric, Point p);

// sup_abc |nabla_a g_bc| from first-order jets; vanishes for the Levi-Civita connection.
double metric_compat_residual(const MetricField& metric, const ConnectionField& connection, Point p);

//--------------------------------------------------------------------------------------------------
// Ricci tensor, normalised so that (nabla_a nabla_b - nabla_b nabla_a) X^b = -R_ab X^b:
//   R_ab = d_c Gamma_ab^c - d_a Gamma_cb^c + Gamma_cd^c Gamma_ab^d - Gamma_ad^c Gamma_cb^d

template <int N>
Mat2<Jet<N>> ricci_jet(const Christoffel<N + 1>& gamma);

// Ricci jet of a connection at p, using its Ricci override when it has one.
template <int N>
Mat2<Jet<N>> ricci_jet_at(const ConnectionField& connection, Point p);

struct RicciValue
{
  Mat2<double> r;
  std::optional<Mat2<Jet<1>>> jets;  // first derivatives, when requested

  double operator()(int a, int b) const { return r(a, b); }
  double asymmetry() const { return std::abs(r(0, 1) - r(1, 0)); }
  double max_abs() const;
  bool is_symmetric(double tol = kRicciSymmetryTolerance) const { return asymmetry() <= tol * (1.0 + max_abs()); }
};

RicciValue ricci(const ConnectionField& connection, Point p, bool with_jets = false);

void require_symmetric_ricci(const RicciValue& ricci, Point where, double tol);

//--------------------------------------------------------------------------------------------------
// Projective change: Gamma^_ab^c = Gamma_ab^c + delta_a^c U_b + delta_b^c U_a. The result carries
// jets up to the lower of the two inputs' orders.
ConnectionField projective_change(const ConnectionField& connection, const CovectorField& upsilon);

// R^_ab = R_ab - 2 nabla_a U_b + nabla_b U_a + U_a U_b with nabla the input connection.
RicciValue ricci_change(const ConnectionField& connection, const CovectorField& upsilon, Point p);

//--------------------------------------------------------------------------------------------------
// Ricci symmetrisation

// An antisymmetric 2-form in the plane is a single function w = omega_01; jets to order 1.
using TwoFormFn = std::function<Jet<1>(Point)>;

// Radial-homotopy primitive: Upsilon_b(x) = int_0^1 t omega_ab(base + t v) v^a dt, v = x - base,
// so that d_a Upsilon_b - d_b Upsilon_a = omega_ab on a domain star-shaped about `base`.
// Uses 32-point Gauss-Legendre; the result carries jets to order 1.
CovectorField radial_primitive(TwoFormFn omega, Point base, DomainFn domain = everywhere);

// Upsilon with d_0 U_1 - d_1 U_0 = (R_01 - R_10) / 3, which makes ricci_change symmetric.
CovectorField symmetrizing_upsilon(const ConnectionField& connection, Point base);

//--------------------------------------------------------------------------------------------------
// Y_abc = nabla_a R_bc - nabla_b R_ac. Only Y_01c is stored; the rest follows by antisymmetry.
struct YTensorValue
{
  Vec2 y01{};

  double operator()(int a, int b, int c) const
  {
    if (a == b)
      return 0.0;
    return a == 0 ? y01[static_cast<std::size_t>(c)] : -y01[static_cast<std::size_t>(c)];
  }
  double sup_norm() const { return std::max(std::abs(y01[0]), std::abs(y01[1])); }
};

YTensorValue y_tensor(const ConnectionField& connection, Point p, double ricci_tol = kRicciSymmetryTolerance);

//--------------------------------------------------------------------------------------------------
// Gaussian curvature K = g^ab R_ab / 2 of the Levi-Civita connection, with sup|R_ab - K g_ab|.
struct CurvatureValue
{
  double k = 0.0;
  double residual = 0.0;
};

CurvatureValue gaussian_curvature(const MetricField& metric, Point p);

// K with its first derivatives.
Jet<1> gaussian_curvature_jet(const MetricField& metric, Point p);

// sup_c |[nabla_0, nabla_1] X^c - (delta_0^c R_1d - delta_1^c R_0d) X^d| for the
// constant-coefficient extension of X.
double curvature_commutator_residual(const ConnectionField& connection, Point p, Vec2 x);

}  // namespace projgeom

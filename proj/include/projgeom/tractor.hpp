#pragma once

#include <array>
#include <span>

#include "projgeom/geodesics.hpp"
#include "projgeom/geometry.hpp"

namespace projgeom {

//--------------------------------------------------------------------------------------------------
// Rank-3 bundle TM + (scalars) with the connection
//
//   nabla_a (X^b, rho) = (nabla_a X^b - delta_a^b rho, nabla_a rho + R_ab X^b),
//
// defined for connections with symmetric Ricci tensor. Its curvature is (0, Y_abc X^c), so it is
// flat exactly when Y vanishes.

struct TractorValue
{
  Vec2 x{};
  double rho = 0.0;

  friend TractorValue operator+(const TractorValue& a, const TractorValue& b)
  {
    return {{a.x[0] + b.x[0], a.x[1] + b.x[1]}, a.rho + b.rho};
  }
  friend TractorValue operator*(double s, const TractorValue& a) { return {{s * a.x[0], s * a.x[1]}, s * a.rho}; }
  double sup_norm() const { return std::max({std::abs(x[0]), std::abs(x[1]), std::abs(rho)}); }
};

// A tractor section near a point, as first-order jets of its components.
struct TractorJet
{
  std::array<Jet<1>, 2> x;
  Jet<1> rho;

  static TractorJet constant(const TractorValue& v) { return {{Jet<1>(v.x[0]), Jet<1>(v.x[1])}, Jet<1>(v.rho)}; }
};

// Covariant derivative of a section in both coordinate directions.
std::array<TractorValue, 2> tractor_derivative(const ConnectionField& connection, const TractorJet& section, Point p,
                                               double ricci_tol = kRicciSymmetryTolerance);

// (nabla_0 nabla_1 - nabla_1 nabla_0) applied to the constant-coefficient extension of `tractor`.
TractorValue tractor_curvature_residual(const ConnectionField& connection, Point p, const TractorValue& tractor,
                                        double ricci_tol = kRicciSymmetryTolerance);

// Coefficient matrix A of the parallel-transport ODE d/dt (X, rho) = A (X, rho) along velocity u:
//   dX^b/dt = rho u^b - Gamma_ac^b u^a X^c,   drho/dt = -u^a R_ab X^b.
Mat3 transport_coefficient(const ConnectionField& connection, Point p, Vec2 velocity,
                           double ricci_tol = kRicciSymmetryTolerance);

struct TransportSettings
{
  int steps_per_unit = 1000;  // RK4 steps per unit chart length (segments) or parameter (curves)
  double ricci_tol = kRicciSymmetryTolerance;
};

// Transport of the identity: column j is the transported j-th basis tractor.
Mat3 transport_segment(const ConnectionField& connection, Point from, Point to, const TransportSettings& settings = {});
Mat3 transport_polyline(const ConnectionField& connection, std::span<const Point> vertices,
                        const TransportSettings& settings = {});
std::vector<Mat3> transport_along_curve(const ConnectionField& connection, const Curve& curve,
                                        const TransportSettings& settings = {});

TractorValue apply_matrix(const Mat3& m, const TractorValue& v);

// Terminal value of the parallel transport of `initial` along a sampled curve.
TractorValue transport_tractor(const ConnectionField& connection, const Curve& curve, const TractorValue& initial,
                               const TransportSettings& settings = {});

// max |H - I| for the holonomy H around a closed polyline (last vertex joined back to the first).
double holonomy_deviation(const ConnectionField& connection, std::span<const Point> loop,
                          const TransportSettings& settings = {});

//--------------------------------------------------------------------------------------------------
// Parallel frames and the developing map

struct FrameOptions
{
  Box region;                        // working region, star-shaped about the base
  double flatness_threshold = 1e-6;  // sampled sup|Y| allowed on the region
  int flatness_grid = 21;            // samples per axis for the flatness check
  TransportSettings transport;
};

// sup |Y| over the in-domain nodes of a grid x grid lattice covering `region`.
double sampled_sup_y(const ConnectionField& connection, const Box& region, int grid,
                     double ricci_tol = kRicciSymmetryTolerance);

// Three covariant-constant sections, identified with R^3 through their values at the base. The
// fiber basis is ((1,0),0), ((0,1),0), ((0,0),1). Values elsewhere come from transport along the
// straight segment from the base; evaluation is const and reentrant.
class ParallelFrame
{
public:
  ParallelFrame(ConnectionField connection, Point base, FrameOptions options);

  Point base() const { return base_; }
  const Mat3& fiber_basis() const { return basis_; }
  const FrameOptions& options() const { return options_; }

  // Rows (X^0, X^1, rho); columns the three sections.
  Mat3 sections_at(Point target) const;

private:
  ConnectionField connection_;
  Point base_;
  FrameOptions options_;
  Mat3 basis_;
};

// Throws NotProjectivelyFlatError when the sampled sup|Y| exceeds the threshold.
ParallelFrame parallel_frame(const ConnectionField& connection, Point base, const FrameOptions& options);

// Point of RP^2, stored as the unit representative whose first nonzero component is positive.
struct ProjectivePoint
{
  std::array<double, 3> h{0.0, 0.0, 1.0};

  static ProjectivePoint canonical(std::array<double, 3> v);
};

// The line of covariant-constant sections whose tangent part vanishes at x.
ProjectivePoint developing_map(const ParallelFrame& frame, Point x);

// (h0 / h2, h1 / h2); ChartError on the line at infinity.
Point affine_chart(const ProjectivePoint& p);

// Affine image of x in which geodesics are straight: the chart of the developing map composed with
// the point reflection that makes it tangent to the identity at the base.
Point straightened_coordinates(const ParallelFrame& frame, Point x);

}  // namespace projgeom

#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "projgeom/jet.hpp"

namespace projgeom {

// Chart coordinates (x, y) of a point of the surface.
struct Point
{
  double x = 0.0;
  double y = 0.0;

  double operator[](int a) const { return a == 0 ? x : y; }
  friend bool operator==(const Point&, const Point&) = default;
};

using Vec2 = std::array<double, 2>;

inline Point operator+(Point p, const Vec2& v) { return {p.x + v[0], p.y + v[1]}; }
inline Vec2 operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

// Symmetric 2x2 quantity stored by its distinct entries (xx, xy, yy).
template <class T>
struct Sym2
{
  T xx{}, xy{}, yy{};

  const T& operator()(int a, int b) const { return a + b == 0 ? xx : (a + b == 1 ? xy : yy); }
  T& operator()(int a, int b) { return a + b == 0 ? xx : (a + b == 1 ? xy : yy); }
};

// General (not necessarily symmetric) 2x2 quantity, row-major.
template <class T>
struct Mat2
{
  std::array<T, 4> m{};

  const T& operator()(int a, int b) const { return m[static_cast<std::size_t>(2 * a + b)]; }
  T& operator()(int a, int b) { return m[static_cast<std::size_t>(2 * a + b)]; }
};

// Christoffel symbols Gamma_ab^c of a torsion-free connection, each a jet of order N.
// Only the six entries with a <= b are stored, so Gamma_ab^c = Gamma_ba^c is structural.
template <int N>
struct Christoffel
{
  std::array<Jet<N>, 6> g{};

  const Jet<N>& operator()(int a, int b, int c) const { return g[slot(a, b, c)]; }
  Jet<N>& operator()(int a, int b, int c) { return g[slot(a, b, c)]; }

  static constexpr std::size_t slot(int a, int b, int c) { return static_cast<std::size_t>(3 * c + a + b); }

  template <int M>
  Christoffel<M> truncate() const
  {
    Christoffel<M> out;
    for (std::size_t i = 0; i < 6; ++i)
      out.g[i] = g[i].template truncate<M>();
    return out;
  }

  double value(int a, int b, int c) const { return (*this)(a, b, c).value(); }
};

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 identity3()
{
  return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
}

inline double det3(const Mat3& m)
{
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline double max_abs_diff(const Mat3& a, const Mat3& b)
{
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

// Axis-aligned rectangle in the chart.
struct Box
{
  double xlo = -1.0, xhi = 1.0, ylo = -1.0, yhi = 1.0;

  bool contains(const Point& p) const { return p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi; }
  Point center() const { return {0.5 * (xlo + xhi), 0.5 * (ylo + yhi)}; }
};

}  // namespace projgeom

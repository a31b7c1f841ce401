#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace projgeom {

//--------------------------------------------------------------------------------------------------
// Truncated bivariate Taylor polynomial.
//
// A Jet<N> carries the Taylor coefficients c_ij (i + j <= N) of a scalar field about a point, so
// that f(x0 + dx, y0 + dy) = sum c_ij dx^i dy^j + O(|d|^(N+1)). Arithmetic on jets is exact
// truncated polynomial arithmetic: forward-mode differentiation to order N in both chart
// directions. One coefficient is stored per monomial.
//
// Coefficients are stored in graded order: degree k block starts at k(k+1)/2 and holds
// (x^k, x^(k-1) y, ..., y^k).
template <int N>
class Jet
{
  static_assert(N >= 0, "jet order must be non-negative");

public:
  static constexpr int kOrder = N;
  static constexpr std::size_t kSize = static_cast<std::size_t>((N + 1) * (N + 2) / 2);

  constexpr Jet() : c_{} {}
  constexpr Jet(double value) : c_{} { c_[0] = value; }  // NOLINT: implicit constants are handy

  // The coordinate function seeded at `value` along direction `dir` (0 = x, 1 = y).
  static constexpr Jet variable(double value, int dir)
  {
    Jet j(value);
    if constexpr (N >= 1)
      j.c_[dir == 0 ? 1 : 2] = 1.0;
    return j;
  }

  // Build from partial derivatives; `partial(i, j)` must return d^(i+j) f / dx^i dy^j.
  template <class PartialFn>
  static Jet from_partials(PartialFn&& partial)
  {
    Jet j;
    for (int k = 0; k <= N; ++k)
      for (int jy = 0; jy <= k; ++jy)
      {
        const int ix = k - jy;
        j.c_[index(ix, jy)] = partial(ix, jy) / (factorial(ix) * factorial(jy));
      }
    return j;
  }

  static constexpr std::size_t index(int i, int j)
  {
    const int k = i + j;
    return static_cast<std::size_t>(k * (k + 1) / 2 + j);
  }

  constexpr double value() const { return c_[0]; }
  constexpr double coeff(int i, int j) const { return c_[index(i, j)]; }
  constexpr double& coeff(int i, int j) { return c_[index(i, j)]; }

  // d^(i+j) f / dx^i dy^j at the expansion point.
  constexpr double partial(int i, int j) const { return coeff(i, j) * factorial(i) * factorial(j); }

  // Partials by derivative-index lists (each index 0 or 1).
  double d1(int a) const { return partial(a == 0 ? 1 : 0, a == 0 ? 0 : 1); }
  double d2(int a, int b) const
  {
    const int ny = a + b;
    return partial(2 - ny, ny);
  }
  double d3(int a, int b, int c) const
  {
    const int ny = a + b + c;
    return partial(3 - ny, ny);
  }

  // Differentiate along direction `dir`, losing one order.
  Jet<(N > 0 ? N - 1 : 0)> derivative(int dir) const
  {
    static_assert(N > 0, "cannot differentiate an order-0 jet");
    Jet<(N > 0 ? N - 1 : 0)> out;
    for (int k = 1; k <= N; ++k)
      for (int jy = 0; jy <= k; ++jy)
      {
        const int ix = k - jy;
        if (dir == 0 && ix > 0)
          out.coeff(ix - 1, jy) = ix * coeff(ix, jy);
        else if (dir == 1 && jy > 0)
          out.coeff(ix, jy - 1) = jy * coeff(ix, jy);
      }
    return out;
  }

  template <int M>
  Jet<M> truncate() const
  {
    static_assert(M <= N, "truncation cannot raise the order");
    Jet<M> out;
    for (std::size_t i = 0; i < Jet<M>::kSize; ++i)
      out.raw()[i] = c_[i];
    return out;
  }

  constexpr std::array<double, kSize>& raw() { return c_; }
  constexpr const std::array<double, kSize>& raw() const { return c_; }

  Jet& operator+=(const Jet& o)
  {
    for (std::size_t i = 0; i < kSize; ++i)
      c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o)
  {
    for (std::size_t i = 0; i < kSize; ++i)
      c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(double s)
  {
    for (auto& v : c_)
      v *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a)
  {
    for (auto& v : a.c_)
      v = -v;
    return a;
  }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s)
  {
    a.c_[0] += s;
    return a;
  }
  friend Jet operator+(double s, Jet a) { return a + s; }
  friend Jet operator-(Jet a, double s)
  {
    a.c_[0] -= s;
    return a;
  }
  friend Jet operator-(double s, const Jet& a) { return -a + s; }
  friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }
  friend Jet operator/(double s, const Jet& a) { return s * reciprocal(a); }

  friend Jet operator*(const Jet& a, const Jet& b)
  {
    Jet out;
    for (int ka = 0; ka <= N; ++ka)
      for (int ja = 0; ja <= ka; ++ja)
      {
        const double ca = a.coeff(ka - ja, ja);
        if (ca == 0.0)
          continue;
        for (int kb = 0; kb + ka <= N; ++kb)
          for (int jb = 0; jb <= kb; ++jb)
            out.coeff(ka - ja + kb - jb, ja + jb) += ca * b.coeff(kb - jb, jb);
      }
    return out;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  // f(g) for a univariate f given its derivatives f^(k)(g0), k = 0..N.
  friend Jet compose(const Jet& g, const std::array<double, N + 1>& derivs)
  {
    Jet h = g;
    h.c_[0] = 0.0;
    Jet out(derivs[0]);
    Jet power(1.0);
    double inv_fact = 1.0;
    for (int k = 1; k <= N; ++k)
    {
      power = power * h;
      inv_fact /= k;
      out += power * (derivs[static_cast<std::size_t>(k)] * inv_fact);
    }
    return out;
  }

  friend Jet reciprocal(const Jet& g)
  {
    std::array<double, N + 1> d{};
    const double v = g.value();
    double term = 1.0 / v;
    for (int k = 0; k <= N; ++k)
    {
      d[static_cast<std::size_t>(k)] = term;
      term *= -(k + 1) / v;
    }
    return compose(g, d);
  }

  friend Jet exp(const Jet& g)
  {
    std::array<double, N + 1> d{};
    d.fill(std::exp(g.value()));
    return compose(g, d);
  }

  friend Jet log(const Jet& g)
  {
    std::array<double, N + 1> d{};
    const double v = g.value();
    d[0] = std::log(v);
    double term = 1.0 / v;
    for (int k = 1; k <= N; ++k)
    {
      d[static_cast<std::size_t>(k)] = term;
      term *= -k / v;
    }
    return compose(g, d);
  }

  friend Jet pow(const Jet& g, double e)
  {
    std::array<double, N + 1> d{};
    const double v = g.value();
    double coef = 1.0;
    for (int k = 0; k <= N; ++k)
    {
      d[static_cast<std::size_t>(k)] = coef * std::pow(v, e - k);
      coef *= (e - k);
    }
    return compose(g, d);
  }

  friend Jet sqrt(const Jet& g) { return pow(g, 0.5); }

  friend Jet sin(const Jet& g)
  {
    std::array<double, N + 1> d{};
    const double s = std::sin(g.value()), c = std::cos(g.value());
    const double cycle[4] = {s, c, -s, -c};
    for (int k = 0; k <= N; ++k)
      d[static_cast<std::size_t>(k)] = cycle[k % 4];
    return compose(g, d);
  }

  friend Jet cos(const Jet& g)
  {
    std::array<double, N + 1> d{};
    const double s = std::sin(g.value()), c = std::cos(g.value());
    const double cycle[4] = {c, -s, -c, s};
    for (int k = 0; k <= N; ++k)
      d[static_cast<std::size_t>(k)] = cycle[k % 4];
    return compose(g, d);
  }

private:
  static constexpr double factorial(int n)
  {
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
      f *= i;
    return f;
  }

  std::array<double, kSize> c_;
};

// Value and partials to order 3 of a scalar field at a point.
using ScalarJet3 = Jet<3>;

// Plain doubles participate in the same generic expressions as jets.
inline double value_of(double v) { return v; }
template <int N>
double value_of(const Jet<N>& j)
{
  return j.value();
}

}  // namespace projgeom

#pragma once

#include <array>
#include <cstddef>

#include "projgeom/jet.hpp"

namespace projgeom::detail {

// Truncated bivariate Taylor polynomial over an arbitrary scalar type, with the coefficient layout
// of Jet<N>.
template <class T, int N>
struct Series
{
  static constexpr std::size_t kSize = static_cast<std::size_t>((N + 1) * (N + 2) / 2);
  std::array<T, kSize> c{};

  static constexpr std::size_t index(int i, int j) { return Jet<N>::index(i, j); }

  T& at(int i, int j) { return c[index(i, j)]; }
  const T& at(int i, int j) const { return c[index(i, j)]; }

  Series& operator+=(const Series& o)
  {
    for (std::size_t i = 0; i < kSize; ++i)
      c[i] += o.c[i];
    return *this;
  }
  Series& operator-=(const Series& o)
  {
    for (std::size_t i = 0; i < kSize; ++i)
      c[i] -= o.c[i];
    return *this;
  }
  Series& operator*=(const T& s)
  {
    for (auto& v : c)
      v *= s;
    return *this;
  }

  template <int M>
  Series<T, M> truncate() const
  {
    static_assert(M <= N);
    Series<T, M> r;
    for (std::size_t i = 0; i < r.kSize; ++i)
      r.c[i] = c[i];
    return r;
  }

  // d/dx (dir 0) or d/dy (dir 1), one order lower.
  Series<T, N - 1> derivative(int dir) const
  {
    static_assert(N >= 1);
    Series<T, N - 1> r;
    for (int k = 0; k < N; ++k)
      for (int j = 0; j <= k; ++j)
      {
        const int i = k - j;
        r.at(i, j) = dir == 0 ? at(i + 1, j) * T(i + 1) : at(i, j + 1) * T(j + 1);
      }
    return r;
  }

  Jet<N> to_jet() const
  {
    Jet<N> j;
    for (int k = 0; k <= N; ++k)
      for (int jy = 0; jy <= k; ++jy)
        j.coeff(k - jy, jy) = static_cast<double>(at(k - jy, jy));
    return j;
  }
};

template <class T, int N>
Series<T, N> operator+(Series<T, N> a, const Series<T, N>& b)
{
  return a += b;
}

template <class T, int N>
Series<T, N> operator-(Series<T, N> a, const Series<T, N>& b)
{
  return a -= b;
}

template <class T, int N>
Series<T, N> operator-(Series<T, N> a)
{
  for (auto& v : a.c)
    v = -v;
  return a;
}

template <class T, int N>
Series<T, N> operator*(Series<T, N> a, const T& s)
{
  return a *= s;
}

template <class T, int N>
Series<T, N> operator*(const Series<T, N>& a, const Series<T, N>& b)
{
  Series<T, N> r;
  for (int k = 0; k <= N; ++k)
    for (int j = 0; j <= k; ++j)
    {
      const int i = k - j;
      T acc = 0;
      for (int i1 = 0; i1 <= i; ++i1)
        for (int j1 = 0; j1 <= j; ++j1)
          acc += a.at(i1, j1) * b.at(i - i1, j - j1);
      r.at(i, j) = acc;
    }
  return r;
}

template <class T, int N>
Series<T, N> reciprocal(const Series<T, N>& f)
{
  Series<T, N> r;
  const T inv = T(1) / f.at(0, 0);
  for (int k = 0; k <= N; ++k)
    for (int j = 0; j <= k; ++j)
    {
      const int i = k - j;
      T acc = k == 0 ? T(1) : T(0);
      for (int i1 = 0; i1 <= i; ++i1)
        for (int j1 = 0; j1 <= j; ++j1)
          if (i1 + j1 > 0)
            acc -= f.at(i1, j1) * r.at(i - i1, j - j1);
      r.at(i, j) = acc * inv;
    }
  return r;
}

}  // namespace projgeom::detail

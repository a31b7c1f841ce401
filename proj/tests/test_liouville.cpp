#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "projgeom/geodesics.hpp"
#include "projgeom/geometry.hpp"
#include "projgeom/liouville.hpp"
#include "support.hpp"

using namespace projgeom;
using doctest::Approx;

TEST_CASE("k_formula")
{
  CHECK(k_formula(LiouvilleParams::thales()) == 1.0);
  CHECK(k_formula(LiouvilleParams::beltrami()) == -1.0);
  CHECK(k_formula(LiouvilleParams::flat()) == 0.0);
  // r(su - t^2) - p^2 u + 2pqt - q^2 s with every term switched on
  const LiouvilleParams k{0.5, -0.25, 2.0, 3.0, 0.75, -1.5};
  CHECK(k_formula(k) == Approx(2.0 * (3.0 * -1.5 - 0.5625) - 0.25 * -1.5 + 2 * 0.5 * -0.25 * 0.75 - 0.0625 * 3.0));
}

TEST_CASE("domain_contains")
{
  CHECK(domain_contains(LiouvilleParams::beltrami(), {0.0, 0.0}));
  CHECK_FALSE(domain_contains(LiouvilleParams::beltrami(), {1.5, 0.0}));
  CHECK_FALSE(domain_contains(LiouvilleParams::beltrami(), {1.0, 0.0}));
  CHECK(domain_contains(LiouvilleParams::beltrami(), {0.7, -0.7}));

  std::mt19937_64 rng(1);
  for (int n = 0; n < 200; ++n)
  {
    const Point p = testing::random_point(rng, {-10, 10, -10, 10});
    CHECK(domain_contains(LiouvilleParams::thales(), p));
    CHECK(domain_contains(LiouvilleParams::flat(), p));
  }
}

TEST_CASE("liouville_metric components")
{
  SUBCASE("flat member is Euclidean")
  {
    const auto m = liouville_metric(LiouvilleParams::flat());
    for (const Point p : {Point{0.0, 0.0}, Point{3.0, -7.0}})
    {
      const auto g = m.value(p);
      CHECK(g.xx == 1.0);
      CHECK(g.xy == 0.0);
      CHECK(g.yy == 1.0);
    }
  }

  SUBCASE("identity at the origin for thales and beltrami")
  {
    for (const auto& m : {thales(), beltrami()})
    {
      const auto g = m.value({0.0, 0.0});
      CHECK(g.xx == 1.0);
      CHECK(g.xy == 0.0);
      CHECK(g.yy == 1.0);
    }
  }

  SUBCASE("displayed values")
  {
    CHECK(thales().value({1.0, 1.0}).xx == Approx(2.0 / 9.0).epsilon(1e-15));
    CHECK(beltrami().value({0.5, 0.0}).xx == Approx(16.0 / 9.0).epsilon(1e-15));
    CHECK(beltrami().value({0.3, 0.4}).xy == Approx(0.12 / 0.5625).epsilon(1e-15));
  }

  SUBCASE("named constructors match the displayed closed forms")
  {
    std::mt19937_64 rng(2);
    const auto t = thales();
    const auto b = beltrami();
    const auto tp = liouville_metric(LiouvilleParams::thales());
    for (int n = 0; n < 50; ++n)
    {
      const Point p = testing::random_point(rng, {-0.7, 0.7, -0.7, 0.7});
      const double x = p.x, y = p.y;
      const double dt = 1 + x * x + y * y;
      const auto gt = t.value(p);
      CHECK(gt.xx == Approx((1 + y * y) / (dt * dt)).epsilon(1e-14));
      CHECK(gt.xy == Approx(-x * y / (dt * dt)).epsilon(1e-14));
      CHECK(gt.yy == Approx((1 + x * x) / (dt * dt)).epsilon(1e-14));
      const auto gtp = tp.value(p);
      CHECK(gtp.xx == gt.xx);
      CHECK(gtp.xy == gt.xy);
      CHECK(gtp.yy == gt.yy);

      const double db = 1 - x * x - y * y;
      const auto gb = b.value(p);
      CHECK(gb.xx == Approx((1 - y * y) / (db * db)).epsilon(1e-14));
      CHECK(gb.xy == Approx(x * y / (db * db)).epsilon(1e-14));
      CHECK(gb.yy == Approx((1 - x * x) / (db * db)).epsilon(1e-14));
    }
  }

  SUBCASE("outside the domain")
  {
    CHECK_THROWS_AS(beltrami().value({1.5, 0.0}), DomainError);
  }

  SUBCASE("degenerate parameters")
  {
    CHECK_THROWS_AS(liouville_metric({0, 0, 0, 0, 0, 0}), DegenerateParamsError);
    CHECK_THROWS_AS(liouville_metric({0, 0, 0, 1, 1, 1}), DegenerateParamsError);  // AB - C^2 = 0
    CHECK_NOTHROW(liouville_metric({0, 0, 0, 1, 0.5, 1}));
  }
}

TEST_CASE("curvature law over random members")
{
  std::mt19937_64 rng(3);
  for (int n = 0; n < 100; ++n)
  {
    const auto [k, p] = testing::random_valid_liouville(rng);
    const double expected = k_formula(k);
    const auto m = liouville_metric(k);
    const auto c = gaussian_curvature(m, p);
    CHECK(std::abs(c.k - expected) <= 1e-6 * (1 + std::abs(expected)));
  }
  CHECK(gaussian_curvature(thales(), {2.0, -3.0}).k == Approx(1.0).epsilon(1e-10));
  CHECK(gaussian_curvature(liouville_metric(LiouvilleParams::flat()), {2.0, -3.0}).k == 0.0);
}

TEST_CASE("random members are projectively flat")
{
  std::mt19937_64 rng(4);
  for (int n = 0; n < 40; ++n)
  {
    const auto [k, p] = testing::random_valid_liouville(rng);
    const auto lc = levi_civita(liouville_metric(k));
    const auto y = y_tensor(lc, p);
    CHECK(y.sup_norm() <= 1e-7);
  }
}

TEST_CASE("geodesics of random members are straight")
{
  std::mt19937_64 rng(5);
  IntegratorSettings settings;
  settings.region = Box{-1, 1, -1, 1};
  int long_enough = 0;
  for (int n = 0; n < 30; ++n)
  {
    const auto [k, p] = testing::random_valid_liouville(rng);
    const double theta = testing::uniform(rng, 0, 2 * M_PI);
    const auto lc = levi_civita(liouville_metric(k));
    const auto curve = geodesic_ivp(lc, p, {0.3 * std::cos(theta), 0.3 * std::sin(theta)}, 1.0, settings);
    REQUIRE(curve.size() >= 2);
    const auto pts = curve.points();
    if (norm(pts.back() - pts.front()) > 0.05)
      ++long_enough;
    CHECK(collinearity_residual(pts) <= 1e-6);
  }
  CHECK(long_enough >= 20);
}

TEST_CASE("closed-form connection matches the metric jets")
{
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int n = 0; n < 200 && checked < 40; ++n)
  {
    const auto [k, p] = testing::random_valid_liouville(rng);
    if (liouville_terms(k, p).det() < 0.1)
      continue;
    ++checked;
    const auto m = liouville_metric(k);
    REQUIRE(m.levi_civita_override());
    const auto closed = levi_civita(m).at<2>(p);
    const auto generic = levi_civita_jet<2>(m.jet<3>(p), p);
    for (std::size_t s = 0; s < 6; ++s)
      CHECK(testing::jet_distance(closed.g[s], generic.g[s]) <= 1e-8);
    const auto r_closed = ricci_jet_at<1>(levi_civita(m), p);
    const auto r_generic = ricci_jet<1>(generic);
    for (std::size_t e = 0; e < 4; ++e)
      CHECK(testing::jet_distance(r_closed.m[e], r_generic.m[e]) <= 1e-7);
  }
  CHECK(checked == 40);
}

TEST_CASE("flatness holds close to the domain edge")
{
  const auto lc = levi_civita(beltrami());
  for (double rho : {0.99, 0.999, 0.9999})
  {
    const Point p{rho * std::cos(0.3), rho * std::sin(0.3)};
    const auto r = ricci(lc, p, true);
    CHECK(r.is_symmetric());
    double scale = 0.0;
    for (const auto& j : r.jets->m)
      scale = std::max({scale, std::abs(j.d1(0)), std::abs(j.d1(1))});
    CHECK(y_tensor(lc, p).sup_norm() <= 1e-13 * (1.0 + scale));
  }
  CHECK_THROWS_AS(levi_civita(beltrami()).at<0>({1.0, 0.0}), DomainError);
}

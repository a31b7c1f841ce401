// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "golden.hpp"
#include "projgeom/cli.hpp"
#include "projgeom/geodesics.hpp"
#include "projgeom/geometry.hpp"
#include "projgeom/liouville.hpp"
#include "projgeom/metrics.hpp"
#include "projgeom/tractor.hpp"
#include "support.hpp"

using namespace projgeom;
namespace t = projgeom::testing;

namespace {

struct Verdict
{
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Point random_valid_point(std::mt19937_64& rng, const LiouvilleParams& k)
{
  for (;;)
  {
    const Point p = t::random_point(rng, {-0.5, 0.5, -0.5, 0.5});
    if (!domain_contains(k, p))
      continue;
    const double det = liouville_terms(k, p).det();
    if (det * det > 1e-6)
      return p;
  }
}

TractorValue random_tractor(std::mt19937_64& rng)
{
  return {{t::uniform(rng, -1, 1), t::uniform(rng, -1, 1)}, t::uniform(rng, -1, 1)};
}

Vec2 random_direction(std::mt19937_64& rng, double speed)
{
  const double theta = t::uniform(rng, 0, 2 * M_PI);
  return {speed * std::cos(theta), speed * std::sin(theta)};
}

//--------------------------------------------------------------------------------------------------

Verdict curvature_law()
{
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int n = 0; n < 200; ++n)
  {
    const auto [k, p] = t::random_valid_liouville(rng);
    const double got = gaussian_curvature(liouville_metric(k), p).k;
    worst = std::max(worst, std::abs(got - k_formula(k)) / (1.0 + std::abs(got)));
  }

  const Point at{0.1, -0.2};
  const double kt = gaussian_curvature(thales(), at).k;
  const double kb = gaussian_curvature(beltrami(), at).k;
  const double kf = gaussian_curvature(liouville_metric(LiouvilleParams::flat()), at).k;
  const bool anchors = std::abs(kt - 1.0) <= 1e-6 && std::abs(kb + 1.0) <= 1e-6 && std::abs(kf) <= 1e-6 &&
                       k_formula(LiouvilleParams::thales()) == 1.0 && k_formula(LiouvilleParams::beltrami()) == -1.0 &&
                       k_formula(LiouvilleParams::flat()) == 0.0;
  return {worst <= 1e-6 && anchors,
          fmt("200 members, max |K - k_formula|/(1+|K|) = %.3g (tol 1e-6); anchors thales %.15g, beltrami %.15g, "
              "flat %.3g",
              worst, kt, kb, kf)};
}

Verdict flatness_criterion()
{
  double worst_flat = 0.0;
  std::string worst_name;
  auto sup_over = [](const ConnectionField& lc, const std::vector<Point>& pts) {
    double sup = 0.0;
    for (const auto& p : pts)
      sup = std::max(sup, y_tensor(lc, p).sup_norm());
    return sup;
  };

  for (const auto* name : {"flat", "thales", "beltrami", "poincare", "sphere-stereographic"})
  {
    const auto spec = cli::metric_spec_from_name(name);
    const auto metric = cli::build_metric(spec);
    const auto pts = cli::sample_points(cli::default_region(spec), 100, 42, metric.domain());
    if (pts.size() != 100)
      return {false, fmt("only %zu in-domain samples for %s", pts.size(), name)};
    const double sup = sup_over(levi_civita(metric), pts);
    if (sup >= worst_flat)
    {
      worst_flat = sup;
      worst_name = name;
    }
  }

  // 100 samples per member, each accepted by the same rule as the member's own test point
  std::mt19937_64 rng(202);
  double worst_liouville = 0.0, worst_interior = 0.0, det_of_worst = 0.0;
  int over = 0;
  for (int n = 0; n < 50; ++n)
  {
    const auto member = t::random_valid_liouville(rng);
    const auto lc = levi_civita(liouville_metric(member.params));
    for (int i = 0; i < 100; ++i)
    {
      const Point p = i == 0 ? member.point : random_valid_point(rng, member.params);
      const double y = y_tensor(lc, p).sup_norm();
      const double det = liouville_terms(member.params, p).det();
      if (y > 1e-7)
        ++over;
      if (y > worst_liouville)
      {
        worst_liouville = y;
        det_of_worst = det;
      }
      if (det >= 1e-2)
        worst_interior = std::max(worst_interior, y);
    }
  }

  const auto bump_spec = cli::metric_spec_from_name("bump");
  const auto bump = cli::build_metric(bump_spec);
  const double sup_bump =
      sup_over(levi_civita(bump), cli::sample_points(cli::default_region(bump_spec), 100, 42, bump.domain()));

  return {worst_flat <= 1e-7 && worst_liouville <= 1e-7 && sup_bump >= 1e-3,
          fmt("sup|Y| named metrics %.3g (%s), 50 Liouville members x 100 samples %.3g (tol 1e-7; %d of 5000 "
              "over, worst at AB-C^2 = %.3g; %.3g where AB-C^2 >= 1e-2); bump %.3g (>= 1e-3)",
              worst_flat, worst_name.c_str(), worst_liouville, over, det_of_worst, worst_interior, sup_bump)};
}

Verdict tractor_identity()
{
  std::mt19937_64 rng(303);
  const std::vector<MetricField> fixed = {flat_metric(), thales(), beltrami(), poincare_metric(),
                                          sphere_stereographic_metric(), bump_metric()};
  double worst_x = 0.0, worst_rho = 0.0, max_y = 0.0;
  for (int n = 0; n < 50; ++n)
  {
    // every sixth triple uses a random Liouville member, the rest cycle through the named metrics
    MetricField metric;
    Point p;
    if (n % 6 == 5)
    {
      const auto [k, q] = t::random_valid_liouville(rng);
      metric = liouville_metric(k);
      p = q;
    }
    else
    {
      metric = fixed[static_cast<std::size_t>(n % 6)];
      p = t::random_point(rng, {-0.6, 0.6, -0.6, 0.6});
    }
    const auto lc = levi_civita(metric);
    const auto tractor = random_tractor(rng);
    const auto r = tractor_curvature_residual(lc, p, tractor);
    const auto y = y_tensor(lc, p);
    const double expected = y(0, 1, 0) * tractor.x[0] + y(0, 1, 1) * tractor.x[1];
    worst_x = std::max({worst_x, std::abs(r.x[0]), std::abs(r.x[1])});
    worst_rho = std::max(worst_rho, std::abs(r.rho - expected));
    max_y = std::max(max_y, std::abs(expected));
  }
  return {worst_x <= 1e-7 && worst_rho <= 1e-6,
          fmt("50 triples, X-part %.3g (tol 1e-7), rho-part vs Y %.3g (tol 1e-6), largest Y.X %.3g", worst_x,
              worst_rho, max_y)};
}

struct StraightenStats
{
  int curves = 0;
  int curved_before = 0;
  double max_after = 0.0;
  double max_displacement = 0.0;
};

StraightenStats straighten(const char* name)
{
  const auto spec = cli::metric_spec_from_name(name);
  const auto metric = cli::build_metric(spec);
  const auto lc = levi_civita(metric);
  FrameOptions fo;
  fo.region = cli::default_region(spec);
  const auto frame = parallel_frame(lc, {0.0, 0.0}, fo);

  IntegratorSettings s;
  s.stride = 10;
  s.region = fo.region;
  StraightenStats st;
  for (const auto& ray : cli::auto_batch(fo.region, 12, 42))
  {
    const auto pts = geodesic_ivp(lc, ray.start, ray.direction, 4.0, s).points();
    std::vector<Point> mapped;
    for (const auto& p : pts)
    {
      mapped.push_back(straightened_coordinates(frame, p));
      st.max_displacement = std::max(st.max_displacement, norm(mapped.back() - p));
    }
    ++st.curves;
    if (collinearity_residual(pts) >= 1e-2)
      ++st.curved_before;
    st.max_after = std::max(st.max_after, collinearity_residual(mapped));
  }
  return st;
}

Verdict straightening()
{
  const auto poincare = straighten("poincare");
  const auto sphere = straighten("sphere-stereographic");

  const auto frame = parallel_frame(ConnectionField::flat(), {0.0, 0.0}, FrameOptions{});
  double identity = 0.0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j)
    {
      const Point p{-1.0 + 0.1 * i, -1.0 + 0.1 * j};
      identity = std::max(identity, norm(straightened_coordinates(frame, p) - p));
    }
  const auto flat = straighten("flat");
  identity = std::max(identity, flat.max_displacement);

  const bool pass = poincare.curves == 12 && sphere.curves == 12 && poincare.max_after <= 1e-5 &&
                    sphere.max_after <= 1e-5 && poincare.curved_before >= 10 && sphere.curved_before >= 10 &&
                    identity <= 1e-8;
  return {pass, fmt("poincare after %.3g, curved before %d/12; sphere after %.3g, curved before %d/12 (tol 1e-5, "
                    ">= 10/12 at 1e-2); flat identity %.3g (tol 1e-8)",
                    poincare.max_after, poincare.curved_before, sphere.max_after, sphere.curved_before, identity)};
}

Verdict path_independence()
{
  std::mt19937_64 rng(505);
  double worst = 0.0;
  for (int n = 0; n < 20; ++n)
  {
    ConnectionField lc;
    Box box{-0.5, 0.5, -0.5, 0.5};
    switch (n % 5)
    {
      case 0: lc = levi_civita(poincare_metric()); break;
      case 1: lc = levi_civita(sphere_stereographic_metric()); break;
      case 2: lc = levi_civita(thales()); break;
      case 3: lc = levi_civita(beltrami()); break;
      default:
      {
        // a member whose domain contains the whole box
        for (;;)
        {
          const auto k = t::random_valid_liouville(rng).params;
          bool all = true;
          for (int i = 0; i <= 10 && all; ++i)
            for (int j = 0; j <= 10 && all; ++j)
            {
              const Point q{-0.3 + 0.06 * i, -0.3 + 0.06 * j};
              all = domain_contains(k, q) && std::pow(liouville_terms(k, q).det(), 2) > 1e-6;
            }
          if (all)
          {
            lc = levi_civita(liouville_metric(k));
            box = {-0.3, 0.3, -0.3, 0.3};
            break;
          }
        }
      }
    }
    const Point a = t::random_point(rng, box);
    const Point b = t::random_point(rng, box);
    const std::vector<Point> p1{a, {b.x, a.y}, b};
    const std::vector<Point> p2{a, {a.x, b.y}, b};
    worst = std::max(worst, max_abs_diff(transport_polyline(lc, p1), transport_polyline(lc, p2)));
  }

  const std::vector<Point> loop{{0.1, 0.1}, {0.35, 0.1}, {0.35, 0.35}, {0.1, 0.35}};
  const double bump = holonomy_deviation(levi_civita(bump_metric()), loop);
  return {worst <= 1e-6 && bump >= 1e-4,
          fmt("20 endpoint pairs, max two-path difference %.3g (tol 1e-6); bump loop holonomy %.3g (>= 1e-4)", worst,
              bump)};
}

Verdict projective_equivalence()
{
  std::mt19937_64 rng(606);
  double worst_trace = 0.0, worst_ricci = 0.0;
  const std::vector<ConnectionField> bases = {ConnectionField::flat(), levi_civita(poincare_metric())};
  for (const auto& base : bases)
    for (int n = 0; n < 20; ++n)
    {
      const auto ups = CovectorField::from_expression("poly", t::random_poly_covector(rng, 0.5));
      const auto changed = projective_change(base, ups);

      const Point p = t::random_point(rng, {-0.3, 0.3, -0.3, 0.3});
      const auto dir = random_direction(rng, 0.5);
      worst_trace = std::max(worst_trace, trace_hausdorff(geodesic_ivp(base, p, dir, 1.0),
                                                          geodesic_ivp(changed, p, dir, 1.0)));

      const Point q = t::random_point(rng, {-0.6, 0.6, -0.6, 0.6});
      const auto direct = ricci(changed, q);
      const auto formula = ricci_change(base, ups, q);
      for (std::size_t i = 0; i < 4; ++i)
        worst_ricci = std::max(worst_ricci, std::abs(direct.r.m[i] - formula.r.m[i]));
    }
  return {worst_trace <= 1e-6 && worst_ricci <= 1e-8,
          fmt("40 one-forms, trace Hausdorff %.3g (tol 1e-6), ricci change %.3g (tol 1e-8)", worst_trace,
              worst_ricci)};
}

Verdict jacobi_consistency()
{
  std::mt19937_64 rng(707);
  const auto lc = levi_civita(beltrami());
  double worst = 0.0;
  for (int n = 0; n < 10; ++n)
  {
    const Point p = t::random_point(rng, {-0.4, 0.4, -0.4, 0.4});
    const auto g = geodesic_ivp(lc, p, random_direction(rng, 0.4), 1.0);
    const double f0 = t::uniform(rng, -1, 1), fd0 = t::uniform(rng, -1, 1);
    const auto f = jacobi_f_solutions(lc, g, f0, fd0);
    const auto frames = transport_along_curve(lc, g);
    const auto& u0 = g.samples.front().velocity;
    const TractorValue initial{{f0 * u0[0], f0 * u0[1]}, fd0};
    for (std::size_t i = 0; i < g.size(); ++i)
    {
      const auto tr = apply_matrix(frames[i], initial);
      const auto& u = g.samples[i].velocity;
      worst = std::max({worst, std::abs(tr.x[0] - f[i].f * u[0]), std::abs(tr.x[1] - f[i].f * u[1]),
                        std::abs(tr.rho - f[i].fdot)});
    }
  }
  return {worst <= 1e-7, fmt("10 beltrami geodesics, max section difference %.3g (tol 1e-7)", worst)};
}

Verdict cli_goldens()
{
  const golden::fs::path dir = PROJGEOM_GOLDEN_DIR;
  const auto scratch = golden::fs::temp_directory_path() / "projgeom_acceptance";
  const auto cases = golden::load_cases(dir);
  std::vector<std::string> failures;
  std::set<int> codes;
  for (const auto& c : cases)
  {
    codes.insert(c.exit_code);
    for (const auto& problem : golden::compare(c, golden::run_case(c, dir, scratch), dir))
      failures.push_back(c.name + ": " + problem);
  }
  const bool covered = codes == std::set<int>{0, 1, 2, 3, 4};
  if (!failures.empty())
    return {false, fmt("%zu of %zu cases differ; first: %s", failures.size(), cases.size(), failures.front().c_str())};
  return {covered, fmt("%zu cases byte identical, exit codes covered: %s", cases.size(), covered ? "0-4" : "incomplete")};
}

struct Criterion
{
  int id;
  const char* name;
  double budget_s;
  std::function<Verdict()> check;
};

}  // namespace

int main()
{
  const std::vector<Criterion> criteria = {
      {1, "curvature law", 10, curvature_law},
      {2, "flatness criterion", 10, flatness_criterion},
      {3, "tractor curvature identity", 5, tractor_identity},
      {4, "straightening", 30, straightening},
      {5, "path independence and holonomy", 10, path_independence},
      {6, "projective equivalence", 20, projective_equivalence},
      {7, "jacobi and tractor consistency", 10, jacobi_consistency},
      {8, "cli golden files", 5, cli_goldens},
  };

  int failed = 0;
  for (const auto& c : criteria)
  {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try
    {
      v = c.check();
    }
    catch (const std::exception& e)
    {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = v.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s [%d] %s: %s; %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

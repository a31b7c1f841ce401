#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "projgeom/geodesics.hpp"
#include "projgeom/geometry.hpp"
#include "projgeom/tractor.hpp"
#include "svg.hpp"

namespace projgeom::cli {

namespace {

Json num(double v)
{
  if (!std::isfinite(v))
    return nullptr;
  return round12(v);
}

Json pair(double a, double b) { return Json::array({num(a), num(b)}); }

Json report(const std::string& command, const Json& config)
{
  Json r;
  r["command"] = command;
  r["config"] = config;
  r["config_hash"] = fnv1a_hex(config.dump());
  r["records"] = Json::array();
  return r;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_header(const std::string& command, const Json& config)
{
  return "# projgeom " + command + "\n# config: " + config.dump() + "\n# config-hash: " + fnv1a_hex(config.dump()) +
         "\n";
}

std::optional<double> try_collinearity(const std::vector<Point>& pts)
{
  if (pts.size() < 3)
    return std::nullopt;
  try
  {
    return collinearity_residual(pts);
  }
  catch (const GeometryError&)
  {
    return std::nullopt;
  }
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

Json json_optional(const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); }

std::string geodesic_rows(const Curve& c)
{
  std::string rows = "t,x,y,u0,u1\n";
  for (const auto& s : c.samples)
    rows += format_number(s.t) + "," + format_number(s.point.x) + "," + format_number(s.point.y) + "," +
            format_number(s.velocity[0]) + "," + format_number(s.velocity[1]) + "\n";
  return rows;
}

}  // namespace

CommandResult cmd_curvature(const CurvatureOptions& o, const Json& config)
{
  const auto metric = build_metric(o.metric);
  std::string rows = "x,y,K,residual\n";
  int kept = 0, omitted = 0;
  for (int i = 0; i < o.grid_x.n; ++i)
    for (int j = 0; j < o.grid_y.n; ++j)
    {
      const Point p{o.grid_x.at(i), o.grid_y.at(j)};
      if (!metric.contains(p))
      {
        ++omitted;
        continue;
      }
      CurvatureValue k;
      try
      {
        k = gaussian_curvature(metric, p);
      }
      catch (const DegenerateMetricError&)
      {
        ++omitted;
        continue;
      }
      ++kept;
      rows += format_number(p.x) + "," + format_number(p.y) + "," + format_number(k.k) + "," +
              format_number(k.residual) + "\n";
    }

  CommandResult r;
  r.document = csv_header("curvature", config) + "# points: " + std::to_string(kept) +
               "\n# omitted: " + std::to_string(omitted) + "\n" + rows;
  return r;
}

CommandResult cmd_flatness(const FlatnessOptions& o, const Json& config)
{
  const auto metric = build_metric(o.metric);
  const auto lc = levi_civita(metric);
  const auto pts = sample_points(o.region, o.samples, o.seed, metric.domain());
  if (pts.empty())
    throw UsageError("no in-domain sample points in the region");

  auto rep = report("flatness", config);
  double sup = 0.0;
  for (const auto& p : pts)
  {
    const double y = y_tensor(lc, p).sup_norm();
    sup = std::max(sup, y);
    rep["records"].push_back({{"x", num(p.x)}, {"y", num(p.y)}, {"sup_y", num(y)}});
  }
  const bool flat = sup <= o.threshold;
  rep["summary"] = {{"samples", static_cast<int>(pts.size())},
                    {"requested", o.samples},
                    {"sup_y", num(sup)},
                    {"threshold", num(o.threshold)},
                    {"verdict", flat ? "FLAT" : "NOT FLAT"}};
  CommandResult r;
  r.document = dump(rep);
  return r;
}

CommandResult cmd_geodesic(const GeodesicOptions& o, const Json& config)
{
  const auto metric = build_metric(o.metric);
  if (!metric.contains(o.start))
    throw DomainError("geodesic start lies outside the metric domain", o.start);
  const auto lc = levi_civita(metric);

  IntegratorSettings s;
  s.steps_per_unit = o.steps_per_unit;
  s.stride = o.stride;
  s.adaptive = o.adaptive;

  CommandResult r;
  Curve curve;
  try
  {
    curve = geodesic_ivp(lc, o.start, o.direction, o.t_max, s);
  }
  catch (const GeodesicIntegrationError& e)
  {
    curve = e.partial;
    r.exit_code = kExitIntegration;
    r.message = e.what();
  }

  std::string head = csv_header("geodesic", config);
  if (r.exit_code != kExitOk)
    head += "# error: " + r.message + "\n";
  head += "# samples: " + std::to_string(curve.size()) + "\n";
  head += std::string("# truncated: ") + (curve.truncated ? "true" : "false") + "\n";
  if (curve.exit_point)
    head += "# exit: " + format_number(curve.exit_point->x) + "," + format_number(curve.exit_point->y) + "\n";
  head += "# collinearity: " + format_optional(try_collinearity(curve.points())) + "\n";
  r.document = head + geodesic_rows(curve);
  return r;
}

CommandResult cmd_straighten(const StraightenOptions& o, const Json& config)
{
  const auto metric = build_metric(o.metric);
  if (!metric.contains(o.base))
    throw DomainError("frame base lies outside the metric domain", o.base);
  if (!o.region.contains(o.base))
    throw UsageError("frame base lies outside the working region");
  const auto lc = levi_civita(metric);

  FrameOptions fo;
  fo.region = o.region;
  fo.flatness_threshold = o.threshold;
  fo.transport.steps_per_unit = o.steps_per_unit;

  auto rep = report("straighten", config);
  CommandResult r;
  const double sup_y = sampled_sup_y(lc, o.region, fo.flatness_grid);
  if (sup_y > o.threshold)
  {
    std::ostringstream msg;
    msg.precision(6);
    msg << "connection is not projectively flat on the working region: sampled sup|Y| = " << sup_y << " exceeds "
        << o.threshold;
    rep["summary"] = {{"sup_y", num(sup_y)}, {"threshold", num(o.threshold)}, {"verdict", "NOT FLAT"}};
    r.exit_code = kExitNotFlat;
    r.message = msg.str();
    r.document = dump(rep);
    return r;
  }
  const auto frame = parallel_frame(lc, o.base, fo);

  IntegratorSettings s;
  s.steps_per_unit = o.steps_per_unit;
  s.stride = o.stride;
  s.region = o.region;

  std::vector<Polyline> originals, images;
  int chart_errors = 0, curved = 0;
  double max_after = 0.0, min_before = std::numeric_limits<double>::infinity(), max_disp = 0.0;
  bool after_pass = true;
  const auto rays = auto_batch(o.region, o.batch, o.seed);
  for (std::size_t i = 0; i < rays.size(); ++i)
  {
    const auto& ray = rays[i];
    Json rec{{"index", static_cast<int>(i)}, {"start", pair(ray.start.x, ray.start.y)},
             {"direction", pair(ray.direction[0], ray.direction[1])}};
    if (!metric.contains(ray.start))
    {
      rec["skipped"] = "start outside the metric domain";
      rep["records"].push_back(rec);
      continue;
    }
    const auto curve = geodesic_ivp(lc, ray.start, ray.direction, o.t_max, s);
    const auto pts = curve.points();

    Polyline mapped;
    std::optional<std::string> chart_error;
    double disp = 0.0;
    for (const auto& p : pts)
    {
      try
      {
        const Point q = straightened_coordinates(frame, p);
        disp = std::max(disp, norm(q - p));
        mapped.push_back(q);
      }
      catch (const ChartError& e)
      {
        chart_error = e.what();
        break;
      }
      catch (const DegenerateFrameError& e)
      {
        chart_error = e.what();
        break;
      }
    }

    const auto before = try_collinearity(pts);
    rec["samples"] = static_cast<int>(pts.size());
    rec["truncated"] = curve.truncated;
    rec["before"] = json_optional(before);
    if (before)
    {
      min_before = std::min(min_before, *before);
      if (*before >= 1e-2)
        ++curved;
    }
    originals.push_back(pts);
    if (chart_error)
    {
      ++chart_errors;
      after_pass = false;
      rec["after"] = nullptr;
      rec["chart_error"] = *chart_error;
    }
    else
    {
      const auto after = try_collinearity(mapped);
      rec["after"] = json_optional(after);
      rec["max_displacement"] = num(disp);
      if (after)
      {
        max_after = std::max(max_after, *after);
        after_pass = after_pass && *after <= 1e-5;
      }
      max_disp = std::max(max_disp, disp);
      images.push_back(std::move(mapped));
    }
    rep["records"].push_back(rec);
  }

  rep["summary"] = {{"sup_y", num(sup_y)},
                    {"threshold", num(o.threshold)},
                    {"verdict", "FLAT"},
                    {"curves", static_cast<int>(rays.size())},
                    {"chart_errors", chart_errors},
                    {"curved_before", curved},
                    {"min_before", num(min_before)},
                    {"max_after", num(max_after)},
                    {"max_displacement", num(max_disp)},
                    {"after_pass", after_pass}};
  r.document = dump(rep);
  r.svg = render_svg(originals, images);
  return r;
}

CommandResult cmd_liouville_verify(const LiouvilleVerifyOptions& o, const Json& config)
{
  const auto metric = liouville_metric(o.params);
  const auto pts = sample_points(o.region, o.samples, o.seed, metric.domain());
  if (pts.empty())
    throw UsageError("no sample points of the region lie in the metric's domain");

  const double expected = k_formula(o.params);
  auto rep = report("liouville-verify", config);
  double worst = 0.0, kmin = std::numeric_limits<double>::infinity(), kmax = -kmin;
  for (const auto& p : pts)
  {
    const double k = gaussian_curvature(metric, p).k;
    const double dev = std::abs(k - expected) / (1.0 + std::abs(expected));
    worst = std::max(worst, dev);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
    rep["records"].push_back({{"x", num(p.x)}, {"y", num(p.y)}, {"K", num(k)}});
  }
  const bool pass = worst <= o.tolerance;
  rep["summary"] = {{"samples", static_cast<int>(pts.size())},
                    {"requested", o.samples},
                    {"k_formula", num(expected)},
                    {"k_min", num(kmin)},
                    {"k_max", num(kmax)},
                    {"max_deviation", num(worst)},
                    {"tolerance", num(o.tolerance)},
                    {"verdict", pass ? "PASS" : "FAIL"}};
  CommandResult r;
  r.document = dump(rep);
  if (!pass)
  {
    r.exit_code = kExitFailure;
    r.message = "curvature deviates from the closed form beyond the tolerance";
  }
  return r;
}

}  // namespace projgeom::cli

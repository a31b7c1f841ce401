#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "projgeom/cli.hpp"
#include "projgeom/metrics.hpp"

namespace projgeom::cli {

namespace {

double parse_double(const std::string& text, const std::string& what)
{
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v))
    throw UsageError("invalid number '" + text + "' in " + what);
  return v;
}

int parse_count(const std::string& text, const std::string& what)
{
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || v < 1 || v > 1000000)
    throw UsageError("invalid count '" + text + "' in " + what);
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& text, char sep)
{
  std::vector<std::string> parts;
  std::size_t from = 0;
  for (;;)
  {
    const auto at = text.find(sep, from);
    parts.push_back(text.substr(from, at - from));
    if (at == std::string::npos)
      break;
    from = at + 1;
  }
  return parts;
}

}  // namespace

const std::vector<std::string>& metric_names()
{
  static const std::vector<std::string> names = {"flat",   "thales", "beltrami", "poincare", "sphere-stereographic",
                                                 "bump",   "liouville"};
  return names;
}

MetricSpec metric_spec_from_name(const std::string& name)
{
  for (const auto& n : metric_names())
    if (n == name)
    {
      if (name == "liouville")
        throw UsageError("metric 'liouville' needs parameters; use --metric-json or --params");
      return {name, std::nullopt};
    }
  std::string known;
  for (const auto& n : metric_names())
    known += (known.empty() ? "" : ", ") + n;
  throw UsageError("unknown metric '" + name + "' (known: " + known + ")");
}

MetricSpec parse_metric_spec(const Json& j)
{
  if (j.is_string())
    return metric_spec_from_name(j.get<std::string>());
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
    throw UsageError("metric spec must be an object with a string 'name'");
  for (const auto& [key, value] : j.items())
    if (key != "name" && key != "params")
      throw UsageError("unexpected key '" + key + "' in metric spec");

  const auto name = j["name"].get<std::string>();
  if (name != "liouville")
  {
    if (j.contains("params"))
      throw UsageError("metric '" + name + "' takes no params");
    return metric_spec_from_name(name);
  }
  if (!j.contains("params") || !j["params"].is_object())
    throw UsageError("metric 'liouville' requires a params object with p, q, r, s, t, u");
  const auto& pj = j["params"];
  auto get = [&](const char* key) {
    if (!pj.contains(key) || !pj[key].is_number())
      throw UsageError(std::string("liouville params: missing or non-numeric '") + key + "'");
    return pj[key].get<double>();
  };
  for (const auto& [key, value] : pj.items())
    if (key.size() != 1 || std::string("pqrstu").find(key) == std::string::npos)
      throw UsageError("liouville params: unexpected key '" + key + "'");
  return {name, LiouvilleParams{get("p"), get("q"), get("r"), get("s"), get("t"), get("u")}};
}

Json to_json(const MetricSpec& spec)
{
  Json j;
  j["name"] = spec.name;
  if (spec.params)
  {
    const auto& k = *spec.params;
    j["params"] = {{"p", k.p}, {"q", k.q}, {"r", k.r}, {"s", k.s}, {"t", k.t}, {"u", k.u}};
  }
  return j;
}

MetricField build_metric(const MetricSpec& spec)
{
  if (spec.name == "flat")
    return flat_metric();
  if (spec.name == "thales")
    return thales();
  if (spec.name == "beltrami")
    return beltrami();
  if (spec.name == "poincare")
    return poincare_metric();
  if (spec.name == "sphere-stereographic")
    return sphere_stereographic_metric();
  if (spec.name == "bump")
    return bump_metric();
  if (spec.name == "liouville" && spec.params)
    return liouville_metric(*spec.params);
  throw UsageError("cannot build metric '" + spec.name + "'");
}

Box default_region(const MetricSpec& spec)
{
  if (spec.name == "poincare" || spec.name == "beltrami")
    return {-0.6, 0.6, -0.6, 0.6};
  if (spec.name == "liouville")
    return {-0.5, 0.5, -0.5, 0.5};
  return {-1.0, 1.0, -1.0, 1.0};
}

Axis parse_axis(const std::string& text)
{
  const auto parts = split(text, ':');
  if (parts.size() != 3)
    throw UsageError("grid axis '" + text + "' must have the form lo:hi:n");
  Axis a{parse_double(parts[0], "grid axis"), parse_double(parts[1], "grid axis"), parse_count(parts[2], "grid axis")};
  if (a.hi < a.lo)
    throw UsageError("grid axis '" + text + "' has hi < lo");
  return a;
}

std::string format_axis(const Axis& axis)
{
  return format_number(axis.lo) + ":" + format_number(axis.hi) + ":" + std::to_string(axis.n);
}

int parse_batch(const std::string& text)
{
  const auto parts = split(text, ':');
  if (parts.size() != 2 || parts[0] != "auto")
    throw UsageError("geodesic batch '" + text + "' must have the form auto:N");
  return parse_count(parts[1], "geodesic batch");
}

SampleRng::SampleRng(std::uint64_t seed) : engine_(seed) {}

double SampleRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<Point> sample_points(const Box& region, int count, std::uint64_t seed, const DomainFn& domain)
{
  SampleRng rng(seed);
  std::vector<Point> pts;
  for (long attempt = 0; attempt < 1000L * count && static_cast<int>(pts.size()) < count; ++attempt)
  {
    const double x = rng.uniform(region.xlo, region.xhi);
    const double y = rng.uniform(region.ylo, region.yhi);
    if (domain({x, y}))
      pts.push_back({x, y});
  }
  return pts;
}

std::vector<Ray> auto_batch(const Box& region, int count, std::uint64_t seed)
{
  SampleRng rng(seed);
  const double w = region.xhi - region.xlo;
  const double h = region.yhi - region.ylo;
  const Point c = region.center();
  const double perimeter = 2 * (w + h);

  std::vector<Ray> rays;
  for (int k = 0; k < count; ++k)
  {
    // walk the boundary counter-clockwise from the lower-left corner
    double s = perimeter * (k + 0.5) / count;
    Point b;
    if (s < w)
      b = {region.xlo + s, region.ylo};
    else if ((s -= w) < h)
      b = {region.xhi, region.ylo + s};
    else if ((s -= h) < w)
      b = {region.xhi - s, region.yhi};
    else
      b = {region.xlo, region.yhi - (s - w)};
    b = {c.x + 0.99 * (b.x - c.x), c.y + 0.99 * (b.y - c.y)};

    const Point target{c.x + 0.5 * w * rng.uniform(-0.6, 0.6), c.y + 0.5 * h * rng.uniform(-0.6, 0.6)};
    Vec2 d = target - b;
    const double n = norm(d);
    if (n < 1e-9)
      d = c - b;
    const double m = norm(d);
    rays.push_back({b, {d[0] / m, d[1] / m}});
  }
  return rays;
}

std::string format_number(double v)
{
  if (v == 0.0)
    return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v)
{
  if (!std::isfinite(v))
    return v;
  if (v == 0.0)
    return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fnv1a_hex(const std::string& text)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text)
  {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace projgeom::cli

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "projgeom/cli.hpp"
#include "projgeom/geodesics.hpp"

namespace projgeom::cli {

namespace {

// Raw flag values; unset means "fall back to the config file, then the default".
struct Flags
{
  std::optional<std::string> metric, metric_json, config, out, svg, grid_x, grid_y, batch;
  std::optional<int> samples, steps_per_unit, stride;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_max, threshold, tolerance;
  std::vector<double> start, direction, base, region, params;
  bool adaptive = false;
  bool adaptive_set = false;
};

const std::vector<std::string> kConfigKeys = {"metric", "grid-x", "grid-y", "samples", "seed",  "region",
                                              "threshold", "start", "direction", "t-max", "steps-per-unit",
                                              "stride", "adaptive", "base", "batch", "params", "tolerance"};

Json load_config(const std::optional<std::string>& path)
{
  if (!path)
    return Json::object();
  std::ifstream in(*path);
  if (!in)
    throw UsageError("cannot read config file '" + *path + "'");
  Json cfg;
  try
  {
    cfg = Json::parse(in);
  }
  catch (const Json::parse_error& e)
  {
    throw UsageError("config file '" + *path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object())
    throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : cfg.items())
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end())
      throw UsageError("unknown config key '" + key + "'");
  return cfg;
}

class Resolver
{
public:
  Resolver(const Flags& flags, Json config) : f_(flags), cfg_(std::move(config)) {}

  template <class T>
  T pick(const std::optional<T>& flag, const char* key, T fallback) const
  {
    if (flag)
      return *flag;
    if (cfg_.contains(key))
    {
      try
      {
        return cfg_[key].get<T>();
      }
      catch (const Json::exception&)
      {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
      }
    }
    return fallback;
  }

  std::vector<double> pick(const std::vector<double>& flag, const char* key, std::vector<double> fallback,
                           std::size_t n) const
  {
    std::vector<double> v = fallback;
    if (!flag.empty())
      v = flag;
    else if (cfg_.contains(key))
    {
      try
      {
        v = cfg_[key].get<std::vector<double>>();
      }
      catch (const Json::exception&)
      {
        throw UsageError(std::string("config key '") + key + "' must be an array of numbers");
      }
    }
    if (v.size() != n)
      throw UsageError(std::string("'") + key + "' needs " + std::to_string(n) + " numbers");
    for (double x : v)
      if (!std::isfinite(x))
        throw UsageError(std::string("'") + key + "' must be finite");
    return v;
  }

  bool has(const char* key) const { return cfg_.contains(key); }
  const Json& operator[](const char* key) const { return cfg_.at(key); }

  MetricSpec metric() const
  {
    if (f_.metric_json)
    {
      Json j;
      try
      {
        j = Json::parse(*f_.metric_json);
      }
      catch (const Json::parse_error& e)
      {
        throw UsageError(std::string("--metric-json is not valid JSON: ") + e.what());
      }
      return parse_metric_spec(j);
    }
    if (f_.metric)
      return metric_spec_from_name(*f_.metric);
    if (cfg_.contains("metric"))
      return parse_metric_spec(cfg_["metric"]);
    throw UsageError("no metric given; use --metric NAME or --metric-json SPEC");
  }

private:
  const Flags& f_;
  Json cfg_;
};

Json jnum(double v) { return round12(v); }

Json jvec(const std::vector<double>& v)
{
  Json a = Json::array();
  for (double x : v)
    a.push_back(jnum(x));
  return a;
}

std::vector<double> box_vec(const Box& b) { return {b.xlo, b.xhi, b.ylo, b.yhi}; }

Box resolve_region(const Resolver& r, const Flags& f, const MetricSpec& spec)
{
  const auto v = r.pick(f.region, "region", box_vec(default_region(spec)), 4);
  if (!(v[0] < v[1] && v[2] < v[3]))
    throw UsageError("region must satisfy xlo < xhi and ylo < yhi");
  return {v[0], v[1], v[2], v[3]};
}

int positive(int v, const char* what)
{
  if (v < 1)
    throw UsageError(std::string(what) + " must be at least 1");
  return v;
}

double positive(double v, const char* what)
{
  if (!(v > 0.0) || !std::isfinite(v))
    throw UsageError(std::string(what) + " must be positive");
  return v;
}

void write_file(const std::string& path, const std::string& content)
{
  std::ofstream o(path, std::ios::binary);
  if (!o)
    throw UsageError("cannot write '" + path + "'");
  o << content;
}

LiouvilleParams params_from(const MetricSpec& spec)
{
  if (spec.params)
    return *spec.params;
  if (spec.name == "thales")
    return LiouvilleParams::thales();
  if (spec.name == "beltrami")
    return LiouvilleParams::beltrami();
  if (spec.name == "flat")
    return LiouvilleParams::flat();
  throw UsageError("liouville-verify needs Liouville parameters; metric '" + spec.name + "' is not a family member");
}

void add_common(CLI::App* cmd, Flags& f)
{
  auto* m = cmd->add_option("--metric", f.metric, "metric name: flat, thales, beltrami, poincare, "
                                                   "sphere-stereographic, bump");
  auto* mj = cmd->add_option("--metric-json", f.metric_json,
                             R"(metric spec as JSON, e.g. {"name":"liouville","params":{"p":0,...}})");
  m->excludes(mj);
  cmd->add_option("--config", f.config, "JSON config file; flags take precedence over it");
  cmd->add_option("--out", f.out, "write the CSV/JSON output here instead of stdout");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Projective differential geometry toolkit: curvature, flatness, geodesics and straightening "
               "of 2D metrics",
               "projgeom"};
  app.require_subcommand(1);
  app.fallthrough(false);

  Flags f;
  auto* curvature = app.add_subcommand("curvature", "Gaussian curvature on a grid (CSV)");
  add_common(curvature, f);
  curvature->add_option("--grid-x", f.grid_x, "x axis as lo:hi:n");
  curvature->add_option("--grid-y", f.grid_y, "y axis as lo:hi:n");

  auto* flatness = app.add_subcommand("flatness", "sampled sup|Y| and projective-flatness verdict (JSON)");
  add_common(flatness, f);
  flatness->add_option("--samples", f.samples, "number of in-domain samples [100]");
  flatness->add_option("--region", f.region, "sampling region xlo xhi ylo yhi")->expected(4);
  flatness->add_option("--seed", f.seed, "sampling seed [42]");
  flatness->add_option("--threshold", f.threshold, "flatness threshold on sup|Y| [1e-6]");

  auto* geodesic = app.add_subcommand("geodesic", "affinely parameterised geodesic (CSV)");
  add_common(geodesic, f);
  geodesic->add_option("--start", f.start, "start point x y [region centre]")->expected(2);
  geodesic->add_option("--direction", f.direction, "initial velocity [1 0]")->expected(2);
  geodesic->add_option("--t-max", f.t_max, "parameter length [1]");
  geodesic->add_option("--steps-per-unit", f.steps_per_unit, "RK4 steps per unit parameter [1000]");
  geodesic->add_option("--stride", f.stride, "keep every stride-th step [10]");
  auto* adaptive = geodesic->add_flag("--adaptive", f.adaptive, "adaptive Dormand-Prince integration");

  auto* straighten = app.add_subcommand("straighten", "map a geodesic batch through the developing map (JSON, SVG)");
  add_common(straighten, f);
  straighten->add_option("--region", f.region, "working region xlo xhi ylo yhi")->expected(4);
  straighten->add_option("--base", f.base, "frame base point [region centre]")->expected(2);
  straighten->add_option("--batch", f.batch, "geodesic batch auto:N [auto:12]");
  straighten->add_option("--seed", f.seed, "batch seed [42]");
  straighten->add_option("--t-max", f.t_max, "parameter length per geodesic [4]");
  straighten->add_option("--threshold", f.threshold, "flatness threshold on sup|Y| [1e-6]");
  straighten->add_option("--steps-per-unit", f.steps_per_unit, "RK4 steps per unit [1000]");
  straighten->add_option("--stride", f.stride, "keep every stride-th geodesic step [10]");
  straighten->add_option("--svg", f.svg, "write original and straightened curves as SVG");

  auto* verify = app.add_subcommand("liouville-verify", "check K against the closed form (JSON)");
  add_common(verify, f);
  verify->add_option("--params", f.params, "Liouville parameters p q r s t u")->expected(6);
  verify->add_option("--samples", f.samples, "number of in-domain samples [50]");
  verify->add_option("--region", f.region, "sampling region xlo xhi ylo yhi")->expected(4);
  verify->add_option("--seed", f.seed, "sampling seed [42]");
  verify->add_option("--tolerance", f.tolerance, "allowed |K - k_formula| / (1 + |k_formula|) [1e-6]");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  f.adaptive_set = adaptive->count() > 0;

  try
  {
    const Resolver r(f, load_config(f.config));
    CommandResult result;

    if (curvature->parsed())
    {
      CurvatureOptions o;
      o.metric = r.metric();
      const Box reg = default_region(o.metric);
      o.grid_x = parse_axis(r.pick(f.grid_x, "grid-x", format_axis({reg.xlo, reg.xhi, 5})));
      o.grid_y = parse_axis(r.pick(f.grid_y, "grid-y", format_axis({reg.ylo, reg.yhi, 5})));
      const Json cfg{{"metric", to_json(o.metric)}, {"grid-x", format_axis(o.grid_x)}, {"grid-y", format_axis(o.grid_y)}};
      result = cmd_curvature(o, cfg);
    }
    else if (flatness->parsed())
    {
      FlatnessOptions o;
      o.metric = r.metric();
      o.region = resolve_region(r, f, o.metric);
      o.samples = positive(r.pick(f.samples, "samples", 100), "samples");
      o.seed = r.pick(f.seed, "seed", std::uint64_t{42});
      o.threshold = positive(r.pick(f.threshold, "threshold", 1e-6), "threshold");
      const Json cfg{{"metric", to_json(o.metric)}, {"region", jvec(box_vec(o.region))}, {"samples", o.samples},
                     {"seed", o.seed},                {"threshold", jnum(o.threshold)}};
      result = cmd_flatness(o, cfg);
    }
    else if (geodesic->parsed())
    {
      GeodesicOptions o;
      o.metric = r.metric();
      const Point c = default_region(o.metric).center();
      const auto start = r.pick(f.start, "start", {c.x, c.y}, 2);
      const auto dir = r.pick(f.direction, "direction", {1.0, 0.0}, 2);
      o.start = {start[0], start[1]};
      o.direction = {dir[0], dir[1]};
      if (norm(o.direction) == 0.0)
        throw UsageError("direction must be nonzero");
      o.t_max = positive(r.pick(f.t_max, "t-max", 1.0), "t-max");
      o.steps_per_unit = positive(r.pick(f.steps_per_unit, "steps-per-unit", 1000), "steps-per-unit");
      o.stride = positive(r.pick(f.stride, "stride", 10), "stride");
      o.adaptive = f.adaptive_set ? f.adaptive : r.pick(std::optional<bool>{}, "adaptive", false);
      const Json cfg{{"metric", to_json(o.metric)}, {"start", jvec(start)},
                     {"direction", jvec(dir)},      {"t-max", jnum(o.t_max)},
                     {"steps-per-unit", o.steps_per_unit}, {"stride", o.stride},
                     {"adaptive", o.adaptive}};
      result = cmd_geodesic(o, cfg);
    }
    else if (straighten->parsed())
    {
      StraightenOptions o;
      o.metric = r.metric();
      o.region = resolve_region(r, f, o.metric);
      const Point c = o.region.center();
      const auto base = r.pick(f.base, "base", {c.x, c.y}, 2);
      o.base = {base[0], base[1]};
      o.batch = parse_batch(r.pick(f.batch, "batch", std::string("auto:12")));
      o.seed = r.pick(f.seed, "seed", std::uint64_t{42});
      o.t_max = positive(r.pick(f.t_max, "t-max", 4.0), "t-max");
      o.threshold = positive(r.pick(f.threshold, "threshold", 1e-6), "threshold");
      o.steps_per_unit = positive(r.pick(f.steps_per_unit, "steps-per-unit", 1000), "steps-per-unit");
      o.stride = positive(r.pick(f.stride, "stride", 10), "stride");
      const Json cfg{{"metric", to_json(o.metric)},
                     {"region", jvec(box_vec(o.region))},
                     {"base", jvec(base)},
                     {"batch", "auto:" + std::to_string(o.batch)},
                     {"seed", o.seed},
                     {"t-max", jnum(o.t_max)},
                     {"threshold", jnum(o.threshold)},
                     {"steps-per-unit", o.steps_per_unit},
                     {"stride", o.stride}};
      result = cmd_straighten(o, cfg);
    }
    else
    {
      LiouvilleVerifyOptions o;
      if (!f.params.empty())
      {
        if (f.metric || f.metric_json)
          throw UsageError("give either --params or a metric, not both");
        const auto& v = f.params;
        o.params = {v[0], v[1], v[2], v[3], v[4], v[5]};
      }
      else if (f.metric || f.metric_json || r.has("metric"))
        o.params = params_from(r.metric());
      else if (r.has("params"))
      {
        const auto v = r.pick(std::vector<double>{}, "params", {}, 6);
        o.params = {v[0], v[1], v[2], v[3], v[4], v[5]};
      }
      else
        throw UsageError("no Liouville parameters given; use --params p q r s t u or a metric spec");
      const MetricSpec spec{"liouville", o.params};
      o.region = resolve_region(r, f, spec);
      o.samples = positive(r.pick(f.samples, "samples", 50), "samples");
      o.seed = r.pick(f.seed, "seed", std::uint64_t{42});
      o.tolerance = positive(r.pick(f.tolerance, "tolerance", 1e-6), "tolerance");
      const Json cfg{{"metric", to_json(spec)},
                     {"region", jvec(box_vec(o.region))},
                     {"samples", o.samples},
                     {"seed", o.seed},
                     {"tolerance", jnum(o.tolerance)}};
      result = cmd_liouville_verify(o, cfg);
    }

    if (f.out)
      write_file(*f.out, result.document);
    else
      out << result.document;
    if (f.svg && result.svg)
      write_file(*f.svg, *result.svg);
    if (!result.message.empty())
      err << "error: " << result.message << "\n";
    return result.exit_code;
  }
  catch (const UsageError& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  catch (const DegenerateParamsError& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  catch (const PreconditionError& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  catch (const DomainError& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  catch (const NotProjectivelyFlatError& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitNotFlat;
  }
  catch (const IntegrationError& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitIntegration;
  }
  catch (const std::exception& e)
  {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("projgeom");
  for (const auto& a : args)
    argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace projgeom::cli

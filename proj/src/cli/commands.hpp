#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "projgeom/cli.hpp"

namespace projgeom::cli {

// What a command produced: the main document (CSV or JSON) and an optional SVG.
struct CommandResult
{
  int exit_code = kExitOk;
  std::string document;
  std::optional<std::string> svg;
  std::string message;  // for stderr
};

struct CurvatureOptions
{
  MetricSpec metric;
  Axis grid_x, grid_y;
};

struct FlatnessOptions
{
  MetricSpec metric;
  Box region;
  int samples = 100;
  std::uint64_t seed = 42;
  double threshold = 1e-6;
};

struct GeodesicOptions
{
  MetricSpec metric;
  Point start;
  Vec2 direction{1.0, 0.0};
  double t_max = 1.0;
  int steps_per_unit = 1000;
  int stride = 10;
  bool adaptive = false;
};

struct StraightenOptions
{
  MetricSpec metric;
  Box region;
  Point base;
  int batch = 12;
  std::uint64_t seed = 42;
  double t_max = 4.0;
  double threshold = 1e-6;
  int steps_per_unit = 1000;
  int stride = 10;
};

struct LiouvilleVerifyOptions
{
  LiouvilleParams params;
  Box region;
  int samples = 50;
  std::uint64_t seed = 42;
  double tolerance = 1e-6;
};

// `config` is the effective configuration echoed in reports and headers.
CommandResult cmd_curvature(const CurvatureOptions& o, const Json& config);
CommandResult cmd_flatness(const FlatnessOptions& o, const Json& config);
CommandResult cmd_geodesic(const GeodesicOptions& o, const Json& config);
CommandResult cmd_straighten(const StraightenOptions& o, const Json& config);
CommandResult cmd_liouville_verify(const LiouvilleVerifyOptions& o, const Json& config);

}  // namespace projgeom::cli

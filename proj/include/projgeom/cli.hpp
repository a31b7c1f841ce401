#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "projgeom/fields.hpp"
#include "projgeom/liouville.hpp"

namespace projgeom::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int
{
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitIntegration = 3,
  kExitNotFlat = 4,
};

// Bad flags, unknown metric names, malformed metric JSON or config files.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//--------------------------------------------------------------------------------------------------
// Metric specifications

struct MetricSpec
{
  std::string name;
  std::optional<LiouvilleParams> params;  // present iff name == "liouville"
};

const std::vector<std::string>& metric_names();

// {"name": ..., "params": {"p": ..., ...}}; all six params are required for liouville.
MetricSpec parse_metric_spec(const Json& j);
MetricSpec metric_spec_from_name(const std::string& name);
Json to_json(const MetricSpec& spec);

MetricField build_metric(const MetricSpec& spec);

// Working region used when none is given.
Box default_region(const MetricSpec& spec);

//--------------------------------------------------------------------------------------------------
// Argument syntax

struct Axis
{
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

// "lo:hi:n" with n >= 1.
Axis parse_axis(const std::string& text);
std::string format_axis(const Axis& axis);

// "auto:N" with N >= 1.
int parse_batch(const std::string& text);

//--------------------------------------------------------------------------------------------------
// Deterministic sampling from raw std::mt19937_64 draws.

class SampleRng
{
public:
  explicit SampleRng(std::uint64_t seed);

  // Uniform in [0, 1) from the top 53 bits of a 64-bit Mersenne twister draw.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::mt19937_64 engine_;
};

// In-domain points drawn uniformly from the region; stops after 1000 * count attempts.
std::vector<Point> sample_points(const Box& region, int count, std::uint64_t seed, const DomainFn& domain);

struct Ray
{
  Point start;
  Vec2 direction;  // unit chart length
};

// N rays from evenly spaced points on the region boundary (pulled 1% inwards) towards jittered
// interior points.
std::vector<Ray> auto_batch(const Box& region, int count, std::uint64_t seed);

//--------------------------------------------------------------------------------------------------
// Output formatting

// %.12g, with negative zero printed as 0.
std::string format_number(double v);

// v rounded to 12 significant digits (the JSON number policy).
double round12(double v);

// 64-bit FNV-1a of a string, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& text);

//--------------------------------------------------------------------------------------------------
// Entry point: parses argv (argv[0] is the program name) and returns the exit code. The vector
// overload takes the arguments without the program name.

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projgeom::cli

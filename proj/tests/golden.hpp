#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "projgeom/cli.hpp"

namespace golden {

namespace fs = std::filesystem;
using projgeom::cli::Json;

// One pinned CLI invocation. "@GOLDEN@" in an argument expands to the golden directory and
// "@SCRATCH@" to a per-run scratch directory (used for --svg and --out targets).
struct Case
{
  std::string name;
  std::vector<std::string> args;
  int exit_code = 0;
  std::optional<std::string> svg;  // scratch file name of the SVG the case writes
};

struct Outcome
{
  int exit_code = 0;
  std::string out;
  std::string err;
  std::optional<std::string> svg;
};

inline std::string read_file(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const fs::path& path, const std::string& text)
{
  std::ofstream o(path, std::ios::binary);
  if (!o)
    throw std::runtime_error("cannot write " + path.string());
  o << text;
}

inline std::vector<Case> load_cases(const fs::path& dir)
{
  const auto j = Json::parse(read_file(dir / "cases.json"));
  std::vector<Case> cases;
  for (const auto& c : j)
  {
    Case k;
    k.name = c.at("name").get<std::string>();
    k.args = c.at("args").get<std::vector<std::string>>();
    k.exit_code = c.at("exit").get<int>();
    if (c.contains("svg"))
      k.svg = c.at("svg").get<std::string>();
    cases.push_back(std::move(k));
  }
  return cases;
}

inline std::string expand(std::string arg, const fs::path& golden_dir, const fs::path& scratch)
{
  for (const auto& [token, value] : {std::pair{std::string("@GOLDEN@"), golden_dir.string()},
                                     std::pair{std::string("@SCRATCH@"), scratch.string()}})
    for (auto at = arg.find(token); at != std::string::npos; at = arg.find(token))
      arg.replace(at, token.size(), value);
  return arg;
}

inline Outcome run_case(const Case& c, const fs::path& golden_dir, const fs::path& scratch)
{
  fs::create_directories(scratch);
  std::vector<std::string> args;
  for (const auto& a : c.args)
    args.push_back(expand(a, golden_dir, scratch));
  std::ostringstream out, err;
  Outcome o;
  o.exit_code = projgeom::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  if (c.svg && fs::exists(scratch / *c.svg))
    o.svg = read_file(scratch / *c.svg);
  return o;
}

// Expected files: <name>.out, <name>.err and, for SVG cases, <name>.svg.
inline void store(const Case& c, const Outcome& o, const fs::path& golden_dir)
{
  write_file(golden_dir / (c.name + ".out"), o.out);
  write_file(golden_dir / (c.name + ".err"), o.err);
  if (o.svg)
    write_file(golden_dir / (c.name + ".svg"), *o.svg);
}

inline std::string first_difference(const std::string& expected, const std::string& actual)
{
  std::istringstream a(expected), b(actual);
  std::string la, lb;
  for (int line = 1;; ++line)
  {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb)
      return "byte difference in line endings";
    if (!ha || !hb || la != lb)
      return "line " + std::to_string(line) + ": expected '" + (ha ? la : "<eof>") + "', got '" +
             (hb ? lb : "<eof>") + "'";
  }
}

// Empty when the outcome matches the stored files byte for byte, otherwise the mismatches.
inline std::vector<std::string> compare(const Case& c, const Outcome& o, const fs::path& golden_dir)
{
  std::vector<std::string> problems;
  if (o.exit_code != c.exit_code)
    problems.push_back("exit code " + std::to_string(o.exit_code) + ", expected " + std::to_string(c.exit_code));
  auto check = [&](const std::string& ext, const std::string& actual) {
    const auto path = golden_dir / (c.name + ext);
    if (!fs::exists(path))
    {
      problems.push_back("missing " + path.filename().string());
      return;
    }
    const auto expected = read_file(path);
    if (expected != actual)
      problems.push_back(c.name + ext + " " + first_difference(expected, actual));
  };
  check(".out", o.out);
  check(".err", o.err);
  if (c.svg)
  {
    if (!o.svg)
      problems.push_back("no SVG written");
    else
      check(".svg", *o.svg);
  }
  return problems;
}

}  // namespace golden

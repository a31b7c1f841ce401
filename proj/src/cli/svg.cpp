#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace projgeom::cli {

namespace {

std::string num(double v)
{
  if (std::abs(v) < 5e-13)
    v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void layer(std::string& out, const char* name, const char* colour, double stroke,
           const std::vector<Polyline>& lines)
{
  out += "  <g id=\"" + std::string(name) + "\" class=\"" + name + "\" fill=\"none\" stroke=\"" + colour +
         "\" stroke-width=\"" + num(stroke) + "\" stroke-linejoin=\"round\">\n";
  for (const auto& line : lines)
  {
    if (line.size() < 2)
      continue;
    out += "    <polyline points=\"";
    for (std::size_t i = 0; i < line.size(); ++i)
    {
      if (i)
        out += ' ';
      out += num(line[i].x) + "," + num(-line[i].y);
    }
    out += "\"/>\n";
  }
  out += "  </g>\n";
}

}  // namespace

std::string render_svg(const std::vector<Polyline>& original, const std::vector<Polyline>& straightened)
{
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const auto* set : {&original, &straightened})
    for (const auto& line : *set)
      for (const auto& p : line)
      {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, -p.y);
        yhi = std::max(yhi, -p.y);
      }
  if (!(xlo <= xhi))
  {
    xlo = ylo = -1.0;
    xhi = yhi = 1.0;
  }
  double w = xhi - xlo, h = yhi - ylo;
  const double span = std::max({w, h, 1e-9});
  w = std::max(w, 1e-3 * span);
  h = std::max(h, 1e-3 * span);
  const double mx = 0.05 * w, my = 0.05 * h;
  const double vw = w + 2 * mx, vh = h + 2 * my;
  const double stroke = 0.004 * std::max(vw, vh);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(xlo - mx) + " " +
         num(ylo - my) + " " + num(vw) + " " + num(vh) + "\" width=\"800\" height=\"" +
         num(std::round(800.0 * vh / vw)) + "\">\n";
  layer(out, "original", "#1f77b4", stroke, original);
  layer(out, "straightened", "#d62728", stroke, straightened);
  out += "</svg>\n";
  return out;
}

}  // namespace projgeom::cli

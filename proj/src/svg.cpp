#include "tropcount/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tropcount {

namespace {

constexpr double kSize = 400;
constexpr double kCenter = kSize / 2;
constexpr double kRadius = 150;

struct Point {
  double x, y;
};

Point tip(const IntVector& ray, double scale) {
  const double x = ray[0].get_d(), y = ray[1].get_d();
  const double n = std::hypot(x, y);
  return {kCenter + scale * x / n, kCenter - scale * y / n};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string fan_svg(const Fan& fan, const std::string& title) {
  if (fan.rank() != 2) throw Error(ErrorKind::UnsupportedRank, "only rank-2 fans can be drawn");
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) out << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  int shade = 0;
  for (std::size_t c = 0; c < fan.cone_count(); ++c) {
    const auto& rays = fan.cone(static_cast<int>(c));
    if (rays.size() != 2) continue;
    Point a = tip(fan.rays()[static_cast<std::size_t>(rays[0])], kRadius);
    Point b = tip(fan.rays()[static_cast<std::size_t>(rays[1])], kRadius);
    // Arc sweeps the short way since cones are strictly convex.
    const auto& u = fan.rays()[static_cast<std::size_t>(rays[0])];
    const auto& v = fan.rays()[static_cast<std::size_t>(rays[1])];
    const int sweep = sgn(Integer(u[0] * v[1] - u[1] * v[0])) > 0 ? 0 : 1;
    out << "<path d=\"M " << kCenter << ' ' << kCenter << " L " << fmt(a.x) << ' ' << fmt(a.y) << " A " << kRadius
        << ' ' << kRadius << " 0 0 " << sweep << ' ' << fmt(b.x) << ' ' << fmt(b.y) << " Z\" fill=\""
        << (shade++ % 2 ? "#c6dbef" : "#9ecae1") << "\" stroke=\"none\"/>\n";
  }
  for (const auto& r : fan.rays()) {
    Point p = tip(r, kRadius + 10);
    Point l = tip(r, kRadius + 30);
    out << "<line x1=\"" << kCenter << "\" y1=\"" << kCenter << "\" x2=\"" << fmt(p.x) << "\" y2=\"" << fmt(p.y)
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(l.x) << "\" y=\"" << fmt(l.y)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">"
        << to_string(r) << "</text>\n";
  }
  out << "<circle cx=\"" << kCenter << "\" cy=\"" << kCenter << "\" r=\"3\" fill=\"black\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace tropcount

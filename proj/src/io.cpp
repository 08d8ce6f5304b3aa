#include "covgrid/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "covgrid/error.hpp"
#include "json.hpp"

namespace covgrid {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kDecompositionFormat = "covgrid.decomposition/1";
constexpr const char* kPlanFormat = "covgrid.plan/1";

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)) +
                     ": invalid JSON: " + e.what());
  }
}

const Json& require(const Json& obj, const char* field) {
  if (!obj.is_object() || !obj.contains(field)) {
    throw ParseError(std::string("missing field '") + field + "'");
  }
  return obj.at(field);
}

double number(const Json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError("field '" + field + "': expected a number");
  return v.get<double>();
}

std::size_t count(const Json& v, const std::string& field) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError("field '" + field + "': expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

bool boolean(const Json& v, const std::string& field) {
  if (!v.is_boolean()) throw ParseError("field '" + field + "': expected true or false");
  return v.get<bool>();
}

std::string string(const Json& v, const std::string& field) {
  if (!v.is_string()) throw ParseError("field '" + field + "': expected a string");
  return v.get<std::string>();
}

std::vector<Point> points(const Json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError("field '" + field + "': expected [[x, y], ...]");
  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Json& p = v[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) throw ParseError("field '" + where + "': expected [x, y]");
    out.push_back({number(p[0], where), number(p[1], where)});
  }
  return out;
}

Json points_json(const std::vector<Point>& pts) {
  Json arr = Json::array();
  for (const Point& p : pts) arr.push_back({p.x, p.y});
  return arr;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0" || s.rfind("-0.", 0) == 0) {
    // Avoid "-0.00" for values that round to zero.
    if (s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  }
  return s;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::vector<Point> parse_wkt_polygon(std::string_view text) {
  std::string s = trim(text);
  std::string upper = s;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper.rfind("POLYGON", 0) != 0) {
    throw ParseError("line 1: expected a WKT POLYGON");
  }
  const std::size_t open = s.find('(');
  if (open == std::string::npos || s.find('(', open + 1) == std::string::npos) {
    throw ParseError("line 1: expected POLYGON((x y, ...))");
  }
  const std::size_t ring_start = s.find('(', open + 1) + 1;
  const std::size_t ring_end = s.find(')', ring_start);
  if (ring_end == std::string::npos) throw ParseError("line 1: unterminated ring");
  const std::string rest = trim(std::string_view(s).substr(ring_end + 1));
  if (rest != ")") {
    throw ValidationError("polygons with holes are not supported");
  }

  std::vector<Point> pts;
  std::string_view ring = std::string_view(s).substr(ring_start, ring_end - ring_start);
  std::size_t pos = 0;
  while (pos <= ring.size()) {
    const std::size_t comma = std::min(ring.find(',', pos), ring.size());
    const std::string pair = trim(ring.substr(pos, comma - pos));
    double xy[2];
    const char* p = pair.data();
    const char* end = pair.data() + pair.size();
    for (double& v : xy) {
      while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) {
        throw ParseError("line 1: bad coordinate pair '" + pair + "' in WKT ring");
      }
      p = next;
    }
    if (p != end) throw ParseError("line 1: bad coordinate pair '" + pair + "' in WKT ring");
    pts.push_back({xy[0], xy[1]});
    pos = comma + 1;
  }
  if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  return pts;
}

Scenario parse_scenario(std::string_view text) {
  const std::string body = trim(text);
  if (body.empty()) throw ParseError("line 1: empty scenario");
  if (body.front() != '{') {
    return Scenario{Polygon(parse_wkt_polygon(body))};
  }

  const Json j = parse_json(text);
  const Json& poly = require(j, "polygon");
  std::vector<Point> vertices =
      poly.is_string() ? parse_wkt_polygon(poly.get<std::string>()) : points(poly, "polygon");
  Scenario sc{Polygon(std::move(vertices))};
  if (j.contains("r")) sc.radius = number(j["r"], "r");
  if (j.contains("v")) sc.speed = number(j["v"], "v");
  if (j.contains("method")) sc.method = method_from_string(string(j["method"], "method"));
  if (j.contains("mode")) sc.mode = plan_mode_from_string(string(j["mode"], "mode"));
  if (j.contains("free_endpoints")) {
    sc.free_endpoints = boolean(j["free_endpoints"], "free_endpoints");
  }
  if (j.contains("exact_cap")) sc.exact_cap = count(j["exact_cap"], "exact_cap");

  if (!(sc.radius > 0.0) || !std::isfinite(sc.radius)) {
    throw ValidationError("field 'r': footprint radius must be positive");
  }
  if (!(sc.speed > 0.0) || !std::isfinite(sc.speed)) {
    throw ValidationError("field 'v': airspeed must be positive");
  }
  return sc;
}

std::string write_decomposition(const Decomposition& d) {
  Json j;
  j["format"] = kDecompositionFormat;
  j["method"] = std::string(to_string(d.method));
  j["r"] = d.radius;
  j["hull_used"] = d.hull_used;
  j["transform"] = {{"angle", d.transform.angle()},
                    {"translation",
                     {d.transform.translation().x, d.transform.translation().y}}};
  j["polygon"] = points_json(d.polygon);
  Json channels = Json::array();
  for (const ChannelTrace& c : d.channels) {
    channels.push_back({{"y_b", c.y_bottom},
                        {"y_t", c.y_top},
                        {"y_t_adj", c.y_top_adjusted},
                        {"l", c.length},
                        {"n", c.cells},
                        {"e", c.excess},
                        {"delta", c.delta},
                        {"x_min", c.x_min},
                        {"x_max", c.x_max}});
  }
  j["channels"] = std::move(channels);
  Json cells = Json::array();
  for (const Cell& c : d.cells) {
    cells.push_back({{"x", c.center.x},
                     {"y", c.center.y},
                     {"width", c.width},
                     {"height", c.height}});
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

Decomposition read_decomposition(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.contains("cells")) throw ParseError("not a decomposition document (no 'cells')");
  Decomposition d;
  d.method = method_from_string(string(require(j, "method"), "method"));
  d.radius = number(require(j, "r"), "r");
  d.hull_used = boolean(require(j, "hull_used"), "hull_used");
  const Json& t = require(j, "transform");
  const Json& tr = require(t, "translation");
  if (!tr.is_array() || tr.size() != 2) throw ParseError("field 'transform.translation': expected [x, y]");
  d.transform = AffineTransform(number(require(t, "angle"), "transform.angle"),
                                {number(tr[0], "transform.translation"),
                                 number(tr[1], "transform.translation")});
  d.polygon = points(require(j, "polygon"), "polygon");
  for (const Json& c : require(j, "channels")) {
    ChannelTrace ch;
    ch.y_bottom = number(require(c, "y_b"), "channels.y_b");
    ch.y_top = number(require(c, "y_t"), "channels.y_t");
    ch.y_top_adjusted = number(require(c, "y_t_adj"), "channels.y_t_adj");
    ch.length = number(require(c, "l"), "channels.l");
    ch.cells = count(require(c, "n"), "channels.n");
    ch.excess = number(require(c, "e"), "channels.e");
    ch.delta = number(require(c, "delta"), "channels.delta");
    ch.x_min = number(require(c, "x_min"), "channels.x_min");
    ch.x_max = number(require(c, "x_max"), "channels.x_max");
    d.channels.push_back(ch);
  }
  for (const Json& c : require(j, "cells")) {
    d.cells.push_back({{number(require(c, "x"), "cells.x"), number(require(c, "y"), "cells.y")},
                       number(require(c, "width"), "cells.width"),
                       number(require(c, "height"), "cells.height")});
  }
  return d;
}

std::string write_plan(const PathPlan& plan) {
  Json j;
  j["format"] = kPlanFormat;
  j["mode"] = std::string(to_string(plan.mode));
  j["optimal"] = plan.optimal;
  j["t_cov"] = plan.t_cov;
  j["order"] = plan.order;
  return j.dump(2) + "\n";
}

std::string write_arc_solution(const ArcSolution& sol) {
  Json j;
  j["format"] = kPlanFormat;
  j["mode"] = "paper";
  j["optimal"] = sol.optimal;
  j["t_cov"] = sol.t_cov;
  j["single_path"] = sol.single_path;
  j["start"] = sol.start;
  j["end"] = sol.end;
  Json arcs = Json::array();
  for (const Arc& a : sol.arcs) arcs.push_back({a.from, a.to});
  j["arcs"] = std::move(arcs);
  if (sol.single_path) {
    std::vector<std::size_t> next(sol.enter.size(), 0);
    for (const Arc& a : sol.arcs) next[a.from] = a.to;
    std::vector<std::size_t> order{sol.start};
    while (order.size() < sol.enter.size()) order.push_back(next[order.back()]);
    j["order"] = order;
  }
  return j.dump(2) + "\n";
}

PathPlan read_plan(std::string_view text) {
  const Json j = parse_json(text);
  PathPlan plan;
  plan.mode = plan_mode_from_string(string(require(j, "mode"), "mode"));
  plan.optimal = boolean(require(j, "optimal"), "optimal");
  plan.t_cov = number(require(j, "t_cov"), "t_cov");
  if (!j.contains("order")) {
    throw ValidationError("plan has no visit order (relaxed solution with subtours)");
  }
  for (const Json& v : j["order"]) plan.order.push_back(count(v, "order"));
  return plan;
}

std::string render_svg(const Decomposition& d, const std::optional<PathPlan>& plan) {
  const Bounds b = bounds(d.polygon);
  const double w = b.max_x - b.min_x;
  const double h = b.max_y - b.min_y;
  const double mx = 0.05 * w;
  const double my = 0.05 * h;
  const double scale = std::max(w, h);
  const std::string stroke = fixed(0.002 * scale, 4);
  constexpr int kDigits = 4;
  // SVG y grows downwards; negate y so north is up.
  auto sx = [&](double x) { return fixed(x, kDigits); };
  auto sy = [&](double y) { return fixed(-y, kDigits); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"" +
         fixed(800.0 * (h + 2 * my) / (w + 2 * mx), 0) + "\" viewBox=\"" +
         sx(b.min_x - mx) + " " + sy(b.max_y + my) + " " + fixed(w + 2 * mx, kDigits) + " " +
         fixed(h + 2 * my, kDigits) + "\">\n";
  out += "  <title>" + std::string(to_string(d.method)) + " decomposition, " +
         std::to_string(d.cells.size()) + " cells</title>\n";

  out += "  <path class=\"polygon\" fill=\"#dbe9f6\" stroke=\"#1f4e79\" stroke-width=\"" +
         fixed(2 * 0.002 * scale, 4) + "\" d=\"";
  for (std::size_t i = 0; i < d.polygon.size(); ++i) {
    out += (i == 0 ? "M " : " L ") + sx(d.polygon[i].x) + " " + sy(d.polygon[i].y);
  }
  out += " Z\"/>\n";

  // Cells are axis-aligned in the normalized frame; the flipped SVG frame
  // turns the inverse rotation into rotate(+angle).
  const double degrees = d.transform.angle() * 180.0 / std::numbers::pi;
  out += "  <g class=\"cells\" fill=\"none\" stroke=\"#555555\" stroke-width=\"" + stroke + "\">\n";
  for (const Cell& c : d.cells) {
    out += "    <rect x=\"" + sx(c.center.x - c.width / 2) + "\" y=\"" +
           sy(c.center.y + c.height / 2) + "\" width=\"" + fixed(c.width, kDigits) +
           "\" height=\"" + fixed(c.height, kDigits) + "\" transform=\"rotate(" +
           fixed(degrees, 6) + " " + sx(c.center.x) + " " + sy(c.center.y) + ")\"/>\n";
  }
  out += "  </g>\n";

  const std::string radius = fixed(0.006 * scale, 4);
  out += "  <g class=\"centers\" fill=\"#c00000\">\n";
  for (const Cell& c : d.cells) {
    out += "    <circle cx=\"" + sx(c.center.x) + "\" cy=\"" + sy(c.center.y) + "\" r=\"" +
           radius + "\"/>\n";
  }
  out += "  </g>\n";

  if (plan && !plan->order.empty()) {
    out += "  <polyline class=\"plan\" fill=\"none\" stroke=\"#e08000\" stroke-width=\"" +
           fixed(1.5 * 0.002 * scale, 4) + "\" points=\"";
    for (std::size_t k = 0; k < plan->order.size(); ++k) {
      const Point& p = d.cells.at(plan->order[k]).center;
      out += (k == 0 ? "" : " ") + sx(p.x) + "," + sy(p.y);
    }
    out += "\"/>\n";
    const Point& s = d.cells.at(plan->order.front()).center;
    const Point& e = d.cells.at(plan->order.back()).center;
    const std::string marker = fixed(0.015 * scale, 4);
    out += "  <circle class=\"start\" fill=\"#00a000\" cx=\"" + sx(s.x) + "\" cy=\"" + sy(s.y) +
           "\" r=\"" + marker + "\"/>\n";
    out += "  <circle class=\"end\" fill=\"#000000\" cx=\"" + sx(e.x) + "\" cy=\"" + sy(e.y) +
           "\" r=\"" + marker + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string write_comparison_csv(const std::vector<ComparisonCase>& cases) {
  std::string out =
      "case,area,N_SGD,N_AGD,cell_reduction,Z_SGD,Z_AGD,relative_improvement_pct,"
      "absolute_gap,Z_AGD_paper,Z_AGD_optimal\n";
  for (const ComparisonCase& c : cases) {
    const ComparisonRow& r = c.row;
    out += c.name + "," + fixed(r.area, 2) + "," + std::to_string(r.n_sgd) + "," +
           std::to_string(r.n_agd) + "," + std::to_string(r.cell_reduction) + "," +
           fixed(r.z_sgd, 2) + "," + fixed(r.z_agd, 2) + "," +
           fixed(100.0 * r.relative_improvement, 2) + "," + fixed(r.absolute_gap, 2) + "," +
           (r.z_agd_paper ? fixed(*r.z_agd_paper, 2) : "") + "," +
           (r.z_agd_optimal ? "true" : "false") + "\n";
  }
  if (cases.size() > 1) {
    double area = 0, n_sgd = 0, n_agd = 0, red = 0, z_sgd = 0, z_agd = 0, imp = 0, gap = 0;
    for (const ComparisonCase& c : cases) {
      area += c.row.area;
      n_sgd += static_cast<double>(c.row.n_sgd);
      n_agd += static_cast<double>(c.row.n_agd);
      red += static_cast<double>(c.row.cell_reduction);
      z_sgd += c.row.z_sgd;
      z_agd += c.row.z_agd;
      imp += c.row.relative_improvement;
      gap += c.row.absolute_gap;
    }
    const double k = static_cast<double>(cases.size());
    out += "mean," + fixed(area / k, 2) + "," + fixed(n_sgd / k, 2) + "," + fixed(n_agd / k, 2) +
           "," + fixed(red / k, 2) + "," + fixed(z_sgd / k, 2) + "," + fixed(z_agd / k, 2) + "," +
           fixed(100.0 * imp / k, 2) + "," + fixed(gap / k, 2) + ",,\n";
  }
  return out;
}

}  // namespace covgrid

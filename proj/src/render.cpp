#include "arearel/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace arearel {

namespace {

const char* kFill[2] = {"#f2c14e", "#5b8cc0"};
const char* kNeutral = "#d9d9d9";

std::string num(double v) {
  if (std::fabs(v) < 5e-7) v = 0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Triangulation& t, const Drawing& d, const RenderOptions& opt) {
  require_drawing(t, d);
  if (!d.is_real()) throw std::invalid_argument("complex drawings are not renderable");
  if (!opt.colors.empty() && static_cast<int>(opt.colors.size()) != t.triangle_count())
    throw std::invalid_argument("render_svg: one color per triangle");

  int n = t.vertex_count;
  std::vector<double> x(n), y(n);
  for (int v = 0; v < n; ++v) {
    x[v] = d.coords[v].x.re.to_double();
    y[v] = d.coords[v].y.re.to_double();
  }
  double x0 = *std::min_element(x.begin(), x.end()), x1 = *std::max_element(x.begin(), x.end());
  double y0 = *std::min_element(y.begin(), y.end()), y1 = *std::max_element(y.begin(), y.end());
  double scale = std::max(x1 - x0, y1 - y0);
  if (scale == 0) scale = 1;
  // flip so that y grows upward
  auto px = [&](int v) { return (x[v] - x0) / scale; };
  auto py = [&](int v) { return 1 - (y[v] - y0) / scale; };
  double stroke = 0.004;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"400\" height=\"400\">\n";
  auto as = areas(t, d);
  for (int i = 0; i < t.triangle_count(); ++i) {
    if (as[i].is_zero()) continue;
    const auto& tr = t.triangles[i];
    const char* fill = opt.colors.empty() ? kNeutral : kFill[opt.colors[i] & 1];
    s += "  <polygon points=\"";
    for (int k = 0; k < 3; ++k) s += (k ? " " : "") + num(px(tr[k])) + "," + num(py(tr[k]));
    s += "\" fill=\"" + std::string(fill) + "\" stroke=\"none\"/>\n";
  }
  for (auto e : edges(t)) {
    if (d.coords[e[0]] == d.coords[e[1]]) continue;
    s += "  <line x1=\"" + num(px(e[0])) + "\" y1=\"" + num(py(e[0])) + "\" x2=\"" + num(px(e[1])) + "\" y2=\"" +
         num(py(e[1])) + "\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\"/>\n";
  }
  for (auto& c : opt.constraints) {
    std::vector<int> vs(c.vertices.begin(), c.vertices.end());
    int a = -1, b = -1;
    double best = 0;
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j) {
        double dx = px(vs[i]) - px(vs[j]), dy = py(vs[i]) - py(vs[j]);
        if (dx * dx + dy * dy > best) {
          best = dx * dx + dy * dy;
          a = vs[i];
          b = vs[j];
        }
      }
    if (a < 0) continue;
    s += "  <line x1=\"" + num(px(a)) + "\" y1=\"" + num(py(a)) + "\" x2=\"" + num(px(b)) + "\" y2=\"" + num(py(b)) +
         "\" stroke=\"#c0392b\" stroke-width=\"" + num(stroke * 1.5) + "\" stroke-dasharray=\"0.01 0.01\"/>\n";
  }
  for (int i : opt.doomed) {
    const auto& tr = t.triangles.at(i);
    double cx = (px(tr[0]) + px(tr[1]) + px(tr[2])) / 3, cy = (py(tr[0]) + py(tr[1]) + py(tr[2])) / 3;
    s += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"0.012\" fill=\"black\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string render_svg(const ConstrainedTriangulation& ct, const Drawing& d, std::vector<int> colors) {
  auto problems = validate_constrained(ct, d);
  if (!problems.empty()) throw std::invalid_argument("render_svg: " + problems.front());
  RenderOptions opt;
  opt.colors = std::move(colors);
  opt.constraints = ct.constraints;
  opt.doomed = ct.doomed_triangles();
  return render_svg(ct.base, d, opt);
}

}  // namespace arearel

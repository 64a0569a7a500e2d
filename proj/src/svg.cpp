#include "isokin/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "isokin/error.hpp"

namespace isokin {

namespace {

std::string num(double v) {
  if (std::abs(v) < 5e-4) v = 0.0;  // avoid "-0.000"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Box {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

  void add(Vec2 p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  double diagonal() const { return std::hypot(xmax - xmin, ymax - ymin); }
};

Box bounds(const RenderPanel& panel) {
  const Vec2 first = panel.config.joint_centers.empty() ? panel.config.operation_point : panel.config.joint_centers[0];
  Box box{first.x, first.x, first.y, first.y};
  for (const Vec2& j : panel.config.joint_centers) box.add(j);
  box.add(panel.config.operation_point);
  if (panel.centroid) box.add(*panel.centroid);
  for (const Vec2& p : panel.set_points) box.add(p);
  return box;
}

/// Maps world coordinates into one panel with y pointing up.
class PanelTransform {
 public:
  PanelTransform(const Box& box, double origin_x, double origin_y, double size) {
    const double margin = 0.12 * size;
    const double title_band = 0.1 * size;
    const double usable = size - 2.0 * margin - title_band;
    const double extent = std::max({box.xmax - box.xmin, box.ymax - box.ymin, 1e-9});
    scale_ = usable / extent;
    const double cx = 0.5 * (box.xmin + box.xmax);
    const double cy = 0.5 * (box.ymin + box.ymax);
    ox_ = origin_x + 0.5 * size - scale_ * cx;
    oy_ = origin_y + title_band + 0.5 * (size - title_band) + scale_ * cy;
  }

  double x(Vec2 p) const { return ox_ + scale_ * p.x; }
  double y(Vec2 p) const { return oy_ - scale_ * p.y; }
  double length(double world) const { return scale_ * world; }

 private:
  double scale_ = 1.0;
  double ox_ = 0.0;
  double oy_ = 0.0;
};

void draw_panel(std::ostream& out, const RenderPanel& panel, double origin_x, double origin_y, double size) {
  const Box box = bounds(panel);
  const PanelTransform t(box, origin_x, origin_y, size);
  const double diag = box.diagonal() > 0.0 ? box.diagonal() : 1.0;
  const double joint_radius = t.length(0.02 * diag);
  const double marker = 2.0 * joint_radius;
  const double stroke = std::max(1.0, 0.4 * joint_radius);

  out << "  <g class=\"panel\">\n";
  out << "    <rect x=\"" << num(origin_x) << "\" y=\"" << num(origin_y) << "\" width=\"" << num(size)
      << "\" height=\"" << num(size) << "\" fill=\"white\" stroke=\"#cccccc\"/>\n";
  out << "    <text x=\"" << num(origin_x + 0.5 * size) << "\" y=\"" << num(origin_y + 0.07 * size)
      << "\" font-family=\"sans-serif\" font-size=\"" << num(0.045 * size) << "\" text-anchor=\"middle\">"
      << escape(panel.title) << "</text>\n";

  for (const Vec2& p : panel.set_points) {
    out << "    <circle cx=\"" << num(t.x(p)) << "\" cy=\"" << num(t.y(p)) << "\" r=\"" << num(0.5 * joint_radius)
        << "\" fill=\"#bbbbbb\"/>\n";
  }

  const auto& joints = panel.config.joint_centers;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const Vec2 from = joints[i];
    const Vec2 to = i + 1 < joints.size() ? joints[i + 1] : panel.config.operation_point;
    out << "    <line x1=\"" << num(t.x(from)) << "\" y1=\"" << num(t.y(from)) << "\" x2=\"" << num(t.x(to))
        << "\" y2=\"" << num(t.y(to)) << "\" stroke=\"black\" stroke-width=\"" << num(stroke) << "\"/>\n";
  }
  for (const Vec2& j : joints) {
    out << "    <circle cx=\"" << num(t.x(j)) << "\" cy=\"" << num(t.y(j)) << "\" r=\"" << num(joint_radius)
        << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << num(stroke) << "\"/>\n";
  }

  if (panel.centroid) {
    const Vec2 c = *panel.centroid;
    const double arm = 2.0 * marker;
    out << "    <line x1=\"" << num(t.x(c) - arm) << "\" y1=\"" << num(t.y(c)) << "\" x2=\"" << num(t.x(c) + arm)
        << "\" y2=\"" << num(t.y(c)) << "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
    out << "    <line x1=\"" << num(t.x(c)) << "\" y1=\"" << num(t.y(c) - arm) << "\" x2=\"" << num(t.x(c))
        << "\" y2=\"" << num(t.y(c) + arm) << "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
  }

  const Vec2 p = panel.config.operation_point;
  out << "    <rect x=\"" << num(t.x(p) - 0.5 * marker) << "\" y=\"" << num(t.y(p) - 0.5 * marker) << "\" width=\""
      << num(marker) << "\" height=\"" << num(marker) << "\" fill=\"black\"/>\n";
  out << "  </g>\n";
}

}  // namespace

std::string render_svg(std::span<const RenderPanel> panels, const RenderOptions& options) {
  if (panels.empty()) throw Error(ErrorCode::NothingToRender, "no chains selected for rendering");
  const std::size_t columns = std::max<std::size_t>(1, std::min(options.columns, panels.size()));
  const std::size_t rows = (panels.size() + columns - 1) / columns;
  const double size = options.panel_size;
  const double width = size * static_cast<double>(columns);
  const double height = size * static_cast<double>(rows);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const double x = size * static_cast<double>(i % columns);
    const double y = size * static_cast<double>(i / columns);
    draw_panel(out, panels[i], x, y, size);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace isokin

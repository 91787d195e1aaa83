#include "cavity/svg.hpp"

#include <fmt/format.h>

namespace cavity {

namespace {

class SvgWriter {
 public:
  explicit SvgWriter(const TriangleDomain& d) : a_(d.a()) {}

  // physical -> user coordinates (y flipped)
  std::string point(PhysicalPoint p) const { return fmt::format("{:.6f},{:.6f}", p.x, a_ - p.y); }

  void open(const std::string& title) {
    const double mx = 0.05 * 2.0 * a_;
    const double my = 0.05 * a_;
    body_ += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" height=\"440\" "
        "viewBox=\"{:.6f} {:.6f} {:.6f} {:.6f}\" preserveAspectRatio=\"xMidYMid meet\">\n",
        -mx, -my, 2.0 * a_ + 2.0 * mx, a_ + 2.0 * my);
    body_ += fmt::format("<title>{}</title>\n", escape(title));
  }

  void polygon(const std::vector<PhysicalPoint>& pts, std::string_view style) {
    body_ += "<polygon points=\"" + join(pts) + "\" " + std::string(style) + "/>\n";
  }

  void polyline(const std::vector<PhysicalPoint>& pts, std::string_view style) {
    body_ += "<polyline points=\"" + join(pts) + "\" " + std::string(style) + "/>\n";
  }

  void circle(PhysicalPoint c, double r, std::string_view style) {
    body_ += fmt::format("<circle cx=\"{:.6f}\" cy=\"{:.6f}\" r=\"{:.6f}\" {}/>\n", c.x, a_ - c.y, r, style);
  }

  void square(PhysicalPoint c, double half, std::string_view style) {
    body_ += fmt::format("<rect x=\"{:.6f}\" y=\"{:.6f}\" width=\"{:.6f}\" height=\"{:.6f}\" {}/>\n", c.x - half,
                         a_ - c.y - half, 2.0 * half, 2.0 * half, style);
  }

  std::string close() { return body_ + "</svg>\n"; }

 private:
  std::string join(const std::vector<PhysicalPoint>& pts) const {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out += ' ';
      out += point(pts[i]);
    }
    return out;
  }

  static std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
      switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
      }
    }
    return out;
  }

  double a_;
  std::string body_;
};

}  // namespace

std::string render_flow_svg(const TriangleDomain& d, const std::vector<Streamline>& lines,
                            const std::vector<StagnationPoint>& stagnation, const std::string& title) {
  SvgWriter svg(d);
  svg.open(title);
  const double a = d.a();
  const std::string outline =
      fmt::format("fill=\"#f7f7f7\" stroke=\"#000000\" stroke-width=\"{:.6f}\"", 0.006 * a);
  const auto [o, va, b] = d.vertices();
  svg.polygon({o, va, b}, outline);

  const std::string line_style =
      fmt::format("fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"{:.6f}\" stroke-linejoin=\"round\"", 0.003 * a);
  for (const auto& line : lines) {
    if (line.vertices.size() < 2) continue;
    // cap the vertex count per polyline at about 2000
    std::vector<PhysicalPoint> pts;
    const std::size_t stride = std::max<std::size_t>(1, line.vertices.size() / 2000);
    for (std::size_t k = 0; k < line.vertices.size(); k += stride) pts.push_back(line.vertices[k]);
    if (!(pts.back() == line.vertices.back())) pts.push_back(line.vertices.back());
    svg.polyline(pts, line_style);
  }

  const double r = 0.015 * a;
  for (const auto& s : stagnation) {
    switch (s.kind) {
      case StagnationKind::Center:
        svg.circle(s.location, r, "fill=\"#c0392b\" stroke=\"none\"");
        break;
      case StagnationKind::Saddle:
        svg.square(s.location, r, "fill=\"#27ae60\" stroke=\"none\"");
        break;
      case StagnationKind::Degenerate: {
        const auto c = s.location;
        svg.polygon({{c.x, c.y + r}, {c.x + r, c.y}, {c.x, c.y - r}, {c.x - r, c.y}}, "fill=\"#7f8c8d\" stroke=\"none\"");
        break;
      }
    }
  }
  return svg.close();
}

}  // namespace cavity

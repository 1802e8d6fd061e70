#include "gtom/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace gtom {

namespace {

struct Pt {
  double x = 0;
  double y = 0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(v) < 5e-4 ? 0.0 : v);
  return buf;
}

constexpr std::array<const char*, 8> kPalette{"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                                              "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};
constexpr double kMargin = 20.0;

class Canvas {
 public:
  Canvas(int n, int d, const RenderSpec& spec) : n_(n), d_(d), spec_(spec) {}

  // Dilated simplex coordinates to pixels.
  Pt place(const RationalVector& v) const {
    if (d_ == 2) return {kMargin + v(1).convert_to<double>() * spec_.scale, kMargin + 20.0};
    const double b = v(1).convert_to<double>();
    const double c = v(2).convert_to<double>();
    const double h = std::sqrt(3.0) / 2.0;
    return {kMargin + (b + c / 2.0) * spec_.scale, kMargin + (n_ - c) * h * spec_.scale};
  }

  double width() const { return 2 * kMargin + n_ * spec_.scale; }
  double height() const {
    return d_ == 2 ? 2 * kMargin + 40.0 : 2 * kMargin + n_ * std::sqrt(3.0) / 2.0 * spec_.scale;
  }

 private:
  int n_;
  int d_;
  RenderSpec spec_;
};

Pt centroid(const std::vector<Pt>& pts) {
  Pt c;
  for (const Pt& p : pts) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(pts.size());
  c.y /= static_cast<double>(pts.size());
  return c;
}

// Polygon vertices in angular order around their centroid.
std::vector<Pt> around(std::vector<Pt> pts) {
  const Pt c = centroid(pts);
  std::sort(pts.begin(), pts.end(), [&](const Pt& a, const Pt& b) {
    return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
  });
  return pts;
}

void line(std::ostringstream& out, Pt a, Pt b, const char* extra) {
  out << "  <line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\"" << fmt(b.x) << "\" y2=\"" << fmt(b.y)
      << "\" " << extra << "/>\n";
}

}  // namespace

std::string render_mixed(const Subdivision& s, const RenderSpec& spec) {
  const int n = s.ambient().n();
  const int d = s.ambient().d();
  if (d != 2 && d != 3) throw PreconditionError("rendering needs d = 2 or d = 3");
  if (!(spec.scale > 0)) throw PreconditionError("render scale must be positive");
  const Canvas canvas(n, d, spec);
  const std::vector<MixedCell> cells = cayley_to_mixed(s);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(canvas.width()) << "\" height=\""
      << fmt(canvas.height()) << "\" viewBox=\"0 0 " << fmt(canvas.width()) << " " << fmt(canvas.height()) << "\">\n";

  std::map<BipartiteType, Pt> centers;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    std::vector<Pt> pts;
    for (const auto& v : cells[k].vertices) pts.push_back(canvas.place(v));
    const char* fill = kPalette[k % kPalette.size()];
    if (d == 2) {
      double lo = pts.front().x, hi = pts.front().x;
      for (const Pt& p : pts) {
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
      }
      out << "  <rect x=\"" << fmt(lo) << "\" y=\"" << fmt(kMargin + 10.0) << "\" width=\"" << fmt(hi - lo)
          << "\" height=\"20.000\" fill=\"" << fill << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
      centers[s.cells()[k]] = {(lo + hi) / 2.0, kMargin + 20.0};
    } else {
      out << "  <polygon points=\"";
      const auto ordered = around(pts);
      for (std::size_t p = 0; p < ordered.size(); ++p) {
        out << (p == 0 ? "" : " ") << fmt(ordered[p].x) << "," << fmt(ordered[p].y);
      }
      out << "\" fill=\"" << fill << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
      centers[s.cells()[k]] = centroid(pts);
    }
  }

  if (spec.show_dual && d == 3) {
    const char* dashed = "stroke=\"#444444\" stroke-width=\"1\" stroke-dasharray=\"6,4\"";
    for (const FacetPairing& p : internal_facet_pairing(s)) {
      line(out, centers[p.joins_left1_right2], centers[p.joins_left2_right1], dashed);
    }
    const auto boundary = facets_graphtheoretic(s.ambient());
    for (const auto& cell : s.cells()) {
      for (const auto& f : facets_graphtheoretic(cell)) {
        if (!f.graph.is_type()) continue;  // misses the slice
        const bool outer = std::any_of(boundary.begin(), boundary.end(),
                                       [&](const FacetSubgraph& b) { return is_subgraph(f.graph, b.graph); });
        if (!outer) continue;
        std::vector<Pt> pts;
        for (const auto& v : minkowski_vertices(f.graph)) pts.push_back(canvas.place(v));
        if (pts.size() < 2) continue;
        const Pt mid = centroid(pts);
        const Pt from = centers[cell];
        const double dx = mid.x - from.x, dy = mid.y - from.y;
        const double len = std::hypot(dx, dy);
        if (len < 1e-9) continue;
        const double reach = 0.25 * spec.scale;
        line(out, from, {mid.x + dx / len * reach, mid.y + dy / len * reach}, dashed);
      }
    }
  }

  if (spec.labels) {
    for (std::size_t k = 0; k < s.cells().size(); ++k) {
      const Pt c = centers[s.cells()[k]];
      out << "  <text x=\"" << fmt(c.x) << "\" y=\"" << fmt(c.y + 4.0)
          << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << k + 1 << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gtom

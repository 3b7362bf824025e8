#include "tiling/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <Eigen/Dense>

namespace tiling {

namespace {

constexpr double kSize = 400, kMargin = 30;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

struct Canvas {
  double scale, height;
  std::ostringstream body;

  Canvas(double w, double h) : scale(kSize / std::max(w, h)), height(h) {}
  double px(long double v) const { return kMargin + scale * static_cast<double>(v); }
  // SVG y grows downwards
  double py(long double v) const { return kMargin + scale * (height - static_cast<double>(v)); }
  std::string x(long double v) const { return fmt(px(v)); }
  std::string y(long double v) const { return fmt(py(v)); }

  std::string finish(double w, const std::string& caption) {
    std::ostringstream os;
    const double W = 2 * kMargin + scale * w, H = 2 * kMargin + scale * height + (caption.empty() ? 0 : 20);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << "\" height=\"" << fmt(H)
       << "\" viewBox=\"0 0 " << fmt(W) << " " << fmt(H) << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body.str();
    if (!caption.empty())
      os << "<text x=\"" << fmt(kMargin) << "\" y=\"" << fmt(H - 8)
         << "\" font-family=\"monospace\" font-size=\"12\">" << caption << "</text>\n";
    os << "</svg>\n";
    return os.str();
  }
};

}  // namespace

std::vector<Point> tutte_layout(const CandidatePair& c) {
  const PlaneGraph& g = c.graph;
  const int n = g.vertex_count();
  const Point pins[4] = {{0.5L, 0}, {1, 0.5L}, {0.5L, 1}, {0, 0.5L}};
  std::vector<Point> pos(n, Point{0.5L, 0.5L});
  std::vector<int> index(n, -1);
  int m = 0;
  for (VertexId v = 0; v < n; ++v)
    if (c.is_side(v)) pos[v] = pins[c.side_index(v)];
    else index[v] = m++;
  if (m == 0) return pos;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
  for (VertexId v = 0; v < n; ++v) {
    if (index[v] < 0) continue;
    L(index[v], index[v]) = g.degree(v);
    for (VertexId w : g.rotation(v)) {
      if (index[w] >= 0) L(index[v], index[w]) -= 1;
      else {
        rhs(index[v], 0) += static_cast<double>(pos[w][0]);
        rhs(index[v], 1) += static_cast<double>(pos[w][1]);
      }
    }
  }
  const Eigen::MatrixXd sol = L.partialPivLu().solve(rhs);
  for (VertexId v = 0; v < n; ++v)
    if (index[v] >= 0) pos[v] = {sol(index[v], 0), sol(index[v], 1)};
  return pos;
}

std::string render_graph_svg(const CandidatePair& c, const std::string& caption) {
  const std::vector<Point> pos = tutte_layout(c);
  const PlaneGraph& g = c.graph;
  Canvas cv(1, 1);
  cv.body << "<rect x=\"" << cv.x(0) << "\" y=\"" << cv.y(1) << "\" width=\"" << fmt(cv.scale)
          << "\" height=\"" << fmt(cv.scale) << "\" fill=\"none\" stroke=\"#bbb\"/>\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (VertexId w : g.rotation(v)) {
      if (w < v) continue;
      cv.body << "<line x1=\"" << cv.x(pos[v][0]) << "\" y1=\"" << cv.y(pos[v][1]) << "\" x2=\""
              << cv.x(pos[w][0]) << "\" y2=\"" << cv.y(pos[w][1]) << "\" stroke=\"black\"/>\n";
    }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (c.is_side(v)) {
      cv.body << "<rect x=\"" << fmt(cv.px(pos[v][0]) - 6) << "\" y=\""
              << fmt(cv.py(pos[v][1]) - 6) << "\" width=\"12\" height=\"12\" fill=\"#c33\"/>\n";
      cv.body << "<text x=\"" << cv.x(pos[v][0]) << "\" y=\"" << fmt(cv.py(pos[v][1]) - 9)
              << "\" font-family=\"monospace\" font-size=\"11\">S" << c.side_index(v) + 1 << "</text>\n";
    } else {
      cv.body << "<circle cx=\"" << cv.x(pos[v][0]) << "\" cy=\"" << cv.y(pos[v][1])
              << "\" r=\"5\" fill=\"#36c\"/>\n";
      cv.body << "<text x=\"" << fmt(cv.px(pos[v][0]) + 7) << "\" y=\"" << cv.y(pos[v][1])
              << "\" font-family=\"monospace\" font-size=\"11\">" << v << "</text>\n";
    }
  }
  return cv.finish(1, caption);
}

std::string render_tiling_svg(const CandidatePair& c, const Realization& r, const std::string& caption,
                              bool overlay) {
  if (r.status != RealizeStatus::Realized || r.polygons.empty()) return render_graph_svg(c, caption);
  Canvas cv(static_cast<double>(r.width), static_cast<double>(r.height));
  static const char* fills[] = {"#f4d06f", "#9dd9d2", "#ff8811", "#c6e0ff", "#e0c3fc", "#b8f2b8", "#f7b2bd"};
  int colour = 0;
  std::vector<Point> centre(c.graph.vertex_count());
  for (VertexId v = 0; v < c.graph.vertex_count(); ++v)
    if (c.is_side(v)) {
      const Point mid[4] = {{r.width / 2, 0}, {r.width, r.height / 2}, {r.width / 2, r.height}, {0, r.height / 2}};
      centre[v] = mid[c.side_index(v)];
    }
  for (VertexId v = 0; v < static_cast<VertexId>(r.polygons.size()); ++v) {
    const auto& poly = r.polygons[v];
    if (poly.empty()) continue;
    cv.body << "<polygon points=\"";
    for (const Point& p : poly) cv.body << cv.x(p[0]) << "," << cv.y(p[1]) << " ";
    cv.body << "\" fill=\"" << fills[colour++ % 7] << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    long double cx = 0, cy = 0;
    for (const Point& p : poly) cx += p[0], cy += p[1];
    cx /= poly.size();
    cy /= poly.size();
    centre[v] = {cx, cy};
    cv.body << "<text x=\"" << cv.x(cx) << "\" y=\"" << cv.y(cy)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << v << "</text>\n";
  }
  if (overlay) {
    const PlaneGraph& g = c.graph;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      for (VertexId w : g.rotation(v)) {
        if (w < v || (c.is_side(v) && c.is_side(w))) continue;
        cv.body << "<line x1=\"" << cv.x(centre[v][0]) << "\" y1=\"" << cv.y(centre[v][1]) << "\" x2=\""
                << cv.x(centre[w][0]) << "\" y2=\"" << cv.y(centre[w][1])
                << "\" stroke=\"#c33\" stroke-dasharray=\"4 3\"/>\n";
      }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      cv.body << "<circle cx=\"" << cv.x(centre[v][0]) << "\" cy=\"" << cv.y(centre[v][1])
              << "\" r=\"4\" fill=\"#c33\"/>\n";
  }
  return cv.finish(static_cast<double>(r.width), caption);
}

}  // namespace tiling

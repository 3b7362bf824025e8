#include "tiling/equations.hpp"

#include <map>
#include <stdexcept>

namespace tiling {

Rational face_target(FaceKind kind) {
  switch (kind) {
    case FaceKind::Corner: return Rational(1, 2);
    case FaceKind::Side: return Rational(1);
    case FaceKind::Interior: return Rational(2);
    default: throw std::invalid_argument("face has no angle target");
  }
}

std::vector<std::string> AngleLayout::names() const {
  std::vector<std::string> n;
  for (int j = 0; j < k; ++j) n.push_back("a" + std::to_string(j + 1));
  return n;
}

std::vector<VariableBound> AngleLayout::bounds(const TileShape& shape) const {
  std::vector<VariableBound> b;
  for (AngleType t : shape.labels) {
    const AngleInterval iv = exact_interval(t);
    b.push_back(VariableBound{iv.lo, iv.hi, iv.lo_open, iv.hi_open});
  }
  return b;
}

LengthLayout::LengthLayout(const CandidatePair& c, int k, bool with_ratio) : k(k), edge_base(k) {
  const PlaneGraph& g = c.graph;
  for (int j = 0; j < k; ++j) var_names.push_back("t" + std::to_string(j + 1));
  edge_var.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) edge_var[v].assign(g.degree(v), -1);
  int next = edge_base;
  auto label = [&](VertexId v) {
    const int s = c.side_index(v);
    return s >= 0 ? "S" + std::to_string(s + 1) : "T" + std::to_string(v);
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (int m = 0; m < g.degree(v); ++m) {
      const VertexId w = g.rotation(v)[m];
      if (w < v || (c.is_side(v) && c.is_side(w))) continue;
      edge_var[v][m] = next;
      edge_var[w][g.position(w, v)] = next;
      var_names.push_back("e(" + label(v) + "," + label(w) + ")");
      ++next;
    }
  if (with_ratio) {
    ratio = next++;
    var_names.push_back("r");
  }
  variables = next;
}

std::vector<VariableBound> LengthLayout::bounds() const {
  return std::vector<VariableBound>(variables, VariableBound::positive());
}

std::vector<Equation> boundary_side_equations(const CandidatePair& c, const LengthLayout& layout) {
  std::vector<Equation> rows;
  for (int s = 0; s < 4; ++s) {
    const VertexId v = c.sides[s];
    Equation e;
    for (int m = 0; m < c.graph.degree(v); ++m)
      if (layout.edge_var[v][m] >= 0) e.terms.push_back({layout.edge_var[v][m], Rational(1)});
    if (s % 2 == 1 && layout.ratio >= 0) {
      e.terms.push_back({layout.ratio, Rational(-1)});
      e.rhs = Rational(0);
    } else {
      e.rhs = Rational(1);
    }
    e.origin = "side S" + std::to_string(s + 1);
    rows.push_back(std::move(e));
  }
  return rows;
}

Equation side_run_equation(const CandidatePair& c, const LengthLayout& layout, VertexId v, int from, int to,
                           int i, int j) {
  const int d = c.graph.degree(v), k = layout.k;
  Equation e;
  // corner m lies between edges m and m+1
  for (int m = (from + 1) % d;; m = (m + 1) % d) {
    e.terms.push_back({layout.edge_var[v][m], Rational(1)});
    if (m == to) break;
  }
  int side;
  if (j == (i + 1) % k) side = i;
  else if (i == (j + 1) % k) side = j;
  else throw std::invalid_argument("run ends are not adjacent model vertices");
  e.terms.push_back({layout.side(side), Rational(-1)});
  e.rhs = Rational(0);
  e.origin = "run T" + std::to_string(v) + " c" + std::to_string(from) + "-c" + std::to_string(to);
  return e;
}

std::vector<Equation> side_run_equations(const CandidatePair& c, const LengthLayout& layout, VertexId v,
                                         const std::vector<int>& corner_values) {
  const int d = c.graph.degree(v);
  std::vector<int> corners;
  for (int m = 0; m < d; ++m) {
    if (corner_values[m] < 0) throw std::invalid_argument("tile corner unassigned");
    if (corner_values[m] != kPlain) corners.push_back(m);
  }
  std::vector<Equation> rows;
  for (std::size_t a = 0; a < corners.size(); ++a) {
    const int from = corners[a], to = corners[(a + 1) % corners.size()];
    rows.push_back(side_run_equation(c, layout, v, from, to, corner_values[from], corner_values[to]));
  }
  return rows;
}

std::optional<Equation> angle_vertex_equation(FaceKind kind, const std::vector<int>& values, int k) {
  Equation e;
  e.rhs = face_target(kind);
  std::map<int, int> count;
  for (int v : values) {
    if (v == kPlain) e.rhs -= Rational(1);
    else ++count[v];
  }
  for (auto [var, n] : count)
    if (var >= k) throw std::invalid_argument("model vertex out of range");
    else e.terms.push_back({var, Rational(n)});
  if (e.terms.empty() && e.rhs.is_zero()) return std::nullopt;
  e.origin = std::string("vertex ") + to_string(kind);
  return e;
}

Equation angle_sum_equation(int k) {
  Equation e;
  for (int j = 0; j < k; ++j) e.terms.push_back({j, Rational(1)});
  e.rhs = Rational(k - 2);
  e.origin = "angle sum";
  return e;
}

}  // namespace tiling

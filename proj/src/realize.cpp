#include "tiling/realize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "tiling/simplex.hpp"

namespace tiling {

const char* to_string(RealizeStatus s) {
  switch (s) {
    case RealizeStatus::Realized: return "realized";
    case RealizeStatus::Unrealizable: return "unrealizable";
    case RealizeStatus::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

using Real = long double;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
constexpr Real kPi = std::numbers::pi_v<Real>;

struct SparseRow {
  std::vector<std::pair<int, Real>> terms;
  Real rhs = 0;
};

/// Length unknowns. Congruent tiles: the layout's own variables (shared
/// sides, G-edges, ratio). Similar tiles: one per G-edge, then k sides per
/// tile, each tile closing up with its own scale.
class LengthModel {
 public:
  LengthModel(const CandidatePair& c, const Survivor& sv, int k, LabelMode mode)
      : k_(k), shared_(mode != LabelMode::Equiangular), layout_(c, k, mode == LabelMode::Rectangle) {
    for (VertexId v = 0; v < c.graph.vertex_count(); ++v)
      if (!c.is_side(v)) tile_slot_.push_back(v);
    std::vector<int> slot_of(c.graph.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(tile_slot_.size()); ++i) slot_of[tile_slot_[i]] = i;
    if (shared_) {
      edges_ = 0;
      unknowns_ = layout_.variables;
    } else {
      edges_ = layout_.variables - layout_.edge_base;
      unknowns_ = edges_ + k_ * static_cast<int>(tile_slot_.size());
    }
    for (const Equation& e : boundary_side_equations(c, layout_)) fixed_.push_back(convert(e, -1));
    for (VertexId v : tile_slot_)
      for (const Equation& e : side_run_equations(c, layout_, v, sv.corner_values[v]))
        fixed_.push_back(convert(e, slot_of[v]));
  }

  int unknowns() const { return unknowns_; }
  int edge_unknown(VertexId v, int m) const {
    const int var = layout_.edge_var[v][m];
    if (var < 0) return -1;
    return shared_ ? var : var - layout_.edge_base;
  }

  std::vector<SparseRow> rows(const std::vector<Real>& angles) const {
    std::vector<SparseRow> out = fixed_;
    std::vector<Real> dir(k_, 0);
    for (int j = 1; j < k_; ++j) dir[j] = dir[j - 1] + (1 - angles[j]);
    const int closures = shared_ ? 1 : static_cast<int>(tile_slot_.size());
    for (int slot = 0; slot < closures; ++slot) {
      SparseRow cx, cy;
      for (int j = 0; j < k_; ++j) {
        cx.terms.push_back({side_column(slot, j), std::cos(kPi * dir[j])});
        cy.terms.push_back({side_column(slot, j), std::sin(kPi * dir[j])});
      }
      out.push_back(std::move(cx));
      out.push_back(std::move(cy));
    }
    return out;
  }

 private:
  int side_column(int slot, int j) const { return shared_ ? layout_.side(j) : edges_ + slot * k_ + j; }

  SparseRow convert(const Equation& e, int slot) const {
    SparseRow r;
    r.rhs = e.rhs.to_long_double();
    for (const Term& t : e.terms) {
      int col = t.var;
      if (!shared_) col = t.var < layout_.edge_base ? side_column(slot, t.var) : t.var - layout_.edge_base;
      r.terms.push_back({col, t.coeff.to_long_double()});
    }
    return r;
  }

  int k_;
  bool shared_;
  LengthLayout layout_;
  int edges_ = 0, unknowns_ = 0;
  std::vector<VertexId> tile_slot_;
  std::vector<SparseRow> fixed_;
};

/// min sum |A x - b| over x >= floor; returns the residual and the minimizer.
std::pair<Real, Vector> residual(const std::vector<SparseRow>& rows, int n, Real floor) {
  const int m = static_cast<int>(rows.size());
  Matrix A(2 * m, n + m);
  A.setZero();
  Vector b(2 * m), c(n + m);
  c.setZero();
  for (int i = 0; i < m; ++i) {
    Real shifted = rows[i].rhs;
    for (const auto& [col, v] : rows[i].terms) {
      A(i, col) += v;
      A(m + i, col) -= v;
      shifted -= v * floor;
    }
    A(i, n + i) = -1;
    A(m + i, n + i) = -1;
    b(i) = shifted;
    b(m + i) = -shifted;
    c(n + i) = -1;
  }
  const LpResult<Real> res = maximize<Real>(A, b, c);
  if (res.status != LpStatus::Optimal) return {std::numeric_limits<Real>::infinity(), Vector()};
  Vector x = res.x.head(n).array() + floor;
  return {-res.value, x};
}

/// Lengths solving the rows to within slack with the smallest one as large
/// as possible (capped at 1); returns that smallest length and the lengths.
std::pair<Real, Vector> spread(const std::vector<SparseRow>& rows, int n, Real slack) {
  const int m = static_cast<int>(rows.size());
  // variables x_0..x_{n-1}, s; rows: A x <= b + slack, -A x <= -b + slack,
  // s - x_i <= 0, s <= 1
  Matrix A(2 * m + n + 1, n + 1);
  A.setZero();
  Vector b(2 * m + n + 1), c(n + 1);
  c.setZero();
  c(n) = 1;
  for (int i = 0; i < m; ++i) {
    for (const auto& [col, v] : rows[i].terms) {
      A(i, col) += v;
      A(m + i, col) -= v;
    }
    b(i) = rows[i].rhs + slack;
    b(m + i) = -rows[i].rhs + slack;
  }
  for (int j = 0; j < n; ++j) {
    A(2 * m + j, n) = 1;
    A(2 * m + j, j) = -1;
    b(2 * m + j) = 0;
  }
  A(2 * m + n, n) = 1;
  b(2 * m + n) = 1;
  const LpResult<Real> res = maximize<Real>(A, b, c);
  if (res.status != LpStatus::Optimal) return {0, Vector()};
  return {res.value, res.x.head(n)};
}

struct AngleSpace {
  Vector offset;
  Matrix basis;  // k x f
  std::vector<std::pair<Real, Real>> range;  // per free direction
};

std::vector<Real> angles_at(const AngleSpace& s, const std::vector<Real>& y) {
  Vector v = s.offset;
  for (int j = 0; j < static_cast<int>(y.size()); ++j) v += s.basis.col(j) * y[j];
  return {v.data(), v.data() + v.size()};
}

bool inside(const LinearSystem& sys, const std::vector<Real>& a, Real margin = 1e-12L) {
  for (int j = 0; j < sys.variables(); ++j) {
    const VariableBound& b = sys.bound(j);
    const Real lo = b.lo.to_long_double();
    if (b.lo_open ? a[j] <= lo + margin : a[j] < lo - 1e-12L) return false;
    if (b.hi) {
      const Real hi = b.hi->to_long_double();
      if (b.hi_open ? a[j] >= hi - margin : a[j] > hi + 1e-12L) return false;
    }
  }
  return true;
}

/// Interval of t with offset + t * dir strictly inside the angle bounds.
std::pair<Real, Real> line_range(const LinearSystem& sys, const Vector& offset, const Vector& dir) {
  Real lo = -1e9L, hi = 1e9L;
  for (int j = 0; j < sys.variables(); ++j) {
    const VariableBound& b = sys.bound(j);
    const Real l = b.lo.to_long_double(), h = b.hi ? b.hi->to_long_double() : 1e9L;
    if (std::abs(dir(j)) < 1e-15L) continue;
    Real t1 = (l - offset(j)) / dir(j), t2 = (h - offset(j)) / dir(j);
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
  }
  return {lo, hi};
}

Real corner_angle(const std::vector<Real>& angles, int value) { return value == kPlain ? 1 : angles[value]; }

/// Lays the tiles out from the lengths; empty polygons when inconsistent.
bool lay_out(const CandidatePair& c, const Survivor& sv, const LengthModel& model, const Vector& x,
             const std::vector<Real>& angles, Realization& out) {
  const PlaneGraph& g = c.graph;
  const FaceIndex fi = classified_face_index(c);
  const int nv = g.vertex_count();
  std::vector<std::vector<Real>> theta(nv);  // direction of each tile edge, in units of pi
  std::vector<Point> pos(fi.faces.size());
  std::vector<char> placed(fi.faces.size(), 0);
  std::vector<char> seen(nv, 0);
  const Real tol = 1e-7L;

  auto walk = [&](VertexId v, int start, Real start_theta) {
    const int d = g.degree(v);
    theta[v].assign(d, 0);
    theta[v][start] = start_theta;
    for (int i = 1; i < d; ++i) {
      const int m = (start + i) % d, prev = (m + d - 1) % d;
      theta[v][m] = theta[v][prev] + (1 - corner_angle(angles, sv.corner_values[v][prev]));
    }
  };
  auto place_faces = [&](VertexId v) -> bool {
    const int d = g.degree(v);
    int anchor = -1;
    for (int m = 0; m < d && anchor < 0; ++m)
      if (placed[fi.corner_face[v][m]]) anchor = m;
    if (anchor < 0) {
      anchor = 0;
      placed[fi.corner_face[v][0]] = 1;
      pos[fi.corner_face[v][0]] = {0, 0};
    }
    Point p = pos[fi.corner_face[v][anchor]];
    for (int i = 1; i <= d; ++i) {
      const int m = (anchor + i) % d;  // edge m runs from corner m-1 to corner m
      const Real len = x(model.edge_unknown(v, m));
      p = {p[0] + len * std::cos(kPi * theta[v][m]), p[1] + len * std::sin(kPi * theta[v][m])};
      const FaceId f = fi.corner_face[v][m];
      if (placed[f]) {
        if (std::hypot(pos[f][0] - p[0], pos[f][1] - p[1]) > tol) return false;
      } else {
        placed[f] = 1;
        pos[f] = p;
      }
    }
    return true;
  };

  VertexId first = 0;
  while (c.is_side(first)) ++first;
  walk(first, 0, 0);
  seen[first] = 1;
  std::deque<VertexId> queue{first};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    if (!place_faces(v)) return false;
    for (int m = 0; m < g.degree(v); ++m) {
      const VertexId w = g.rotation(v)[m];
      if (c.is_side(w)) continue;
      const Real shared = theta[v][m] + 1;
      const int back = g.position(w, v);
      if (seen[w]) {
        const Real diff = std::remainder(theta[w][back] - shared, Real(2));
        if (std::abs(diff) > tol) return false;
        continue;
      }
      seen[w] = 1;
      walk(w, back, shared);
      queue.push_back(w);
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != c.tile_count()) return false;

  // every edge on a side of P must run in the same direction, consistent
  // with a quarter turn from one side to the next
  std::array<std::optional<Real>, 4> side_dir;
  for (VertexId v = 0; v < nv; ++v) {
    if (c.is_side(v)) continue;
    for (int m = 0; m < g.degree(v); ++m) {
      const int s = c.side_index(g.rotation(v)[m]);
      if (s < 0) continue;
      if (!side_dir[s]) side_dir[s] = theta[v][m];
      else if (std::abs(std::remainder(*side_dir[s] - theta[v][m], Real(2))) > tol) return false;
    }
  }
  for (int s = 0; s < 4; ++s)
    if (!side_dir[s]) return false;
  const Real turn = std::remainder(*side_dir[1] - *side_dir[0], Real(2));
  if (std::abs(std::abs(turn) - 0.5L) > tol) return false;
  for (int s = 1; s < 4; ++s)
    if (std::abs(std::remainder(*side_dir[s] - *side_dir[s - 1] - turn, Real(2))) > tol) return false;

  // rotate S1 onto the x axis, flip to counterclockwise if needed
  const Real rot = -*side_dir[0] * kPi;
  const Real flip = turn > 0 ? 1 : -1;
  auto transform = [&](const Point& p) -> Point {
    const Real px = p[0] * std::cos(rot) - p[1] * std::sin(rot);
    const Real py = p[0] * std::sin(rot) + p[1] * std::cos(rot);
    return {px, flip * py};
  };
  Real min_x = 1e9L, min_y = 1e9L, max_x = -1e9L, max_y = -1e9L;
  for (std::size_t f = 0; f < pos.size(); ++f) {
    if (!placed[f]) continue;
    pos[f] = transform(pos[f]);
    min_x = std::min(min_x, pos[f][0]);
    min_y = std::min(min_y, pos[f][1]);
    max_x = std::max(max_x, pos[f][0]);
    max_y = std::max(max_y, pos[f][1]);
  }
  out.width = max_x - min_x;
  out.height = max_y - min_y;
  out.polygons.assign(nv, {});
  Real area = 0;
  for (VertexId v = 0; v < nv; ++v) {
    if (c.is_side(v)) continue;
    auto& poly = out.polygons[v];
    for (int m = 0; m < g.degree(v); ++m)
      if (sv.corner_values[v][m] != kPlain) {
        const Point& p = pos[fi.corner_face[v][m]];
        poly.push_back({p[0] - min_x, p[1] - min_y});
      }
    Real a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % poly.size()];
      a += p[0] * q[1] - p[1] * q[0];
    }
    a /= 2;
    if (a * flip <= 0) return false;
    area += std::abs(a);
  }
  return std::abs(area - out.width * out.height) < 1e-6L;
}

}  // namespace

bool similar_lengths_feasible(const CandidatePair& c, const std::vector<std::vector<int>>& corner_values,
                              const std::vector<Rational>& angles, long double tau) {
  Survivor sv;
  sv.corner_values = corner_values;
  const int k = static_cast<int>(angles.size());
  const LengthModel model(c, sv, k, LabelMode::Equiangular);
  std::vector<Real> a;
  for (const Rational& x : angles) a.push_back(x.to_long_double());
  return spread(model.rows(a), model.unknowns(), tau).first > tau;
}

Realization realize_numeric(const CandidatePair& c, const TileShape& shape, const Survivor& sv,
                            const RealizeConfig& config) {
  Realization out;
  if (!sv.angle_system) {
    out.note = "survivor carries no angle system";
    return out;
  }
  const LinearSystem& sys = *sv.angle_system;
  const int k = shape.k;
  const LengthModel model(c, sv, k, config.mode);
  const AffineParametrization par = sys.parametrization();
  const int f = static_cast<int>(par.free.size());
  if (f > 2) {
    out.note = "angle space of dimension " + std::to_string(f);
    return out;
  }

  // free directions; pinned-by-bounds variables are already in par
  AngleSpace space{par.offset, par.basis, {}};
  auto res_at = [&](const std::vector<Real>& y) -> Real {
    const auto a = angles_at(space, y);
    if (!inside(sys, a)) return std::numeric_limits<Real>::infinity();
    return residual(model.rows(a), model.unknowns(), config.length_floor).first;
  };

  std::vector<std::vector<Real>> candidates;  // zero-residual points
  if (f == 0) {
    if (res_at({}) < config.tolerance) candidates.push_back({});
  } else if (f == 1) {
    const auto [lo, hi] = line_range(sys, space.offset, space.basis.col(0));
    const int n = config.scan;
    std::vector<Real> ys(n + 1), rs(n + 1);
    for (int i = 0; i <= n; ++i) {
      ys[i] = lo + (hi - lo) * i / n;
      rs[i] = res_at({ys[i]});
    }
    int run_start = -1;
    auto smallest = [&](Real y) {
      const auto a = angles_at(space, {y});
      return *std::min_element(a.begin(), a.end());
    };
    for (int i = 0; i <= n; ++i) {
      const bool zero = rs[i] < config.tolerance;
      if (zero && run_start < 0) run_start = i;
      if ((!zero || i == n) && run_start >= 0) {
        const int run_end = zero ? i : i - 1;
        out.smallest_ranges.push_back({smallest(ys[run_start]), smallest(ys[run_end])});
        candidates.push_back({ys[(run_start + run_end) / 2]});
        run_start = -1;
      }
    }
    // isolated zeros fall between samples: refine each local minimum
    for (int i = 1; i < n; ++i) {
      if (!(rs[i] <= rs[i - 1] && rs[i] <= rs[i + 1]) || rs[i] < config.tolerance || !std::isfinite(rs[i]))
        continue;
      Real a = ys[i - 1], b = ys[i + 1];
      const Real gr = (std::sqrt(Real(5)) - 1) / 2;
      Real x1 = b - gr * (b - a), x2 = a + gr * (b - a);
      Real f1 = res_at({x1}), f2 = res_at({x2});
      for (int it = 0; it < 200 && b - a > 1e-16L; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - gr * (b - a);
          f1 = res_at({x1});
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + gr * (b - a);
          f2 = res_at({x2});
        }
      }
      const Real y = (a + b) / 2;
      if (res_at({y}) < config.tolerance * 10) {
        candidates.push_back({y});
        const Real s = smallest(y);
        out.smallest_ranges.push_back({s, s});
      }
    }
  } else {
    // two free angles: coarse grid, keep the zero cells
    const int n = std::max(8, config.scan / 10);
    Vector o = space.offset;
    const auto [lo0, hi0] = line_range(sys, o, space.basis.col(0));
    for (int i = 1; i < n && candidates.empty(); ++i) {
      const Real y0 = lo0 + (hi0 - lo0) * i / n;
      const auto [lo1, hi1] = line_range(sys, o + space.basis.col(0) * y0, space.basis.col(1));
      for (int j = 1; j < n; ++j) {
        const Real y1 = lo1 + (hi1 - lo1) * j / n;
        if (res_at({y0, y1}) < config.tolerance) {
          candidates.push_back({y0, y1});
          break;
        }
      }
    }
    if (candidates.empty()) {
      out.note = "no zero found on a two-parameter grid";
      return out;
    }
  }

  for (const auto& y : candidates) {
    const auto a = angles_at(space, y);
    // a zero squeezed against an open bound belongs to the neighbouring label
    if (!inside(sys, a, 1e-7L)) continue;
    const auto rows = model.rows(a);
    const Real r = residual(rows, model.unknowns(), config.length_floor).first;
    const auto [shortest, x] = spread(rows, model.unknowns(), std::max(r, config.tolerance));
    Realization trial = out;
    if (x.size() == 0 || shortest < config.length_floor || !lay_out(c, sv, model, x, a, trial)) continue;
    trial.status = RealizeStatus::Realized;
    trial.angles = a;
    trial.tan_smallest = std::tan(kPi * *std::min_element(a.begin(), a.end()));
    trial.note = "residual " + std::to_string(static_cast<double>(r));
    return trial;
  }
  out.status = RealizeStatus::Unrealizable;
  out.note = candidates.empty() ? "side lengths never consistent" : "layout failed at every zero";
  return out;
}

}  // namespace tiling

#include "tiling/search.hpp"

#include "tiling/realize.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tiling {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Refuted: return "refuted";
    case Outcome::Survived: return "survived";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<FrontierEntry> frontier_order(const CandidatePair& c) {
  return frontier_order(c, classified_face_index(c));
}

std::vector<FrontierEntry> frontier_order(const CandidatePair& c, const FaceIndex& fi) {
  const PlaneGraph& g = c.graph;
  std::vector<FrontierEntry> out;
  std::vector<char> listed(fi.faces.size(), 0);
  auto list_face = [&](FaceId f) {
    if (f < 0 || listed[f]) return;
    listed[f] = 1;
    // each tile on the face once, in boundary order; the corner of tile v
    // on face f is the m with corner_face[v][m] == f
    for (VertexId v : fi.faces[f].boundary) {
      if (c.is_side(v)) continue;
      for (int m = 0; m < g.degree(v); ++m)
        if (fi.corner_face[v][m] == f) out.push_back({v, m, f});
    }
  };
  for (int k = 0; k < 4; ++k) list_face(corner_face_between(c, fi, k));
  for (int s = 0; s < 4; ++s) {
    const VertexId v = c.sides[s];
    const int start = g.position(v, c.sides[(s + 3) % 4]);
    for (int i = 0; i < g.degree(v); ++i) {
      const int m = (start + i) % g.degree(v);
      const FaceId f = fi.corner_face[v][m];
      if (fi.faces[f].kind == FaceKind::Side) list_face(f);
    }
  }
  // interior faces breadth-first, seeded by everything listed so far
  std::deque<FaceId> queue;
  for (const auto& e : out) queue.push_back(e.face);
  while (!queue.empty()) {
    const FaceId f = queue.front();
    queue.pop_front();
    for (VertexId v : fi.faces[f].boundary) {
      if (c.is_side(v)) continue;
      const int d = g.degree(v);
      int at = 0;
      while (fi.corner_face[v][at] != f) ++at;
      for (int i = 1; i < d; ++i) {
        const FaceId h = fi.corner_face[v][(at + i) % d];
        if (!listed[h] && fi.faces[h].kind == FaceKind::Interior) {
          list_face(h);
          queue.push_back(h);
        }
      }
    }
  }
  for (FaceId f = 0; f < static_cast<FaceId>(fi.faces.size()); ++f)
    if (fi.faces[f].kind != FaceKind::Apex) list_face(f);
  return out;
}

std::vector<TileOption> tile_options(int degree, int k, bool allow_mirror) {
  std::vector<TileOption> out;
  if (degree < k) return out;
  for (std::uint32_t mask = 0; mask < (1u << degree); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> pos;
    for (int m = 0; m < degree; ++m)
      if ((mask >> m) & 1u) pos.push_back(m);
    for (int orient : {1, -1}) {
      if (orient < 0 && !allow_mirror) continue;
      for (int off = 0; off < k; ++off) {
        TileOption o(degree, kPlain);
        for (int i = 0; i < k; ++i) o[pos[i]] = static_cast<std::uint8_t>(((off + orient * i) % k + k) % k);
        out.push_back(std::move(o));
      }
    }
  }
  return out;
}

namespace {

using Mask = std::uint16_t;

struct Interval {
  Rational lo, hi;
  bool lo_open = false, hi_open = false;
};

class Searcher {
 public:
  Searcher(const CandidatePair& c, const TileShape& shape, int tiles, const SearchConfig& config)
      : c_(c), g_(c.graph), shape_(shape), k_(shape.k), tiles_(tiles), cfg_(config), fi_(classified_face_index(c)) {
    plain_bit_ = static_cast<Mask>(1u << k_);
    full_mask_ = static_cast<Mask>((1u << (k_ + 1)) - 1);
    tile_index_.assign(g_.vertex_count(), -1);
    for (VertexId v = 0; v < g_.vertex_count(); ++v)
      if (!c_.is_side(v)) {
        tile_index_[v] = static_cast<int>(tile_vertex_.size());
        tile_vertex_.push_back(v);
      }
    int next = 0;
    for (VertexId v : tile_vertex_) {
      pair_base_.push_back(next);
      for (int m = 0; m < g_.degree(v); ++m) pairs_.push_back({v, m, fi_.corner_face[v][m]});
      next += g_.degree(v);
    }
    face_pairs_.resize(fi_.faces.size());
    for (int p = 0; p < static_cast<int>(pairs_.size()); ++p) face_pairs_[pairs_[p].face].push_back(p);
    for (VertexId v : tile_vertex_) {
      const int d = g_.degree(v);
      if (!options_.count(d)) options_[d] = tile_options(d, k_, cfg_.allow_mirror);
    }
    for (const auto& e : frontier_order(c_, fi_)) order_.push_back(pair_base_[tile_index_[e.tile]] + e.corner);
    pair_constraints_.resize(pairs_.size());
    for (const auto& ac : cfg_.constraints)
      if (ac.tile >= 0) pair_constraints_[pair_base_[tile_index_[ac.tile]] + ac.corner].push_back(ac.bound);
    if (cfg_.lengths) layout_.emplace(c_, k_, cfg_.mode == LabelMode::Rectangle);
  }

  ShapeResult run() {
    result_.shape = shape_;
    State root = make_root();
    std::string why;
    ++result_.nodes;
    if (!propagate(root, why) || !check(root, why)) {
      discard(why, 0, -1, 0);
    } else {
      explore(root, 0);
    }
    if (aborted_) result_.outcome = Outcome::Inconclusive;
    else if (!result_.survivors.empty()) result_.outcome = Outcome::Survived;
    else result_.outcome = Outcome::Refuted;
    return std::move(result_);
  }

 private:
  struct State {
    std::vector<Mask> dom;
    std::vector<std::vector<std::uint16_t>> alive;
    LinearSystem angles;
    std::optional<LinearSystem> lengths;
    std::vector<char> face_done;
    std::vector<std::uint32_t> runs_done;
    std::vector<char> constraint_done;
    std::vector<std::optional<Rational>> pinned;
    bool lemma_done = false;
    bool closure_done = false;
    bool arior_done = false;
    std::size_t guarded_rows = static_cast<std::size_t>(-1);
  };

  struct PairInfo {
    VertexId tile;
    int corner;
    FaceId face;
  };

  State make_root() {
    AngleLayout al{k_};
    State s{{}, {}, LinearSystem(al.names(), al.bounds(shape_)), std::nullopt, {}, {}, {}, {}};
    s.dom.assign(pairs_.size(), full_mask_);
    s.alive.resize(tile_vertex_.size());
    for (std::size_t ti = 0; ti < tile_vertex_.size(); ++ti) {
      const auto& opts = options_.at(g_.degree(tile_vertex_[ti]));
      s.alive[ti].resize(opts.size());
      for (std::size_t i = 0; i < opts.size(); ++i) s.alive[ti][i] = static_cast<std::uint16_t>(i);
    }
    s.face_done.assign(fi_.faces.size(), 0);
    for (FaceId f = 0; f < static_cast<FaceId>(fi_.faces.size()); ++f)
      if (fi_.faces[f].kind == FaceKind::Apex) s.face_done[f] = 1;
    s.runs_done.assign(tile_vertex_.size(), 0);
    s.constraint_done.assign(pairs_.size(), 0);
    for (const auto& ac : cfg_.constraints)
      if (ac.tile < 0)
        for (int j = 0; j < k_; ++j)
          s.angles.tighten(j, VariableBound{ac.bound.lo, ac.bound.hi, ac.bound.lo_open, ac.bound.hi_open});
    s.angles.add_equation(angle_sum_equation(k_));
    for (int j = 0; j < k_; ++j) {
      const AngleInterval iv = exact_interval(shape_.labels[j]);
      if (iv.is_point()) s.angles.add_equation(Equation{{{j, Rational(1)}}, iv.lo, "label"});
    }
    if (layout_) {
      s.lengths.emplace(layout_->var_names, layout_->bounds());
      for (const auto& e : boundary_side_equations(c_, *layout_)) s.lengths->add_equation(e);
    }
    refresh_pinned(s);
    return s;
  }

  // ---------------------------------------------------------------------

  Interval value_interval(const State& s, int v) const {
    if (v == k_) return {Rational(1), Rational(1)};
    if (s.pinned[v]) return {*s.pinned[v], *s.pinned[v]};
    const VariableBound& b = s.angles.bound(v);
    return {b.lo, *b.hi, b.lo_open, b.hi_open};
  }

  static bool intersects(const Interval& a, const AngleInterval& b) {
    if (a.hi < b.lo || b.hi < a.lo) return false;
    if (a.hi == b.lo && (a.hi_open || b.lo_open)) return false;
    if (b.hi == a.lo && (b.hi_open || a.lo_open)) return false;
    return true;
  }

  bool refresh_pinned(State& s) {
    bool changed = false;
    s.pinned.resize(k_);
    for (int j = 0; j < k_; ++j) {
      auto p = s.angles.pinned_value(j);
      if (p != s.pinned[j]) {
        s.pinned[j] = p;
        changed = true;
      }
    }
    return changed;
  }

  /// Lowest/highest contribution of a pair given its domain.
  void pair_range(const State& s, Mask dom, Rational& lo, bool& lo_open, Rational& hi, bool& hi_open) const {
    bool first = true;
    for (int v = 0; v <= k_; ++v) {
      if (!((dom >> v) & 1u)) continue;
      const Interval iv = value_interval(s, v);
      if (first || iv.lo < lo || (iv.lo == lo && !iv.lo_open)) {
        if (first || iv.lo < lo) lo_open = iv.lo_open;
        else lo_open = lo_open && iv.lo_open;
        lo = iv.lo;
      }
      if (first || hi < iv.hi || (iv.hi == hi && !iv.hi_open)) {
        if (first || hi < iv.hi) hi_open = iv.hi_open;
        else hi_open = hi_open && iv.hi_open;
        hi = iv.hi;
      }
      first = false;
    }
  }

  static bool sum_ok(const Rational& lo, bool lo_open, const Rational& hi, bool hi_open, const Rational& target) {
    if (target < lo || (target == lo && lo_open)) return false;
    if (hi < target || (target == hi && hi_open)) return false;
    return true;
  }

  /// Removes values that cannot meet the face target; false on a wipe-out.
  bool prune_face(State& s, FaceId f, bool& changed) {
    const auto& ps = face_pairs_[f];
    const Rational target = face_target(fi_.faces[f].kind);
    const std::size_t n = ps.size();
    std::vector<Rational> lo(n), hi(n);
    std::vector<char> lo_open(n), hi_open(n);
    Rational slo(0), shi(0);
    int nlo_open = 0, nhi_open = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool lo_o = false, hi_o = false;
      pair_range(s, s.dom[ps[i]], lo[i], lo_o, hi[i], hi_o);
      lo_open[i] = lo_o;
      hi_open[i] = hi_o;
      slo += lo[i];
      shi += hi[i];
      nlo_open += lo_o;
      nhi_open += hi_o;
    }
    if (!sum_ok(slo, nlo_open > 0, shi, nhi_open > 0, target)) return false;
    for (std::size_t i = 0; i < n; ++i) {
      Mask& d = s.dom[ps[i]];
      if (std::popcount(d) == 1) continue;
      const Rational rlo = slo - lo[i], rhi = shi - hi[i];
      const int rlo_open = nlo_open - lo_open[i], rhi_open = nhi_open - hi_open[i];
      Mask keep = 0;
      for (int v = 0; v <= k_; ++v) {
        if (!((d >> v) & 1u)) continue;
        const Interval iv = value_interval(s, v);
        if (sum_ok(rlo + iv.lo, rlo_open > 0 || iv.lo_open, rhi + iv.hi, rhi_open > 0 || iv.hi_open, target))
          keep |= static_cast<Mask>(1u << v);
      }
      if (keep != d) {
        d = keep;
        changed = true;
        if (!keep) return false;
      }
    }
    return true;
  }

  bool prune_constraints(State& s, bool& changed) {
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (pair_constraints_[p].empty()) continue;
      Mask keep = 0;
      for (int v = 0; v <= k_; ++v) {
        if (!((s.dom[p] >> v) & 1u)) continue;
        bool ok = true;
        for (const auto& b : pair_constraints_[p]) ok = ok && intersects(value_interval(s, v), b);
        if (ok) keep |= static_cast<Mask>(1u << v);
      }
      if (keep != s.dom[p]) {
        s.dom[p] = keep;
        changed = true;
        if (!keep) return false;
      }
    }
    return true;
  }

  bool filter_tiles(State& s, bool& changed) {
    for (std::size_t ti = 0; ti < tile_vertex_.size(); ++ti) {
      const int d = g_.degree(tile_vertex_[ti]);
      const auto& opts = options_.at(d);
      const int base = pair_base_[ti];
      auto& alive = s.alive[ti];
      std::vector<Mask> uni(d, 0);
      std::size_t w = 0;
      for (std::size_t i = 0; i < alive.size(); ++i) {
        const TileOption& o = opts[alive[i]];
        bool ok = true;
        for (int m = 0; m < d && ok; ++m) ok = (s.dom[base + m] >> bit(o[m])) & 1u;
        if (!ok) continue;
        alive[w++] = alive[i];
        for (int m = 0; m < d; ++m) uni[m] |= static_cast<Mask>(1u << bit(o[m]));
      }
      alive.resize(w);
      if (w == 0) return false;
      for (int m = 0; m < d; ++m)
        if (uni[m] != s.dom[base + m]) {
          s.dom[base + m] = uni[m];
          changed = true;
        }
    }
    return true;
  }

  int bit(std::uint8_t value) const { return value == kPlain ? k_ : value; }
  int single(Mask m) const { return std::countr_zero(m); }
  int value_of(Mask m) const { return single(m) == k_ ? kPlain : single(m); }

  bool emit_rows(State& s, std::string& why, bool& changed) {
    bool angle_rows = false;
    for (FaceId f = 0; f < static_cast<FaceId>(fi_.faces.size()); ++f) {
      if (s.face_done[f]) continue;
      bool complete = true;
      std::vector<int> values;
      for (int p : face_pairs_[f]) {
        if (std::popcount(s.dom[p]) != 1) {
          complete = false;
          break;
        }
        values.push_back(value_of(s.dom[p]));
      }
      if (!complete) continue;
      s.face_done[f] = 1;
      auto row = angle_vertex_equation(fi_.faces[f].kind, values, k_);
      if (!row) continue;
      if (s.angles.add_equation(*row) == RowVerdict::Inconsistent) {
        why = "angle-equations";
        return false;
      }
      angle_rows = true;
    }
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (s.constraint_done[p] || pair_constraints_[p].empty() || std::popcount(s.dom[p]) != 1) continue;
      s.constraint_done[p] = 1;
      const int v = single(s.dom[p]);
      if (v == k_) continue;
      for (const auto& b : pair_constraints_[p])
        s.angles.tighten(v, VariableBound{b.lo, b.hi, b.lo_open, b.hi_open});
      angle_rows = true;
    }
    if (angle_rows && refresh_pinned(s)) changed = true;
    if (!s.lengths) return true;

    for (std::size_t ti = 0; ti < tile_vertex_.size(); ++ti) {
      const VertexId v = tile_vertex_[ti];
      const int d = g_.degree(v), base = pair_base_[ti];
      for (int a = 0; a < d; ++a) {
        if ((s.runs_done[ti] >> a) & 1u) continue;
        const Mask ma = s.dom[base + a];
        if (std::popcount(ma) != 1 || single(ma) == k_) continue;
        int b = (a + 1) % d;
        bool determined = true;
        while (true) {
          const Mask mb = s.dom[base + b];
          if (std::popcount(mb) != 1) {
            determined = false;
            break;
          }
          if (single(mb) != k_) break;
          b = (b + 1) % d;
        }
        if (!determined) continue;
        s.runs_done[ti] |= 1u << a;
        const Equation e = side_run_equation(c_, *layout_, v, a, b, single(ma), single(s.dom[base + b]));
        if (s.lengths->add_equation(e) == RowVerdict::Inconsistent) {
          why = "length-equations";
          return false;
        }
      }
    }
    if (k_ == 4 && shape_.str() == "aror" && !s.arior_done && s.pinned[0] && *s.pinned[0] == Rational(1, 4)) {
      std::optional<Rational> ratio;
      if (layout_->ratio < 0) ratio = Rational(1);
      else ratio = s.lengths->pinned_value(layout_->ratio);
      if (ratio) {
        s.arior_done = true;
        const AriorBounds ab = arior_bounds(*ratio / Rational(tiles_));
        s.lengths->tighten(layout_->side(0), ab.rational);
        s.lengths->tighten(layout_->side(3), ab.rational);
      }
    }
    if (!s.closure_done && all_pinned(s)) {
      s.closure_done = true;
      for (const ClosureRow& cr : closure_rows(pinned_angles(s)))
        if (cr.exact && s.lengths->add_equation(*cr.exact) == RowVerdict::Inconsistent) {
          why = "closure-exact";
          return false;
        }
    }
    return true;
  }

  bool all_pinned(const State& s) const {
    return std::all_of(s.pinned.begin(), s.pinned.end(), [](const auto& p) { return p.has_value(); });
  }
  std::vector<Rational> pinned_angles(const State& s) const {
    std::vector<Rational> a;
    for (const auto& p : s.pinned) a.push_back(*p);
    return a;
  }

  bool propagate(State& s, std::string& why) {
    bool changed = true;
    while (changed) {
      changed = false;
      if (!filter_tiles(s, changed)) {
        why = "tile-options";
        return false;
      }
      if (!prune_constraints(s, changed)) {
        why = "angle-constraint";
        return false;
      }
      for (FaceId f = 0; f < static_cast<FaceId>(fi_.faces.size()); ++f)
        if (!s.face_done[f] && !prune_face(s, f, changed)) {
          why = "vertex-sum";
          return false;
        }
      // rows are read off singleton domains, so the option filter must be
      // at its fixpoint first
      if (changed) continue;
      if (!emit_rows(s, why, changed)) return false;
    }
    return true;
  }

  bool check(State& s, std::string& why) {
    if (!s.angles.feasible_with_bounds()) {
      why = "angle-bounds";
      return false;
    }
    if (s.lengths && !s.lengths->feasible_with_bounds()) {
      why = "length-bounds";
      return false;
    }
    if (s.lengths && cfg_.guards && all_pinned(s) && s.guarded_rows != s.lengths->equations().size()) {
      s.guarded_rows = s.lengths->equations().size();
      const GuardResult gr = nonlinear_guard(*s.lengths, *layout_, pinned_angles(s), tiles_, cfg_.guard);
      if (gr.discard) {
        why = "guard-" + gr.reason;
        return false;
      }
    }
    return true;
  }

  void discard(const std::string& why, int depth, int pair, int value) {
    ++result_.discards[why];
    if (cfg_.transcript) {
      std::ostringstream os;
      os << std::string(depth, ' ') << describe(pair, value) << " -> " << why;
      result_.transcript.push_back(os.str());
    }
  }

  std::string describe(int pair, int value) const {
    if (pair < 0) return "root";
    std::ostringstream os;
    os << "T" << pairs_[pair].tile << "@" << pairs_[pair].corner << "=";
    if (value == k_) os << "p";
    else os << "p" << value + 1;
    return os.str();
  }

  bool lemma_trigger(const State& s) const {
    // the acute-angle lemma is about congruent copies
    if (!cfg_.lemma_branching || cfg_.mode == LabelMode::Equiangular || s.lemma_done ||
        !two_right_quadrilateral(shape_))
      return false;
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (fi_.faces[pairs_[p].face].kind != FaceKind::Corner || std::popcount(s.dom[p]) != 1) continue;
      const int v = single(s.dom[p]);
      if (v < k_ && shape_.labels[v] == AngleType::A) return true;
    }
    return false;
  }

  std::vector<std::vector<int>> corner_values(const State& s) const {
    std::vector<std::vector<int>> out(g_.vertex_count());
    for (std::size_t ti = 0; ti < tile_vertex_.size(); ++ti) {
      const VertexId v = tile_vertex_[ti];
      for (int m = 0; m < g_.degree(v); ++m) out[v].push_back(value_of(s.dom[pair_base_[ti] + m]));
    }
    return out;
  }

  void record_survivor(const State& s) {
    if (static_cast<int>(result_.survivors.size()) >= cfg_.max_survivors) return;
    Survivor sv;
    sv.corner_values = corner_values(s);
    sv.angles = s.pinned;
    AngleLayout al{k_};
    for (const auto& e : s.angles.equations()) sv.angle_rows.push_back(format_equation(e, al.names()));
    sv.angle_freedom = s.angles.free_dimension();
    sv.angle_system = s.angles;
    if (s.lengths) {
      for (const auto& e : s.lengths->equations()) sv.length_rows.push_back(format_equation(e, layout_->var_names));
      sv.length_freedom = s.lengths->free_dimension();
    }
    result_.survivors.push_back(std::move(sv));
  }

  bool stop() const {
    return aborted_ || (cfg_.stop_at_first_survivor && !result_.survivors.empty());
  }

  void child(const State& s, int depth, int pair, int value, const std::function<bool(State&)>& apply) {
    if (stop()) return;
    if (++result_.nodes > cfg_.node_cap) {
      aborted_ = true;
      return;
    }
    State t = s;
    std::string why;
    if (!apply(t) || !propagate(t, why) || !check(t, why)) {
      discard(why.empty() ? "lemma-branch" : why, depth, pair, value);
      return;
    }
    if (cfg_.transcript) result_.transcript.push_back(std::string(depth, ' ') + describe(pair, value));
    explore(t, depth + 1);
  }

  void explore(State& s, int depth) {
    if (stop()) return;
    if (lemma_trigger(s)) {
      for (const Rational& val : aror_branch_values()) {
        int acute = 0;
        while (shape_.labels[acute] != AngleType::A) ++acute;
        child(s, depth, -1, 0, [&](State& t) {
          t.lemma_done = true;
          if (t.angles.add_equation(Equation{{{acute, Rational(1)}}, val, "acute at a corner"}) ==
              RowVerdict::Inconsistent)
            return false;
          refresh_pinned(t);
          return true;
        });
      }
      return;
    }
    int pick = -1;
    for (int p : order_)
      if (std::popcount(s.dom[p]) > 1) {
        pick = p;
        break;
      }
    if (pick < 0) {
      if (cfg_.mode == LabelMode::Equiangular && cfg_.guards && all_pinned(s) &&
          !similar_lengths_feasible(c_, corner_values(s), pinned_angles(s), cfg_.guard.tau)) {
        discard("guard-similar-lengths", depth, -1, 0);
        return;
      }
      record_survivor(s);
      return;
    }
    const Mask d = s.dom[pick];
    for (int v = 0; v <= k_; ++v) {
      if (!((d >> v) & 1u)) continue;
      child(s, depth, pick, v, [&](State& t) {
        t.dom[pick] = static_cast<Mask>(1u << v);
        return true;
      });
      if (stop()) return;
    }
  }

  const CandidatePair& c_;
  const PlaneGraph& g_;
  TileShape shape_;
  int k_;
  int tiles_;
  SearchConfig cfg_;
  FaceIndex fi_;
  Mask plain_bit_ = 0, full_mask_ = 0;
  std::vector<int> tile_index_;
  std::vector<VertexId> tile_vertex_;
  std::vector<int> pair_base_;
  std::vector<PairInfo> pairs_;
  std::vector<std::vector<int>> face_pairs_;
  std::map<int, std::vector<TileOption>> options_;
  std::vector<int> order_;
  std::vector<std::vector<AngleInterval>> pair_constraints_;
  std::optional<LengthLayout> layout_;
  ShapeResult result_;
  bool aborted_ = false;
};

}  // namespace

ShapeResult run_search(const CandidatePair& c, const TileShape& shape, int tiles, const SearchConfig& config) {
  return Searcher(c, shape, tiles, config).run();
}

}  // namespace tiling

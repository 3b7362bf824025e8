#include "tiling/filters.hpp"

#include <algorithm>

namespace tiling {

namespace {

std::string vname(const CandidatePair& c, VertexId v) {
  const int k = c.side_index(v);
  return k >= 0 ? "S" + std::to_string(k + 1) : "T" + std::to_string(v);
}

bool on_face(const Face& f, VertexId v) {
  return std::find(f.boundary.begin(), f.boundary.end(), v) != f.boundary.end();
}

}  // namespace

FaceId corner_face_between(const CandidatePair& c, const FaceIndex& faces, int k) {
  const VertexId a = c.sides[k], b = c.sides[(k + 1) % 4];
  for (FaceId f = 0; f < static_cast<FaceId>(faces.faces.size()); ++f)
    if (faces.faces[f].kind == FaceKind::Corner && on_face(faces.faces[f], a) && on_face(faces.faces[f], b))
      return f;
  return -1;
}

FilterVerdict face_sanity_filter(const CandidatePair& c) {
  if (c.tile_count() == 0) return FilterVerdict::discard("face-sanity", "no tiles");
  for (const Face& f : classified_faces(c))
    if (f.kind == FaceKind::Unclassified) {
      std::string s;
      for (VertexId v : f.boundary) s += (s.empty() ? "" : ",") + vname(c, v);
      return FilterVerdict::discard("face-sanity", "face (" + s + ") meets opposite or three sides");
    }
  return FilterVerdict::pass();
}

FilterVerdict corner_filter(const CandidatePair& c) {
  const FaceIndex fi = classified_face_index(c);
  for (int k = 0; k < 4; ++k) {
    const VertexId a = c.sides[k], b = c.sides[(k + 1) % 4];
    const FaceId f = corner_face_between(c, fi, k);
    for (VertexId t = 0; t < c.graph.vertex_count(); ++t) {
      if (c.is_side(t) || !c.graph.adjacent(t, a) || !c.graph.adjacent(t, b)) continue;
      if (f < 0 || !on_face(fi.faces[f], t))
        return FilterVerdict::discard("corner", vname(c, t) + " meets " + vname(c, a) + " and " + vname(c, b) +
                                                    " away from their corner");
    }
  }
  return FilterVerdict::pass();
}

FilterVerdict opposite_sides_filter(const CandidatePair& c, int k, LabelMode mode) {
  if (mode != LabelMode::Square || k != 4) return FilterVerdict::pass();
  for (VertexId t = 0; t < c.graph.vertex_count(); ++t) {
    if (c.is_side(t) || c.graph.degree(t) != 4) continue;
    for (int s = 0; s < 2; ++s)
      if (c.graph.adjacent(t, c.sides[s]) && c.graph.adjacent(t, c.sides[s + 2]))
        return FilterVerdict::discard("opposite-sides", vname(c, t) + " has sides on " + vname(c, c.sides[s]) +
                                                            " and " + vname(c, c.sides[s + 2]));
  }
  return FilterVerdict::pass();
}

FilterVerdict degree_filter(const CandidatePair& c, int k) {
  for (VertexId t = 0; t < c.graph.vertex_count(); ++t)
    if (!c.is_side(t) && c.graph.degree(t) < k)
      return FilterVerdict::discard("degree", vname(c, t) + " has degree " + std::to_string(c.graph.degree(t)) +
                                                  " < " + std::to_string(k));
  return FilterVerdict::pass();
}

EquiangularFilterResult equiangular_filters(const CandidatePair& c, int k) {
  EquiangularFilterResult out;
  const FaceIndex fi = classified_face_index(c);
  const PlaneGraph& g = c.graph;
  auto adj = [&](VertexId t, int s) { return g.adjacent(t, c.sides[((s % 4) + 4) % 4]); };
  for (VertexId t = 0; t < g.vertex_count(); ++t) {
    if (c.is_side(t)) continue;
    if (k == 3) {
      for (int s = 0; s < 2; ++s)
        if (adj(t, s) && adj(t, s + 2)) {
          out.verdict = FilterVerdict::discard("equiangular-opposite-sides",
                                               vname(c, t) + " is a triangle meeting " + vname(c, c.sides[s]) +
                                                   " and " + vname(c, c.sides[s + 2]));
          out.constraints.clear();
          return out;
        }
      for (int s = 0; s < 4; ++s) {
        if (!adj(t, s)) continue;
        // a corner of t on the opposite side is acute
        const VertexId opp = c.sides[(s + 2) % 4];
        for (int m = 0; m < g.degree(t); ++m)
          if (on_face(fi.faces[fi.corner_face[t][m]], opp))
            out.constraints.push_back(
                {t, m, {Rational(0), Rational(1, 2), true, true}, "equiangular-vertex-on-opposite-side"});
        // t is the only tile on s and reaches a neighbouring side
        int tiles_on_s = 0;
        for (VertexId w : g.rotation(c.sides[s])) tiles_on_s += !c.is_side(w);
        if (tiles_on_s != 1) continue;
        for (int dir : {1, -1}) {
          if (!adj(t, s + dir)) continue;
          // the far end of s, on S_{s-dir}
          const int other = ((s - dir) % 4 + 4) % 4;
          const int corner_k = dir == 1 ? other : s;  // corner between S_other and S_s
          const FaceId f = corner_face_between(c, fi, corner_k);
          for (int m = 0; m < g.degree(t); ++m)
            if (f >= 0 && fi.corner_face[t][m] == f)
              out.constraints.push_back(
                  {t, m, {Rational(0), Rational(1, 4), true, false}, "equiangular-whole-side"});
        }
      }
    } else if (k == 4) {
      for (int s = 0; s < 4; ++s)
        if (adj(t, s) && adj(t, s + 1) && adj(t, s + 2)) {
          out.constraints.push_back(
              {-1, -1, {Rational(1, 4), Rational(1), true, true}, "equiangular-three-sides"});
          break;
        }
    }
  }
  return out;
}

FilterVerdict apply_filters(const CandidatePair& c, int k, LabelMode mode) {
  if (auto v = face_sanity_filter(c); !v.keep) return v;
  if (mode != LabelMode::Equiangular) {
    if (auto v = corner_filter(c); !v.keep) return v;
  }
  if (auto v = degree_filter(c, k); !v.keep) return v;
  if (auto v = opposite_sides_filter(c, k, mode); !v.keep) return v;
  if (mode == LabelMode::Equiangular) return equiangular_filters(c, k).verdict;
  return FilterVerdict::pass();
}

}  // namespace tiling

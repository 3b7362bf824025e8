#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tiling/linear_system.hpp"
#include "tiling/plane_graph.hpp"
#include "tiling/shapes.hpp"

namespace tiling {

/// Value of an assignment entry: a model vertex index 0..k-1 or kPlain.
inline constexpr int kPlain = 255;

/// Face targets in units of pi.
Rational face_target(FaceKind kind);

/// Angle variables a1..ak live in their own system; lengths (t1..tk, one
/// variable per G-edge that is not a corner of P, and r in rectangle mode)
/// in another. Angle and length rows never mix.
struct AngleLayout {
  int k = 0;
  std::vector<std::string> names() const;
  /// Bounds from the exact label intervals.
  std::vector<VariableBound> bounds(const TileShape& shape) const;
};

struct LengthLayout {
  LengthLayout(const CandidatePair& c, int k, bool with_ratio);

  int k;
  int edge_base;
  int ratio = -1;  // variable index of r, or -1 when r = 1
  int variables = 0;
  /// edge_var[v][m]: variable of the G-edge between v and rotation(v)[m], or
  /// -1 for edges between two sides.
  std::vector<std::vector<int>> edge_var;
  std::vector<std::string> var_names;

  int side(int j) const { return j; }
  std::vector<VariableBound> bounds() const;
};

/// sum over the boundary edges of S_k of their lengths = 1 (S1, S3) or r
/// (S2, S4; also 1 in square mode).
std::vector<Equation> boundary_side_equations(const CandidatePair& c, const LengthLayout& layout);

/// Row for the run of tile edges between two consecutive non-plain corners
/// `from` and `to` of tile v (corner indices into its rotation), where `from`
/// carries model vertex `i` and `to` carries model vertex `j`.
Equation side_run_equation(const CandidatePair& c, const LengthLayout& layout, VertexId v, int from, int to,
                           int i, int j);

/// All run rows of a tile whose corners are fully assigned; throws
/// std::invalid_argument if some corner is unassigned (negative).
std::vector<Equation> side_run_equations(const CandidatePair& c, const LengthLayout& layout, VertexId v,
                                         const std::vector<int>& corner_values);

/// Sum of the angles at one tiling vertex. `values` holds, per tile on the
/// face, the assigned model vertex or kPlain. Returns nullopt for a vacuous
/// row (every contribution plain and equal to the target).
std::optional<Equation> angle_vertex_equation(FaceKind kind, const std::vector<int>& values, int k);

/// a1 + ... + ak = k - 2.
Equation angle_sum_equation(int k);

}  // namespace tiling

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tiling/equations.hpp"
#include "tiling/filters.hpp"
#include "tiling/guards.hpp"
#include "tiling/plane_graph.hpp"
#include "tiling/shapes.hpp"

namespace tiling {

struct FrontierEntry {
  VertexId tile;
  int corner;  // index into rotation(tile)
  FaceId face;
  friend bool operator==(const FrontierEntry&, const FrontierEntry&) = default;
};

/// Corner faces first (corner between S_k and S_{k+1} for k = 1..4), then
/// the side faces of S1..S4 in rotation order around each side, then the
/// interior faces breadth-first from the boundary. Within a face, tiles in
/// face-boundary order.
std::vector<FrontierEntry> frontier_order(const CandidatePair& c, const FaceIndex& faces);
std::vector<FrontierEntry> frontier_order(const CandidatePair& c);

struct SearchConfig {
  LabelMode mode = LabelMode::Square;
  bool lengths = true;        // false: angles only (equiangular)
  bool allow_mirror = true;   // congruent copies may be reflected
  bool lemma_branching = true;  // acute angle pi/3 or pi/4 for two-right quadrilaterals
  bool guards = true;
  GuardConfig guard;
  std::uint64_t node_cap = 100000000;
  int max_survivors = 4;      // complete assignments kept per (candidate, shape)
  bool stop_at_first_survivor = true;
  bool transcript = false;
  std::vector<AngleConstraint> constraints;  // from the equiangular filters
};

enum class Outcome { Refuted, Survived, Inconclusive };
const char* to_string(Outcome o);

struct Survivor {
  /// corner_values[tile][m]: model vertex index or kPlain (sides empty)
  std::vector<std::vector<int>> corner_values;
  /// Exact value of each model angle when pinned, else empty.
  std::vector<std::optional<Rational>> angles;
  std::vector<std::string> angle_rows;
  std::optional<LinearSystem> angle_system;
  std::vector<std::string> length_rows;
  int angle_freedom = 0;
  int length_freedom = 0;
};

struct ShapeResult {
  TileShape shape;
  Outcome outcome = Outcome::Refuted;
  std::uint64_t nodes = 0;
  std::map<std::string, std::uint64_t> discards;
  std::vector<Survivor> survivors;
  std::vector<std::string> transcript;
};

/// Exhaustive search of the corner assignments of one candidate for one
/// model tile.
ShapeResult run_search(const CandidatePair& c, const TileShape& shape, int tiles, const SearchConfig& config);

/// A single tile option: the value of each corner of a tile.
using TileOption = std::vector<std::uint8_t>;

/// Every way to place the k model vertices on the d corners of a tile in
/// cyclic order (both orientations when mirror is allowed), the other
/// corners plain.
std::vector<TileOption> tile_options(int degree, int k, bool allow_mirror);

}  // namespace tiling

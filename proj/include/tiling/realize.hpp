#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tiling/search.hpp"

namespace tiling {

struct RealizeConfig {
  /// Congruent modes share one set of side lengths; equiangular tiles each
  /// get their own.
  LabelMode mode = LabelMode::Equiangular;
  int scan = 400;                 // samples along each free angle direction
  long double length_floor = 1e-4L;  // every length at least this
  long double tolerance = 1e-9L;  // residual accepted as zero
};

enum class RealizeStatus { Realized, Unrealizable, Undetermined };
const char* to_string(RealizeStatus s);

using Point = std::array<long double, 2>;

struct Realization {
  RealizeStatus status = RealizeStatus::Undetermined;
  std::string note;
  /// Model angles (units of pi) at the realized point.
  std::vector<long double> angles;
  long double tan_smallest = 0;
  /// Ranges of the smallest angle (units of pi) over which a realization
  /// exists; a single point when the angles are rigid.
  std::vector<std::pair<long double, long double>> smallest_ranges;
  long double width = 1, height = 1;
  /// polygons[v]: corners of tile v (non-plain corners only), empty for sides
  std::vector<std::vector<Point>> polygons;
};

/// Looks for actual coordinates of a surviving assignment. The angles range
/// over the survivor's angle system; for each choice the side lengths solve
/// a linear system (side runs, square sides, and the closure of every tile
/// with its own scale), minimized in the l1 sense by an LP. Zeros of that
/// residual are refined, the shortest length is pushed as far from zero as
/// the equations allow, and the tiles are laid out and checked.
/// With every angle known, the lengths of similar tiles solve a linear
/// system (each tile closing up with its own scale). False when no solution
/// with all lengths above tau satisfies it to within tau.
bool similar_lengths_feasible(const CandidatePair& c, const std::vector<std::vector<int>>& corner_values,
                              const std::vector<Rational>& angles, long double tau);

Realization realize_numeric(const CandidatePair& c, const TileShape& shape, const Survivor& survivor,
                            const RealizeConfig& config = {});

}  // namespace tiling

#pragma once

#include <string>

#include "tiling/plane_graph.hpp"

namespace fixture {

using tiling::PlaneGraph;

inline PlaneGraph k4() { return tiling::parse_graph_text("4; 2 3 4; 1 4 3; 1 2 4; 1 3 2"); }

inline PlaneGraph cube() {
  // bottom 1..4, top 5..8
  return tiling::parse_graph_text("8; 2 5 4; 3 6 1; 4 7 2; 1 8 3; 8 1 6; 5 2 7; 6 3 8; 7 4 5");
}

inline PlaneGraph path4() { return tiling::parse_graph_text("4; 2; 1 3; 2 4; 3"); }

inline PlaneGraph square_pyramid() {
  // apex 5 over the square 1234
  return tiling::parse_graph_text("5; 2 5 4; 3 5 1; 4 5 2; 1 5 3; 1 2 3 4");
}

inline PlaneGraph octahedron() {
  return tiling::parse_graph_text("6; 2 3 4 5; 1 5 6 3; 1 2 6 4; 1 3 6 5; 1 4 6 2; 2 5 4 3");
}

// Side vertices are 0..3 (bottom, right, top, left); rotations are
// counterclockwise in the drawn tiling.

/// n horizontal strips of height 1/n stacked in the unit square.
inline PlaneGraph strips(int n) {
  std::vector<std::vector<int>> rot(4 + n);
  const int first = 4, last = 4 + n - 1;
  rot[0] = {1, first, 3};
  rot[1] = {2};
  for (int t = last; t >= first; --t) rot[1].push_back(t);
  rot[1].push_back(0);
  rot[2] = {3, last, 1};
  rot[3] = {0};
  for (int t = first; t <= last; ++t) rot[3].push_back(t);
  rot[3].push_back(2);
  for (int t = first; t <= last; ++t) rot[t] = {t == first ? 0 : t - 1, 1, t == last ? 2 : t + 1, 3};
  return PlaneGraph(std::move(rot));
}

/// Four congruent right trapezoids tiling [0,2]^2 in two stacked blocks,
/// each block cut by the segment (0.6,y0)-(1.4,y0+1). Tiles: 4 bottom-left,
/// 5 bottom-right, 6 top-left, 7 top-right. Labeling class arro. Interior
/// T-junctions at (0.6,1) and (1.4,1) give plain angles.
inline PlaneGraph trapezoids() {
  return PlaneGraph({{1, 5, 4, 3},
                     {2, 7, 5, 0},
                     {3, 6, 7, 1},
                     {0, 4, 6, 2},
                     {0, 5, 7, 6, 3},
                     {0, 1, 7, 4},
                     {4, 7, 2, 3},
                     {4, 5, 1, 2, 6}});
}

/// Two right trapezoids (0,0),(0.6,0),(1.4,1),(0,1) and its half-turn image
/// tiling [0,2]x[0,1].
inline PlaneGraph two_trapezoids() {
  return PlaneGraph({{1, 5, 4, 3}, {2, 5, 0}, {3, 4, 5, 1}, {0, 4, 2}, {0, 5, 2, 3}, {0, 1, 2, 4}});
}

}  // namespace fixture

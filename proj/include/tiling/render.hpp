#pragma once

#include <string>

#include "tiling/realize.hpp"

namespace tiling {

/// Tutte embedding of the tiling graph with the side vertices pinned to the
/// midpoints of the unit square's sides. positions[v] for every vertex.
std::vector<Point> tutte_layout(const CandidatePair& c);

/// SVG of the tiling graph (tiles as dots, sides as squares).
std::string render_graph_svg(const CandidatePair& c, const std::string& caption = "");

/// SVG of a realized tiling; falls back to the graph diagram when the
/// realization has no coordinates. With `overlay` the tiling graph is drawn
/// on top, tiles at their centroids and sides at their midpoints.
std::string render_tiling_svg(const CandidatePair& c, const Realization& r, const std::string& caption = "",
                              bool overlay = false);

}  // namespace tiling

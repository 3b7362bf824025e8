#pragma once

#include <string>
#include <vector>

#include "tiling/plane_graph.hpp"
#include "tiling/shapes.hpp"

namespace tiling {

struct FilterVerdict {
  bool keep = true;
  std::string rule;  // empty when kept
  std::string detail;

  static FilterVerdict pass() { return {}; }
  static FilterVerdict discard(std::string rule, std::string detail) {
    return {false, std::move(rule), std::move(detail)};
  }
};

struct FilterReport {
  std::string candidate;
  FilterVerdict verdict;
};

/// Bound on the angle of `tile` at its corner `corner`, or on every angle of
/// the model tile when tile < 0. Consumed by the search.
struct AngleConstraint {
  int tile = -1;
  int corner = -1;
  AngleInterval bound;
  std::string rule;
};

/// Side index k in 0..3 of S_{k+1}; corner face between S_k and S_{k+1}.
FaceId corner_face_between(const CandidatePair& c, const FaceIndex& faces, int k);

FilterVerdict face_sanity_filter(const CandidatePair& c);
FilterVerdict corner_filter(const CandidatePair& c);
FilterVerdict opposite_sides_filter(const CandidatePair& c, int k, LabelMode mode);
FilterVerdict degree_filter(const CandidatePair& c, int k);

struct EquiangularFilterResult {
  FilterVerdict verdict;
  std::vector<AngleConstraint> constraints;
};
EquiangularFilterResult equiangular_filters(const CandidatePair& c, int k);

/// The filters that apply to (mode, k), in their default order. The first
/// discard wins.
FilterVerdict apply_filters(const CandidatePair& c, int k, LabelMode mode);

}  // namespace tiling

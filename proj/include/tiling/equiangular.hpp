#pragma once

#include <map>
#include <string>
#include <vector>

#include "tiling/realize.hpp"
#include "tiling/run.hpp"

namespace tiling {

struct EquiangularShape {
  TileShape shape;
  std::vector<Survivor> survivors;
  std::vector<Realization> realizations;  // parallel to survivors
};

struct EquiangularRecord {
  CandidatePair candidate;
  std::string filter_rule;  // non-empty when a filter discarded it
  std::vector<EquiangularShape> shapes;  // only shapes with survivors
  bool survived() const { return !shapes.empty(); }
  /// "realized", "unrealizable" (every survivor refuted numerically) or
  /// "undetermined".
  std::string verdict() const;
};

struct EquiangularTally {
  std::size_t candidates = 0;
  std::size_t filtered = 0;
  std::size_t survivors = 0;
  std::size_t realized = 0;
  std::size_t unrealizable = 0;
  std::size_t undetermined = 0;
  /// Survivors left after removing those the curated list marks invalid.
  std::size_t after_curated = 0;
};

struct CuratedEntry {
  std::string verdict;  // "valid" or "invalid"
  std::string note;
};
using CuratedList = std::map<std::string, CuratedEntry>;  // by candidate id

/// Lines "id verdict note...", '#' starts a comment.
CuratedList load_curated(const std::string& path);
std::string format_curated(const std::vector<EquiangularRecord>& records);

struct EquiangularConfig {
  int n = 5;
  int k = 3;
  bool allow_mirror = true;
  int workers = 1;
  std::uint64_t node_cap = 100000000;
  RealizeConfig realize;
  bool run_realizer = true;
};

std::vector<EquiangularRecord> run_equiangular(const std::vector<CandidatePair>& candidates,
                                               const EquiangularConfig& config);

EquiangularTally tally(const std::vector<EquiangularRecord>& records, const CuratedList* curated = nullptr);

nlohmann::json to_json(const EquiangularRecord& r);

}  // namespace tiling

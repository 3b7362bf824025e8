#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tiling/filters.hpp"
#include "tiling/search.hpp"

namespace tiling {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  LabelMode mode = LabelMode::Square;
  int n = 5;
  std::vector<int> ks{4, 5, 6};
  Rational eps = kDefaultEps;
  long double tau = 1e-9L;
  std::uint64_t node_cap = 100000000;
  int workers = 1;
  bool allow_mirror = true;
  bool transcript = false;
  std::vector<std::string> corpus;
  std::string out_dir;
};

const char* to_string(LabelMode mode);
LabelMode parse_mode(const std::string& s);

/// TILING_WORKERS when set, else the hardware concurrency.
int default_workers();

/// planar_code file holding the apexed graphs for n tiles with every vertex
/// of degree at least min_degree (3 or 4).
std::string default_corpus(const std::string& data_dir, int n, int min_degree);

struct IngestReport {
  std::string path;
  std::size_t graphs = 0;
  std::size_t candidates = 0;  // new ones contributed by this file
};

/// Parses the files, extracts candidates and deduplicates them across files.
/// Output is sorted by code.
std::vector<CandidatePair> ingest(const std::vector<std::string>& paths, int min_tile_degree,
                                  std::vector<IngestReport>* report = nullptr);

/// Runs fn(i) for every index, shard i going to worker hash(code_i) % workers.
void run_sharded(const std::vector<CandidatePair>& candidates, int workers,
                 const std::function<void(std::size_t)>& fn);

std::uint64_t code_hash(const CanonicalCode& code);

struct ProveSummary {
  std::size_t candidates = 0;
  std::map<std::string, std::size_t> outcomes;        // per candidate
  std::map<std::string, std::size_t> filter_rules;    // (k, rule) discards
  std::map<std::string, std::uint64_t> discard_rules; // search discards
  std::uint64_t nodes = 0;
  std::vector<std::string> not_refuted;  // "id outcome"
  bool all_refuted() const { return not_refuted.empty(); }
};

struct ProveResult {
  std::vector<std::string> certificates;  // one JSON line per candidate, code order
  ProveSummary summary;
};

ProveResult prove(const std::vector<CandidatePair>& candidates, const RunConfig& config);

nlohmann::json manifest(const RunConfig& config, const std::string& command);
std::string format_summary(const ProveSummary& s);

/// Writes manifest.json, certificates.jsonl and summary.txt.
void write_run(const std::string& dir, const nlohmann::json& manifest, const std::vector<std::string>& lines,
               const std::string& summary);

nlohmann::json to_json(const ShapeResult& r, bool with_transcript);
nlohmann::json candidate_json(const CandidatePair& c);

}  // namespace tiling

#include "tiling/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tiling {

using nlohmann::json;

const char* to_string(LabelMode mode) {
  switch (mode) {
    case LabelMode::Square: return "square";
    case LabelMode::Rectangle: return "rectangle";
    case LabelMode::Equiangular: return "equiangular";
  }
  return "?";
}

LabelMode parse_mode(const std::string& s) {
  if (s == "square") return LabelMode::Square;
  if (s == "rectangle") return LabelMode::Rectangle;
  if (s == "equiangular") return LabelMode::Equiangular;
  throw std::invalid_argument("unknown shape '" + s + "'");
}

int default_workers() {
  if (const char* env = std::getenv("TILING_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string default_corpus(const std::string& data_dir, int n, int min_degree) {
  return data_dir + "/corpus/pc3m" + std::to_string(min_degree) + "_v" + std::to_string(n + 5) + ".pc";
}

std::vector<CandidatePair> ingest(const std::vector<std::string>& paths, int min_tile_degree,
                                  std::vector<IngestReport>* report) {
  std::map<CanonicalCode, CandidatePair> all;
  for (const std::string& path : paths) {
    IngestReport r{path};
    const std::vector<PlaneGraph> graphs = read_planar_code_file(path);
    r.graphs = graphs.size();
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      if (!check_three_connected(graphs[i]))
        throw GraphError(path + ": graph " + std::to_string(i + 1) + " is not 3-connected");
      for (CandidatePair& c : extract_candidates(graphs[i], min_tile_degree)) {
        const CanonicalCode code = c.code;
        if (all.emplace(code, std::move(c)).second) ++r.candidates;
      }
    }
    if (report) report->push_back(r);
  }
  std::vector<CandidatePair> out;
  out.reserve(all.size());
  for (auto& [code, c] : all) out.push_back(std::move(c));
  return out;
}

std::uint64_t code_hash(const CanonicalCode& code) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (std::uint8_t b : code) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

void run_sharded(const std::vector<CandidatePair>& candidates, int workers,
                 const std::function<void(std::size_t)>& fn) {
  workers = std::max(1, workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) fn(i);
    return;
  }
  std::vector<std::vector<std::size_t>> shards(workers);
  for (std::size_t i = 0; i < candidates.size(); ++i)
    shards[code_hash(candidates[i].code) % workers].push_back(i);
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i : shards[w]) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

json candidate_json(const CandidatePair& c) {
  return {{"candidate", c.id()}, {"graph", to_text(c.graph)}, {"sides", c.sides}};
}

json to_json(const ShapeResult& r, bool with_transcript) {
  json j{{"shape", r.shape.str()},
         {"outcome", to_string(r.outcome)},
         {"nodes", r.nodes},
         {"discards", r.discards}};
  json survivors = json::array();
  for (const Survivor& s : r.survivors) {
    json values = json::array();
    for (const auto& tile : s.corner_values) {
      json t = json::array();
      for (int v : tile) t.push_back(v == kPlain ? json("p") : json(v + 1));
      values.push_back(t);
    }
    json angles = json::array();
    for (const auto& a : s.angles) angles.push_back(a ? json(a->str()) : json(nullptr));
    survivors.push_back({{"corners", values},
                         {"angles", angles},
                         {"angle_rows", s.angle_rows},
                         {"length_rows", s.length_rows},
                         {"angle_freedom", s.angle_freedom},
                         {"length_freedom", s.length_freedom}});
  }
  j["survivors"] = survivors;
  if (with_transcript) j["transcript"] = r.transcript;
  return j;
}

namespace {

struct CandidateOutcome {
  std::string line;
  std::string outcome;
  std::vector<std::string> filter_rules;
  std::map<std::string, std::uint64_t> discards;
  std::uint64_t nodes = 0;
};

CandidateOutcome prove_one(const CandidatePair& c, const RunConfig& config) {
  CandidateOutcome out;
  json rec = candidate_json(c);
  rec["schema"] = kSchemaVersion;
  rec["mode"] = to_string(config.mode);
  rec["tiles"] = config.n;
  json per_k = json::array();
  bool survived = false, inconclusive = false;
  for (int k : config.ks) {
    json jk{{"k", k}};
    const FilterVerdict v = apply_filters(c, k, config.mode);
    if (!v.keep) {
      jk["filter"] = {{"rule", v.rule}, {"detail", v.detail}};
      out.filter_rules.push_back("k=" + std::to_string(k) + " " + v.rule);
      per_k.push_back(jk);
      continue;
    }
    jk["filter"] = nullptr;
    SearchConfig sc;
    sc.mode = config.mode;
    sc.allow_mirror = config.allow_mirror;
    sc.node_cap = config.node_cap;
    sc.guard.tau = config.tau;
    sc.transcript = config.transcript;
    json shapes = json::array();
    for (const TileShape& shape : enumerate_labelings(k, config.mode, config.eps)) {
      const ShapeResult r = run_search(c, shape, config.n, sc);
      out.nodes += r.nodes;
      for (const auto& [rule, count] : r.discards) out.discards[rule] += count;
      survived = survived || r.outcome == Outcome::Survived;
      inconclusive = inconclusive || r.outcome == Outcome::Inconclusive;
      shapes.push_back(to_json(r, config.transcript));
    }
    jk["shapes"] = shapes;
    per_k.push_back(jk);
  }
  out.outcome = inconclusive ? "inconclusive" : survived ? "survived" : "refuted";
  rec["k"] = per_k;
  rec["outcome"] = out.outcome;
  out.line = rec.dump();
  return out;
}

}  // namespace

ProveResult prove(const std::vector<CandidatePair>& candidates, const RunConfig& config) {
  std::vector<CandidateOutcome> results(candidates.size());
  run_sharded(candidates, config.workers, [&](std::size_t i) { results[i] = prove_one(candidates[i], config); });
  ProveResult out;
  out.summary.candidates = candidates.size();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CandidateOutcome& r = results[i];
    out.certificates.push_back(std::move(r.line));
    ++out.summary.outcomes[r.outcome];
    for (const auto& rule : r.filter_rules) ++out.summary.filter_rules[rule];
    for (const auto& [rule, count] : r.discards) out.summary.discard_rules[rule] += count;
    out.summary.nodes += r.nodes;
    if (r.outcome != "refuted") out.summary.not_refuted.push_back(candidates[i].id() + " " + r.outcome);
  }
  return out;
}

json manifest(const RunConfig& config, const std::string& command) {
  return {{"schema", kSchemaVersion},
          {"command", command},
          {"mode", to_string(config.mode)},
          {"n", config.n},
          {"k", config.ks},
          {"eps", config.eps.str()},
          {"tau", static_cast<double>(config.tau)},
          {"node_cap", config.node_cap},
          {"workers", config.workers},
          {"allow_mirror", config.allow_mirror},
          {"transcript", config.transcript},
          {"corpus", config.corpus},
          {"deterministic", true}};
}

std::string format_summary(const ProveSummary& s) {
  std::ostringstream os;
  os << "candidates  " << s.candidates << "\n";
  for (const auto& [o, c] : s.outcomes) os << "  " << o << "  " << c << "\n";
  os << "search nodes  " << s.nodes << "\n";
  if (!s.filter_rules.empty()) {
    os << "filter discards\n";
    for (const auto& [r, c] : s.filter_rules) os << "  " << r << "  " << c << "\n";
  }
  if (!s.discard_rules.empty()) {
    os << "search discards\n";
    for (const auto& [r, c] : s.discard_rules) os << "  " << r << "  " << c << "\n";
  }
  for (const auto& id : s.not_refuted) os << "NOT REFUTED  " << id << "\n";
  return os.str();
}

void write_run(const std::string& dir, const json& manifest, const std::vector<std::string>& lines,
               const std::string& summary) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir + "/manifest.json") << manifest.dump(2) << "\n";
  std::ofstream cert(dir + "/certificates.jsonl");
  for (const auto& l : lines) cert << l << "\n";
  std::ofstream(dir + "/summary.txt") << summary;
}

}  // namespace tiling

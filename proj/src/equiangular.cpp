#include "tiling/equiangular.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tiling {

using nlohmann::json;

std::string EquiangularRecord::verdict() const {
  bool undetermined = false;
  for (const EquiangularShape& s : shapes)
    for (const Realization& r : s.realizations) {
      if (r.status == RealizeStatus::Realized) return "realized";
      if (r.status == RealizeStatus::Undetermined) undetermined = true;
    }
  if (shapes.empty()) return "refuted";
  return undetermined ? "undetermined" : "unrealizable";
}

CuratedList load_curated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  CuratedList out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    std::string id, verdict;
    if (!(is >> id)) continue;
    if (!(is >> verdict) || (verdict != "valid" && verdict != "invalid"))
      throw std::runtime_error(path + ": bad line '" + line + "'");
    std::string note;
    std::getline(is >> std::ws, note);
    out[id] = {verdict, note};
  }
  return out;
}

std::string format_curated(const std::vector<EquiangularRecord>& records) {
  std::ostringstream os;
  for (const EquiangularRecord& r : records) {
    if (!r.survived()) continue;
    const std::string v = r.verdict();
    if (v == "undetermined") continue;
    os << r.candidate.id() << " " << (v == "realized" ? "valid" : "invalid");
    for (const EquiangularShape& s : r.shapes)
      for (std::size_t i = 0; i < s.realizations.size(); ++i) {
        const Realization& z = s.realizations[i];
        if (z.status != RealizeStatus::Realized) continue;
        os << " " << s.shape.str() << " tan=" << static_cast<double>(z.tan_smallest);
        break;
      }
    if (v != "realized") os << " no coordinates";
    os << "\n";
  }
  return os.str();
}

std::vector<EquiangularRecord> run_equiangular(const std::vector<CandidatePair>& candidates,
                                               const EquiangularConfig& config) {
  const std::vector<TileShape> shapes = enumerate_labelings(config.k, LabelMode::Equiangular);
  std::vector<EquiangularRecord> out(candidates.size());
  run_sharded(candidates, config.workers, [&](std::size_t i) {
    const CandidatePair& c = candidates[i];
    EquiangularRecord& rec = out[i];
    rec.candidate = c;
    const FilterVerdict v = apply_filters(c, config.k, LabelMode::Equiangular);
    if (!v.keep) {
      rec.filter_rule = v.rule;
      return;
    }
    SearchConfig sc;
    sc.mode = LabelMode::Equiangular;
    sc.lengths = false;
    sc.allow_mirror = config.allow_mirror;
    sc.node_cap = config.node_cap;
    sc.stop_at_first_survivor = false;
    sc.max_survivors = 1000;
    sc.constraints = equiangular_filters(c, config.k).constraints;
    for (const TileShape& shape : shapes) {
      ShapeResult r = run_search(c, shape, config.n, sc);
      if (r.survivors.empty()) continue;
      EquiangularShape es{shape, std::move(r.survivors), {}};
      if (config.run_realizer)
        for (const Survivor& s : es.survivors) es.realizations.push_back(realize_numeric(c, shape, s, config.realize));
      rec.shapes.push_back(std::move(es));
    }
  });
  return out;
}

EquiangularTally tally(const std::vector<EquiangularRecord>& records, const CuratedList* curated) {
  EquiangularTally t;
  t.candidates = records.size();
  for (const EquiangularRecord& r : records) {
    if (!r.filter_rule.empty()) ++t.filtered;
    if (!r.survived()) continue;
    ++t.survivors;
    const std::string v = r.verdict();
    if (v == "realized") ++t.realized;
    else if (v == "unrealizable") ++t.unrealizable;
    else ++t.undetermined;
    bool invalid = false;
    if (curated) {
      const auto it = curated->find(r.candidate.id());
      invalid = it != curated->end() && it->second.verdict == "invalid";
    }
    if (!invalid) ++t.after_curated;
  }
  return t;
}

json to_json(const EquiangularRecord& r) {
  json j = candidate_json(r.candidate);
  j["schema"] = kSchemaVersion;
  if (!r.filter_rule.empty()) j["filter"] = r.filter_rule;
  json shapes = json::array();
  for (const EquiangularShape& s : r.shapes) {
    json survivors = json::array();
    for (std::size_t i = 0; i < s.survivors.size(); ++i) {
      ShapeResult wrap;
      wrap.survivors = {s.survivors[i]};
      json sj = to_json(wrap, false)["survivors"][0];
      if (i < s.realizations.size()) {
        const Realization& z = s.realizations[i];
        sj["realization"] = {{"status", to_string(z.status)}, {"note", z.note}};
        if (z.status == RealizeStatus::Realized) {
          sj["realization"]["tan_smallest"] = static_cast<double>(z.tan_smallest);
          sj["realization"]["aspect"] = static_cast<double>(z.width / z.height);
        }
      }
      survivors.push_back(sj);
    }
    shapes.push_back({{"shape", s.shape.str()}, {"survivors", survivors}});
  }
  j["shapes"] = shapes;
  j["verdict"] = r.verdict();
  return j;
}

}  // namespace tiling

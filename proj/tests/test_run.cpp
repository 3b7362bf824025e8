#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>

#include "fixtures.hpp"
#include "tiling/equiangular.hpp"
#include "tiling/run.hpp"

using namespace tiling;

namespace {

std::string corpus(int n) { return default_corpus(TILING_DATA_DIR, n, 4); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("ingest is deterministic and deduplicates across files") {
  std::vector<IngestReport> report;
  const auto a = ingest({corpus(5)}, 4, &report);
  const auto b = ingest({corpus(5), corpus(5)}, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].code == b[i].code);
  CHECK(std::is_sorted(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.code < y.code; }));
  REQUIRE(report.size() == 1);
  CHECK(report[0].graphs == 67);
  CHECK(report[0].candidates == a.size());
  for (const auto& c : a) CHECK(c.tile_count() == 5);
  CHECK(ingest({corpus(3)}, 4).size() == 3);
  CHECK_THROWS(ingest({"/nonexistent.pc"}, 4));
}

TEST_CASE("sharding visits every candidate once") {
  const auto cands = ingest({corpus(5)}, 4);
  for (int workers : {1, 2, 3, 8}) {
    std::vector<int> hits(cands.size(), 0);
    std::mutex m;
    run_sharded(cands, workers, [&](std::size_t i) {
      std::lock_guard lock(m);
      ++hits[i];
    });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  CHECK_THROWS(run_sharded(cands, 2, [](std::size_t i) {
    if (i == 3) throw std::runtime_error("boom");
  }));
}

TEST_CASE("square n=3 is refuted") {
  RunConfig rc;
  rc.n = 3;
  const auto result = prove(ingest({corpus(3)}, 4), rc);
  CHECK(result.summary.all_refuted());
  CHECK(result.summary.outcomes.at("refuted") == 3);
  CHECK(result.certificates.size() == 3);
  for (const auto& line : result.certificates) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["schema"] == kSchemaVersion);
    CHECK(j["outcome"] == "refuted");
    CHECK(j["k"].size() == 3);
    // the graph in the record rebuilds the same candidate
    const auto sides = j["sides"].get<std::array<VertexId, 4>>();
    CHECK(make_candidate(parse_graph_text(j["graph"].get<std::string>()), sides).id() == j["candidate"]);
  }
}

TEST_CASE("certificates do not depend on the worker count") {
  const auto cands = ingest({corpus(5)}, 4);
  RunConfig rc;
  rc.n = 5;
  rc.workers = 1;
  const auto one = prove(cands, rc);
  rc.workers = 4;
  const auto four = prove(cands, rc);
  CHECK(one.certificates == four.certificates);
  CHECK(format_summary(one.summary) == format_summary(four.summary));
  CHECK(one.summary.all_refuted());
}

TEST_CASE("a survivor is reported and blocks the refutation") {
  RunConfig rc;
  rc.mode = LabelMode::Rectangle;
  rc.n = 4;
  rc.ks = {4};
  const auto result = prove({make_candidate(fixture::trapezoids(), {0, 1, 2, 3})}, rc);
  CHECK_FALSE(result.summary.all_refuted());
  CHECK(result.summary.outcomes.at("survived") == 1);
  CHECK(format_summary(result.summary).find("NOT REFUTED") != std::string::npos);

  rc.node_cap = 1;
  const auto capped = prove({make_candidate(fixture::trapezoids(), {0, 1, 2, 3})}, rc);
  CHECK(capped.summary.outcomes.at("inconclusive") == 1);
}

TEST_CASE("manifest echoes the configuration and run files are written") {
  RunConfig rc;
  rc.n = 3;
  rc.corpus = {corpus(3)};
  const auto m = manifest(rc, "prove --shape square --n 3");
  for (const char* key : {"schema", "mode", "n", "k", "eps", "tau", "node_cap", "workers", "allow_mirror",
                          "transcript", "corpus", "deterministic"})
    CHECK_MESSAGE(m.contains(key), key);
  CHECK(m["eps"] == "1/20");
  const auto dir = std::filesystem::temp_directory_path() / "tiling_run_test";
  std::filesystem::remove_all(dir);
  const auto result = prove(ingest(rc.corpus, 4), rc);
  write_run(dir.string(), m, result.certificates, format_summary(result.summary));
  CHECK(nlohmann::json::parse(slurp((dir / "manifest.json").string())) == m);
  const std::string certs = slurp((dir / "certificates.jsonl").string());
  CHECK(std::count(certs.begin(), certs.end(), '\n') == 3);
  CHECK(slurp((dir / "summary.txt").string()).find("refuted  3") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("curated list round trip") {
  const auto path = std::filesystem::temp_directory_path() / "tiling_curated.txt";
  std::ofstream(path) << "# comment\nabc valid tan=1\n\ndef invalid no coordinates  # trailing\n";
  const CuratedList list = load_curated(path.string());
  REQUIRE(list.size() == 2);
  CHECK(list.at("abc").verdict == "valid");
  CHECK(list.at("def").note == "no coordinates  ");
  std::ofstream(path) << "abc maybe\n";
  CHECK_THROWS(load_curated(path.string()));
  std::filesystem::remove(path);

  const CuratedList bundled = load_curated(std::string(TILING_DATA_DIR) + "/curated/equiangular_n5.txt");
  int valid = 0;
  for (const auto& [id, e] : bundled) valid += e.verdict == "valid";
  CHECK(valid == 31);
}

TEST_CASE("equiangular tally honours the curated list") {
  EquiangularRecord survived, refuted;
  survived.candidate = make_candidate(fixture::trapezoids(), {0, 1, 2, 3});
  survived.shapes.push_back({});
  survived.shapes[0].realizations.push_back({});
  survived.shapes[0].realizations[0].status = RealizeStatus::Unrealizable;
  refuted.candidate = make_candidate(fixture::strips(2), {0, 1, 2, 3});
  CHECK(survived.verdict() == "unrealizable");
  CHECK(refuted.verdict() == "refuted");
  CuratedList list{{survived.candidate.id(), {"invalid", ""}}};
  const auto t = tally({survived, refuted}, &list);
  CHECK(t.candidates == 2);
  CHECK(t.survivors == 1);
  CHECK(t.unrealizable == 1);
  CHECK(t.after_curated == 0);
  CHECK(tally({survived, refuted}).after_curated == 1);
  CHECK(format_curated({survived, refuted}) == survived.candidate.id() + " invalid no coordinates\n");
}

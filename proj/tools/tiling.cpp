#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tiling/equiangular.hpp"
#include "tiling/render.hpp"
#include "tiling/run.hpp"

#ifndef TILING_DATA_DIR
#define TILING_DATA_DIR "data"
#endif

using namespace tiling;
using nlohmann::json;

namespace {

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string data_dir() {
  if (const char* env = std::getenv("TILING_DATA")) return env;
  return TILING_DATA_DIR;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) s += (i > 1 ? " " : "") + std::string(argv[i]);
  return s;
}

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

CandidatePair candidate_from_json(const json& j) {
  const auto sides = j.at("sides").get<std::array<VertexId, 4>>();
  return make_candidate(parse_graph_text(j.at("graph").get<std::string>()), sides);
}

void write_file(const std::string& path, const std::string& text) {
  if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty())
    std::filesystem::create_directories(dir);
  std::ofstream(path) << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive search for tilings of a square or rectangle by congruent convex polygons"};
  app.require_subcommand(1);

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "parse planar_code files and extract candidates");
  std::vector<std::string> ingest_paths;
  int ingest_degree = 4;
  std::string ingest_out;
  ingest_cmd->add_option("files", ingest_paths, "planar_code files")->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--min-degree", ingest_degree, "minimum tile degree")->check(CLI::Range(3, 6));
  ingest_cmd->add_option("--out", ingest_out, "write candidates as JSON lines");

  // prove
  auto* prove_cmd = app.add_subcommand("prove", "refute every candidate for congruent tiles");
  RunConfig rc;
  std::string shape = "square", eps = kDefaultEps.str();
  rc.workers = default_workers();
  prove_cmd->add_option("--shape", shape)->check(CLI::IsMember({"square", "rectangle"}));
  prove_cmd->add_option("--n", rc.n, "number of tiles")->required()->check(CLI::Range(1, 15));
  prove_cmd->add_option("--k", rc.ks, "tile side counts")->check(CLI::Range(4, 6));
  prove_cmd->add_option("--corpus", rc.corpus, "planar_code files (default: bundled corpus)");
  prove_cmd->add_option("--eps", eps, "strictness margin used by the labeling filter");
  prove_cmd->add_option("--tau", rc.tau, "numeric guard tolerance");
  prove_cmd->add_option("--node-cap", rc.node_cap, "search nodes per (candidate, shape)");
  prove_cmd->add_option("--workers", rc.workers, "worker threads (env TILING_WORKERS)");
  prove_cmd->add_flag("!--no-mirror", rc.allow_mirror, "forbid reflected copies");
  prove_cmd->add_flag("--transcript", rc.transcript, "record search transcripts");
  prove_cmd->add_option("--out", rc.out_dir, "output directory");

  // equiangular
  auto* eq_cmd = app.add_subcommand("equiangular", "enumerate equiangular tilings of the square");
  EquiangularConfig ec;
  std::vector<int> eq_ks{3, 4};
  std::vector<std::string> eq_corpus;
  std::string curated_path, write_curated, eq_out;
  ec.workers = default_workers();
  eq_cmd->add_option("--n", ec.n, "number of tiles")->required()->check(CLI::Range(1, 9));
  eq_cmd->add_option("--k", eq_ks, "tile side counts")->check(CLI::Range(3, 4));
  eq_cmd->add_option("--corpus", eq_corpus, "planar_code files (default: bundled corpus)");
  eq_cmd->add_option("--curated", curated_path, "curated verdict list (default: bundled, if any)");
  eq_cmd->add_option("--write-curated", write_curated, "write verdicts from the realizer to this file");
  eq_cmd->add_option("--workers", ec.workers, "worker threads (env TILING_WORKERS)");
  eq_cmd->add_flag("!--no-mirror", ec.allow_mirror, "forbid reflected copies");
  eq_cmd->add_option("--out", eq_out, "output directory");

  // render
  auto* render_cmd = app.add_subcommand("render", "SVG of a candidate, realized when possible");
  std::string render_cert, render_id, render_shape, render_graph, render_mode, render_out;
  std::vector<VertexId> render_sides;
  int render_n = 0, render_index = 0;
  bool render_overlay = false;
  render_cmd->add_option("--certificates", render_cert, "certificates.jsonl or equiangular records");
  render_cmd->add_option("--id", render_id, "candidate id (prefix)");
  render_cmd->add_option("--graph", render_graph, "graph text 'N; r_1; ...' instead of a certificate");
  render_cmd->add_option("--sides", render_sides, "0-based side vertices S1..S4 (with --graph)")->expected(4);
  render_cmd->add_option("--mode", render_mode, "square, rectangle or equiangular");
  render_cmd->add_option("--shape", render_shape, "labeling to realize, e.g. (ma)(ma)r");
  render_cmd->add_option("--index", render_index, "survivor index within the shape");
  render_cmd->add_option("--out", render_out, "output file (default stdout)");
  render_cmd->add_flag("--overlay", render_overlay, "draw the tiling graph over the tiles");

  // report
  auto* report_cmd = app.add_subcommand("report", "summarize a run directory");
  std::string report_dir;
  report_cmd->add_option("dir", report_dir, "run directory")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);
  const std::string command = join_args(argc, argv);

  try {
    if (*ingest_cmd) {
      std::vector<IngestReport> report;
      const auto candidates = ingest(ingest_paths, ingest_degree, &report);
      for (const auto& r : report)
        std::cout << r.path << ": " << r.graphs << " graphs, " << r.candidates << " new candidates\n";
      std::map<int, std::size_t> by_n;
      for (const auto& c : candidates) ++by_n[c.tile_count()];
      for (const auto& [n, count] : by_n) std::cout << "n=" << n << "  " << count << " candidates\n";
      if (!ingest_out.empty()) {
        std::ostringstream os;
        for (const auto& c : candidates) os << candidate_json(c).dump() << "\n";
        write_file(ingest_out, os.str());
      }
      return 0;
    }

    if (*prove_cmd) {
      rc.mode = parse_mode(shape);
      rc.eps = parse_rational(eps);
      if (rc.corpus.empty()) rc.corpus = {default_corpus(data_dir(), rc.n, 4)};
      if (rc.out_dir.empty()) rc.out_dir = "runs/" + shape + "_n" + std::to_string(rc.n);
      const auto candidates = ingest(rc.corpus, 4);
      std::cerr << candidates.size() << " candidates, " << rc.workers << " workers\n";
      const ProveResult result = prove(candidates, rc);
      const std::string summary = format_summary(result.summary);
      write_run(rc.out_dir, manifest(rc, command), result.certificates, summary);
      std::cout << summary;
      std::cout << (result.summary.all_refuted() ? "all candidates refuted" : "REFUTATION INCOMPLETE") << "\n";
      if (result.summary.outcomes.count("inconclusive")) return 2;
      return result.summary.all_refuted() ? 0 : 1;
    }

    if (*eq_cmd) {
      if (eq_corpus.empty()) eq_corpus = {data_dir() + "/corpus/pc3m3_v" + std::to_string(ec.n + 5) + ".pc"};
      if (curated_path.empty()) {
        const std::string bundled = data_dir() + "/curated/equiangular_n" + std::to_string(ec.n) + ".txt";
        if (std::filesystem::exists(bundled)) curated_path = bundled;
      }
      CuratedList curated;
      if (!curated_path.empty()) curated = load_curated(curated_path);
      std::size_t total = 0;
      std::string curated_text;
      std::ostringstream records;
      for (int k : eq_ks) {
        ec.k = k;
        const auto candidates = ingest(eq_corpus, k);
        const auto recs = run_equiangular(candidates, ec);
        const EquiangularTally t = tally(recs, curated_path.empty() ? nullptr : &curated);
        for (const auto& r : recs) {
          if (!r.survived()) continue;
          json j = to_json(r);
          j["mode"] = "equiangular";
          j["tiles"] = ec.n;
          j["k"] = k;
          records << j.dump() << "\n";
        }
        std::cout << "k=" << k << ": " << t.candidates << " candidates, " << t.survivors << " survivors, "
                  << t.realized << " realized, " << t.unrealizable << " unrealizable, " << t.undetermined
                  << " undetermined\n";
        if (!curated_path.empty())
          std::cout << "k=" << k << ": " << t.survivors << " survivors, " << t.survivors - t.after_curated
                    << " curated invalid, " << t.after_curated << " tilings\n";
        total += curated_path.empty() ? t.realized : t.after_curated;
        curated_text += format_curated(recs);
      }
      std::cout << "total " << total << "\n";
      if (!write_curated.empty())
        write_file(write_curated, "# candidate verdict note; n=" + std::to_string(ec.n) +
                                      ", verdicts from the numeric realizer\n" + curated_text);
      if (!eq_out.empty()) {
        json m{{"schema", kSchemaVersion}, {"command", command},   {"mode", "equiangular"},
               {"n", ec.n},                {"k", eq_ks},           {"workers", ec.workers},
               {"allow_mirror", ec.allow_mirror}, {"corpus", eq_corpus}, {"curated", curated_path},
               {"node_cap", ec.node_cap},  {"deterministic", true}};
        write_file(eq_out + "/manifest.json", m.dump(2) + "\n");
        write_file(eq_out + "/records.jsonl", records.str());
      }
      return 0;
    }

    if (*render_cmd) {
      CandidatePair c;
      int tiles = render_n;
      if (!render_graph.empty()) {
        if (render_sides.size() != 4) throw std::runtime_error("--graph needs --sides");
        c = make_candidate(parse_graph_text(render_graph),
                           {render_sides[0], render_sides[1], render_sides[2], render_sides[3]});
      } else {
        if (render_cert.empty() || render_id.empty()) throw std::runtime_error("need --certificates and --id");
        bool found = false;
        for (const json& j : read_jsonl(render_cert)) {
          if (j.at("candidate").get<std::string>().rfind(render_id, 0) != 0) continue;
          c = candidate_from_json(j);
          if (render_mode.empty() && j.contains("mode")) render_mode = j["mode"];
          found = true;
          break;
        }
        if (!found) throw std::runtime_error("no candidate with id " + render_id);
      }
      if (tiles == 0) tiles = c.tile_count();
      const LabelMode mode = parse_mode(render_mode.empty() ? "square" : render_mode);
      Realization z;
      std::string caption = c.id().substr(0, 16);
      // Re-run the search to recover the survivor, then realize it.
      std::vector<int> ks;
      for (VertexId v = 0; v < c.graph.vertex_count(); ++v)
        if (!c.is_side(v)) ks.push_back(c.graph.degree(v));
      for (int k = 3; k <= 6 && z.status != RealizeStatus::Realized; ++k) {
        if (mode != LabelMode::Equiangular && k == 3) continue;
        SearchConfig sc;
        sc.mode = mode;
        sc.lengths = mode != LabelMode::Equiangular;
        sc.stop_at_first_survivor = false;
        sc.max_survivors = 1000;
        if (mode == LabelMode::Equiangular) sc.constraints = equiangular_filters(c, k).constraints;
        for (const TileShape& s : enumerate_labelings(k, mode)) {
          if (!render_shape.empty() && s.str() != render_shape) continue;
          const ShapeResult r = run_search(c, s, tiles, sc);
          for (std::size_t i = 0; i < r.survivors.size(); ++i) {
            if (!render_shape.empty() && static_cast<int>(i) != render_index) continue;
            RealizeConfig rc;
            rc.mode = mode;
            Realization attempt = realize_numeric(c, s, r.survivors[i], rc);
            if (attempt.status == RealizeStatus::Realized) {
              z = attempt;
              caption += " " + s.str();
              break;
            }
          }
          if (z.status == RealizeStatus::Realized) break;
        }
      }
      const std::string svg = render_tiling_svg(c, z, caption, render_overlay);
      if (render_out.empty()) std::cout << svg;
      else write_file(render_out, svg);
      if (z.status != RealizeStatus::Realized) std::cerr << "not realized; drew the graph diagram\n";
      return 0;
    }

    if (*report_cmd) {
      std::ifstream mf(report_dir + "/manifest.json");
      const json m = json::parse(mf);
      std::cout << "command  " << m.value("command", "") << "\n";
      const std::string certs = report_dir + "/certificates.jsonl";
      const std::string recs = report_dir + "/records.jsonl";
      std::map<std::string, std::size_t> outcomes, shapes;
      std::size_t lines = 0;
      for (const json& j : read_jsonl(std::filesystem::exists(certs) ? certs : recs)) {
        ++lines;
        if (j.at("schema").get<int>() != kSchemaVersion) throw std::runtime_error("schema mismatch");
        if (j.contains("outcome")) ++outcomes[j["outcome"].get<std::string>()];
        if (j.contains("verdict")) ++outcomes[j["verdict"].get<std::string>()];
        if (j.contains("shapes") && j["shapes"].is_array())
          for (const json& s : j["shapes"]) ++shapes[s["shape"].get<std::string>()];
      }
      std::cout << "records  " << lines << "\n";
      for (const auto& [o, n] : outcomes) std::cout << "  " << o << "  " << n << "\n";
      if (!shapes.empty()) {
        std::cout << "surviving shapes\n";
        for (const auto& [s, n] : shapes) std::cout << "  " << s << "  " << n << "\n";
      }
      if (std::ifstream sf(report_dir + "/summary.txt"); sf) std::cout << sf.rdbuf();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

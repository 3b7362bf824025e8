#include "tiling/plane_graph.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>

namespace tiling {

namespace {

constexpr std::string_view kPlanarCodeHeader = ">>planar_code<<";

bool connected_without(const PlaneGraph& g, VertexId skip_a, VertexId skip_b) {
  const int n = g.vertex_count();
  std::vector<char> seen(n, 0);
  VertexId start = -1;
  int remaining = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (v == skip_a || v == skip_b) continue;
    ++remaining;
    if (start < 0) start = v;
  }
  if (start < 0) return true;
  std::vector<VertexId> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g.rotation(v)) {
      if (w == skip_a || w == skip_b || seen[w]) continue;
      seen[w] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == remaining;
}

int count_faces(const std::vector<std::vector<VertexId>>& rot, const std::vector<int>& pos,
                int n) {
  // darts indexed by (v, i): v -> rot[v][i]
  std::vector<int> offset(n + 1, 0);
  for (int v = 0; v < n; ++v) offset[v + 1] = offset[v] + static_cast<int>(rot[v].size());
  std::vector<char> used(offset[n], 0);
  int count = 0;
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) {
      if (used[offset[v] + i]) continue;
      ++count;
      int u = v, j = i;
      while (!used[offset[u] + j]) {
        used[offset[u] + j] = 1;
        int w = rot[u][j];
        int back = pos[w * n + u];
        j = (back + 1) % static_cast<int>(rot[w].size());
        u = w;
      }
    }
  }
  return count;
}

}  // namespace

PlaneGraph::PlaneGraph(std::vector<std::vector<VertexId>> rotation) : rot_(std::move(rotation)) {
  const int n = vertex_count();
  if (n == 0) throw GraphError("graph has no vertices");
  pos_.assign(static_cast<std::size_t>(n) * n, -1);
  int darts = 0;
  for (VertexId v = 0; v < n; ++v) {
    for (int i = 0; i < degree(v); ++i) {
      VertexId w = rot_[v][i];
      if (w < 0 || w >= n) throw GraphError("neighbour id out of range at vertex " + std::to_string(v + 1));
      if (w == v) throw GraphError("loop at vertex " + std::to_string(v + 1));
      if (pos_[v * n + w] >= 0)
        throw GraphError("repeated neighbour " + std::to_string(w + 1) + " at vertex " +
                         std::to_string(v + 1));
      pos_[v * n + w] = i;
      ++darts;
    }
  }
  for (VertexId v = 0; v < n; ++v)
    for (VertexId w : rot_[v])
      if (pos_[w * n + v] < 0)
        throw GraphError("asymmetric adjacency between " + std::to_string(v + 1) + " and " +
                         std::to_string(w + 1));
  edges_ = darts / 2;
  if (!connected_without(*this, -1, -1)) throw GraphError("graph is disconnected");
  faces_ = count_faces(rot_, pos_, n);
  if (n - edges_ + faces_ != 2)
    throw GraphError("rotation system violates Euler's relation (V-E+F=" +
                     std::to_string(n - edges_ + faces_) + ")");
}

PlaneGraph PlaneGraph::mirrored() const {
  auto rot = rot_;
  for (auto& r : rot) std::reverse(r.begin(), r.end());
  return PlaneGraph(std::move(rot));
}

PlaneGraph PlaneGraph::relabeled(std::span<const VertexId> perm) const {
  std::vector<std::vector<VertexId>> rot(rot_.size());
  for (VertexId v = 0; v < vertex_count(); ++v) {
    auto& r = rot[perm[v]];
    r.reserve(rot_[v].size());
    for (VertexId w : rot_[v]) r.push_back(perm[w]);
  }
  return PlaneGraph(std::move(rot));
}

PlaneGraph PlaneGraph::without_vertex(VertexId x) const {
  std::vector<std::vector<VertexId>> rot;
  rot.reserve(rot_.size() - 1);
  auto renum = [x](VertexId w) { return w > x ? w - 1 : w; };
  for (VertexId v = 0; v < vertex_count(); ++v) {
    if (v == x) continue;
    std::vector<VertexId> r;
    for (VertexId w : rot_[v])
      if (w != x) r.push_back(renum(w));
    rot.push_back(std::move(r));
  }
  return PlaneGraph(std::move(rot));
}

const char* to_string(FaceKind kind) {
  switch (kind) {
    case FaceKind::Apex: return "apex";
    case FaceKind::Corner: return "corner";
    case FaceKind::Side: return "side";
    case FaceKind::Interior: return "interior";
    case FaceKind::Unclassified: break;
  }
  return "unclassified";
}

FaceIndex::FaceIndex(const PlaneGraph& g) {
  const int n = g.vertex_count();
  corner_face.resize(n);
  for (VertexId v = 0; v < n; ++v) corner_face[v].assign(g.degree(v), -1);
  // corner (v, m) is entered by the dart rotation(v)[m] -> v
  for (VertexId v = 0; v < n; ++v) {
    for (int m = 0; m < g.degree(v); ++m) {
      if (corner_face[v][m] >= 0) continue;
      Face f;
      const FaceId id = static_cast<FaceId>(faces.size());
      VertexId from = g.rotation(v)[m], at = v;
      while (true) {
        int mm = g.position(at, from);
        if (corner_face[at][mm] >= 0) break;
        corner_face[at][mm] = id;
        f.boundary.push_back(at);
        VertexId to = g.next_around(at, from);
        from = at;
        at = to;
      }
      faces.push_back(std::move(f));
    }
  }
}

std::vector<Face> faces(const PlaneGraph& g) { return FaceIndex(g).faces; }

// ---------------------------------------------------------------------------

std::vector<PlaneGraph> parse_planar_code(std::span<const std::uint8_t> bytes) {
  std::size_t at = 0;
  if (bytes.size() >= kPlanarCodeHeader.size() &&
      std::equal(kPlanarCodeHeader.begin(), kPlanarCodeHeader.end(), bytes.begin()))
    at = kPlanarCodeHeader.size();
  std::vector<PlaneGraph> out;
  while (at < bytes.size()) {
    const std::size_t graph_start = at;
    const int n = bytes[at++];
    if (n == 0) throw ParseError("vertex count 0 (16-bit planar_code is not supported)", graph_start);
    std::vector<std::vector<VertexId>> rot(n);
    for (int v = 0; v < n; ++v) {
      while (true) {
        if (at >= bytes.size()) throw ParseError("truncated stream", at);
        const int w = bytes[at];
        if (w == 0) {
          ++at;
          break;
        }
        if (w > n) throw ParseError("vertex id " + std::to_string(w) + " out of range [1," + std::to_string(n) + "]", at);
        rot[v].push_back(w - 1);
        ++at;
      }
    }
    try {
      out.emplace_back(std::move(rot));
    } catch (const GraphError& e) {
      throw ParseError(std::string("invalid graph: ") + e.what(), graph_start);
    }
  }
  return out;
}

std::vector<PlaneGraph> read_planar_code_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_planar_code(bytes);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<std::uint8_t> write_planar_code(std::span<const PlaneGraph> graphs) {
  std::vector<std::uint8_t> out(kPlanarCodeHeader.begin(), kPlanarCodeHeader.end());
  for (const auto& g : graphs) {
    if (g.vertex_count() > 255) throw GraphError("planar_code writer supports at most 255 vertices");
    out.push_back(static_cast<std::uint8_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (VertexId w : g.rotation(v)) out.push_back(static_cast<std::uint8_t>(w + 1));
      out.push_back(0);
    }
  }
  return out;
}

PlaneGraph parse_graph_text(std::string_view line) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : line) {
    if (ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.empty()) throw GraphError("empty graph text");
  int n = 0;
  {
    std::istringstream is(parts[0]);
    if (!(is >> n) || n <= 0) throw GraphError("bad vertex count in graph text");
  }
  if (static_cast<int>(parts.size()) != n + 1)
    throw GraphError("expected " + std::to_string(n) + " rotation lists, got " +
                     std::to_string(parts.size() - 1));
  std::vector<std::vector<VertexId>> rot(n);
  for (int v = 0; v < n; ++v) {
    std::istringstream is(parts[v + 1]);
    int w;
    while (is >> w) {
      if (w < 1 || w > n) throw GraphError("vertex id " + std::to_string(w) + " out of range");
      rot[v].push_back(w - 1);
    }
  }
  return PlaneGraph(std::move(rot));
}

std::string to_text(const PlaneGraph& g) {
  std::string s = std::to_string(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    s += ";";
    for (std::size_t i = 0; i < g.rotation(v).size(); ++i) {
      s += (i == 0 ? " " : " ");
      s += std::to_string(g.rotation(v)[i] + 1);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

/// BFS code from dart v->w. Returns false as soon as the code is known to be
/// lexicographically larger than `best` (when best is non-empty).
class CodeBuilder {
 public:
  explicit CodeBuilder(const PlaneGraph& g)
      : g_(g), number_(g.vertex_count()), first_(g.vertex_count()), order_(g.vertex_count()) {}

  // Returns -1 if code < best, 0 if equal, 1 if greater (aborted early).
  int build(VertexId v, VertexId w, bool reverse, const CanonicalCode& best, CanonicalCode& out) {
    const int n = g_.vertex_count();
    std::fill(number_.begin(), number_.end(), 0);
    out.clear();
    int next = 1, head = 0, tail = 0;
    number_[v] = next++;
    first_[v] = w;
    order_[tail++] = v;
    int cmp = best.empty() ? -1 : 0;
    auto emit = [&](std::uint8_t b) {
      if (cmp == 0) {
        const std::size_t i = out.size();
        if (b < best[i]) cmp = -1;
        else if (b > best[i]) cmp = 1;
      }
      out.push_back(b);
    };
    while (head < tail) {
      VertexId x = order_[head++];
      const auto& r = g_.rotation(x);
      const int d = static_cast<int>(r.size());
      const int p = g_.position(x, first_[x]);
      for (int i = 0; i < d; ++i) {
        VertexId y = r[reverse ? (p - i + d) % d : (p + i) % d];
        if (number_[y] == 0) {
          number_[y] = next++;
          first_[y] = x;
          order_[tail++] = y;
        }
        emit(static_cast<std::uint8_t>(number_[y]));
      }
      emit(0);
      if (cmp > 0) return 1;
    }
    (void)n;
    return cmp;
  }

  const std::vector<int>& numbering() const { return number_; }

 private:
  const PlaneGraph& g_;
  std::vector<int> number_;
  std::vector<VertexId> first_;
  std::vector<VertexId> order_;
};

struct BestStart {
  VertexId v = -1, w = -1;
  bool reverse = false;
  CanonicalCode code;
};

BestStart find_best_start(const PlaneGraph& g, VertexId root) {
  CodeBuilder builder(g);
  BestStart best;
  CanonicalCode scratch;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (root >= 0 && v != root) continue;
    for (VertexId w : g.rotation(v)) {
      for (bool reverse : {false, true}) {
        if (builder.build(v, w, reverse, best.code, scratch) < 0) {
          best.v = v;
          best.w = w;
          best.reverse = reverse;
          best.code.swap(scratch);
        }
      }
    }
  }
  return best;
}

}  // namespace

CanonicalCode canonical_code(const PlaneGraph& g, VertexId root) {
  return find_best_start(g, root).code;
}

CanonicalForm canonical_form(const PlaneGraph& g, VertexId root) {
  BestStart best = find_best_start(g, root);
  CodeBuilder builder(g);
  CanonicalCode code;
  builder.build(best.v, best.w, best.reverse, {}, code);
  std::vector<VertexId> label(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) label[v] = builder.numbering()[v] - 1;
  PlaneGraph h = g.relabeled(label);
  if (best.reverse) h = h.mirrored();
  return CanonicalForm{std::move(best.code), std::move(h), std::move(label)};
}

std::string to_hex(const CanonicalCode& code) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(code.size() * 2);
  for (auto b : code) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

bool check_three_connected(const PlaneGraph& g) {
  const int n = g.vertex_count();
  if (n < 4) return false;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (!connected_without(g, a, b)) return false;
  return true;
}

// ---------------------------------------------------------------------------

bool CandidatePair::is_side(VertexId v) const { return side_index(v) >= 0; }

int CandidatePair::side_index(VertexId v) const {
  for (int k = 0; k < 4; ++k)
    if (sides[k] == v) return k;
  return -1;
}

namespace {

/// Inserts a new vertex into the face traversed s[0] -> s[1] -> s[2] -> s[3].
PlaneGraph add_apex(const PlaneGraph& g, const std::array<VertexId, 4>& s) {
  const int n = g.vertex_count();
  std::vector<std::vector<VertexId>> rot(n + 1);
  for (VertexId v = 0; v < n; ++v) rot[v] = g.rotation(v);
  for (int k = 0; k < 4; ++k) {
    VertexId prev = s[(k + 3) % 4], cur = s[k];
    auto& r = rot[cur];
    auto it = std::find(r.begin(), r.end(), prev);
    r.insert(it + 1, n);
  }
  rot[n] = {s[3], s[2], s[1], s[0]};
  return PlaneGraph(std::move(rot));
}

/// Traversal order of the face whose vertex set is exactly `sides`, or empty.
std::vector<VertexId> face_with_vertices(const PlaneGraph& g, std::array<VertexId, 4> sides) {
  std::sort(sides.begin(), sides.end());
  for (const auto& f : faces(g)) {
    if (f.boundary.size() != 4) continue;
    auto b = f.boundary;
    std::sort(b.begin(), b.end());
    if (std::equal(b.begin(), b.end(), sides.begin())) return f.boundary;
  }
  return {};
}

std::array<VertexId, 4> rotate_to_min(const std::vector<VertexId>& cyc) {
  auto it = std::min_element(cyc.begin(), cyc.end());
  std::array<VertexId, 4> s{};
  const auto start = it - cyc.begin();
  for (int k = 0; k < 4; ++k) s[k] = cyc[(start + k) % 4];
  return s;
}

/// Candidate from an apexed graph with apex `s0`, in canonical form.
CandidatePair from_apexed(const PlaneGraph& g, VertexId s0,
                          std::vector<VertexId>* label = nullptr) {
  CanonicalForm cf = canonical_form(g, s0);
  if (label) {
    label->assign(g.vertex_count() - 1, -1);
    for (VertexId v = 0, j = 0; v < g.vertex_count(); ++v)
      if (v != s0) (*label)[j++] = cf.label[v] - 1;
  }
  // root is numbered first
  PlaneGraph tiling_graph = cf.graph.without_vertex(0);
  std::array<VertexId, 4> nb{};
  for (int k = 0; k < 4; ++k) nb[k] = cf.graph.rotation(0)[k] - 1;
  auto cyc = face_with_vertices(tiling_graph, nb);
  if (cyc.empty()) throw GraphError("side vertices do not bound a face");
  return CandidatePair{std::move(tiling_graph), rotate_to_min(cyc), std::move(cf.code)};
}

}  // namespace

PlaneGraph apexed(const CandidatePair& c) { return add_apex(c.graph, c.sides); }

CandidatePair make_candidate(const PlaneGraph& g, std::array<VertexId, 4> sides,
                             std::vector<VertexId>* label) {
  auto cyc = face_with_vertices(g, sides);
  if (cyc.empty()) throw GraphError("side vertices do not bound a face");
  std::array<VertexId, 4> s{};
  std::copy(cyc.begin(), cyc.end(), s.begin());
  PlaneGraph a = add_apex(g, s);
  return from_apexed(a, g.vertex_count(), label);
}

std::vector<CandidatePair> extract_candidates(const PlaneGraph& g, int min_tile_degree) {
  std::vector<CandidatePair> out;
  std::set<CanonicalCode> seen;
  for (VertexId s0 = 0; s0 < g.vertex_count(); ++s0) {
    if (g.degree(s0) != 4) continue;
    const auto& w = g.rotation(s0);
    bool cycle = true;
    for (int k = 0; k < 4; ++k) cycle = cycle && g.adjacent(w[k], w[(k + 1) % 4]);
    if (!cycle || g.adjacent(w[0], w[2]) || g.adjacent(w[1], w[3])) continue;
    bool degrees_ok = true;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (v == s0 || std::find(w.begin(), w.end(), v) != w.end()) continue;
      if (g.degree(v) < min_tile_degree) degrees_ok = false;
    }
    if (!degrees_ok) continue;
    PlaneGraph rest = g.without_vertex(s0);
    if (rest.vertex_count() > 4 && !check_three_connected(rest)) continue;
    CandidatePair c = from_apexed(g, s0);
    if (seen.insert(c.code).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const CandidatePair& a, const CandidatePair& b) { return a.code < b.code; });
  return out;
}

std::vector<Face> classified_faces(const CandidatePair& c) { return classified_face_index(c).faces; }

FaceIndex classified_face_index(const CandidatePair& c) {
  FaceIndex index(c.graph);
  for (auto& f : index.faces) {
    std::vector<int> ks;
    for (VertexId v : f.boundary) {
      int k = c.side_index(v);
      if (k >= 0) ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    if (ks.size() == 4 && f.boundary.size() == 4) {
      f.kind = FaceKind::Apex;
    } else if (ks.size() == 2 && ((ks[1] - ks[0]) == 1 || (ks[1] - ks[0]) == 3)) {
      f.kind = FaceKind::Corner;
    } else if (ks.size() == 1) {
      f.kind = FaceKind::Side;
    } else if (ks.empty()) {
      f.kind = FaceKind::Interior;
    } else {
      f.kind = FaceKind::Unclassified;
    }
  }
  return index;
}

}  // namespace tiling

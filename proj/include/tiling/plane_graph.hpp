#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tiling {

using VertexId = int;
using FaceId = int;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by the planar_code reader; `offset` is the byte position at which
/// the problem was detected.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

/// Embedded planar graph given by a rotation system: for every vertex the
/// cyclic list of its neighbours. Immutable once built; the constructor
/// rejects loops, repeated neighbours, asymmetric adjacency and rotation
/// systems whose face count violates Euler's relation.
class PlaneGraph {
 public:
  PlaneGraph() = default;
  explicit PlaneGraph(std::vector<std::vector<VertexId>> rotation);

  int vertex_count() const { return static_cast<int>(rot_.size()); }
  int edge_count() const { return edges_; }
  int face_count() const { return faces_; }
  int degree(VertexId v) const { return static_cast<int>(rot_[v].size()); }
  const std::vector<VertexId>& rotation(VertexId v) const { return rot_[v]; }

  /// Index of w in rotation(v), or -1 when not adjacent.
  int position(VertexId v, VertexId w) const { return pos_[v * stride() + w]; }
  bool adjacent(VertexId v, VertexId w) const { return position(v, w) >= 0; }

  /// Neighbour following w in the rotation of v.
  VertexId next_around(VertexId v, VertexId w) const {
    const auto& r = rot_[v];
    return r[(position(v, w) + 1) % r.size()];
  }

  /// All rotations reversed.
  PlaneGraph mirrored() const;
  /// Vertex v becomes perm[v].
  PlaneGraph relabeled(std::span<const VertexId> perm) const;
  /// Removes v and renumbers the remaining vertices in increasing order.
  PlaneGraph without_vertex(VertexId v) const;

  friend bool operator==(const PlaneGraph&, const PlaneGraph&) = default;

 private:
  int stride() const { return vertex_count(); }

  std::vector<std::vector<VertexId>> rot_;
  std::vector<int> pos_;
  int edges_ = 0;
  int faces_ = 0;
};

/// Face kinds relative to the distinguished 4-cycle of side vertices.
enum class FaceKind { Apex, Corner, Side, Interior, Unclassified };

const char* to_string(FaceKind kind);

struct Face {
  std::vector<VertexId> boundary;
  FaceKind kind = FaceKind::Unclassified;
};

/// Face traversal: dart u->v is followed by v->next_around(v, u). Every dart
/// lies on exactly one returned face.
std::vector<Face> faces(const PlaneGraph& g);

/// Face containing the angle of v between rotation(v)[m] and
/// rotation(v)[m+1], as an index into faces(g).
struct FaceIndex {
  explicit FaceIndex(const PlaneGraph& g);

  std::vector<Face> faces;
  /// corner_face[v][m]
  std::vector<std::vector<FaceId>> corner_face;
};

// ---------------------------------------------------------------------------
// Serialization

/// Reads a planar_code stream (optional ">>planar_code<<" header).
std::vector<PlaneGraph> parse_planar_code(std::span<const std::uint8_t> bytes);
std::vector<PlaneGraph> read_planar_code_file(const std::string& path);
std::vector<std::uint8_t> write_planar_code(std::span<const PlaneGraph> graphs);

/// Companion text format: "N; r_1; ...; r_N" with 1-based space separated
/// rotation lists.
PlaneGraph parse_graph_text(std::string_view line);
std::string to_text(const PlaneGraph& g);

// ---------------------------------------------------------------------------
// Isomorphism

using CanonicalCode = std::vector<std::uint8_t>;

/// Minimum BFS code over every starting dart (only darts leaving `root` when
/// root >= 0) and both orientations. Equal codes iff the graphs are
/// isomorphic as plane graphs up to reflection (and root-preserving).
CanonicalCode canonical_code(const PlaneGraph& g, VertexId root = -1);

struct CanonicalForm {
  CanonicalCode code;
  PlaneGraph graph;              // relabeled (and possibly mirrored) copy
  std::vector<VertexId> label;   // label[old] = new
};
CanonicalForm canonical_form(const PlaneGraph& g, VertexId root = -1);

std::string to_hex(const CanonicalCode& code);

bool check_three_connected(const PlaneGraph& g);

// ---------------------------------------------------------------------------
// Candidate pairs

/// A tiling graph with its four side vertices S1..S4, listed in the order the
/// apex face is traversed. The graph is stored canonically relabeled, so two
/// isomorphic pairs are equal as values.
struct CandidatePair {
  PlaneGraph graph;
  std::array<VertexId, 4> sides{};
  CanonicalCode code;  // rooted code of the apexed graph

  int tile_count() const { return graph.vertex_count() - 4; }
  bool is_side(VertexId v) const;
  /// 0..3 for a side vertex, -1 for a tile.
  int side_index(VertexId v) const;
  std::string id() const { return to_hex(code); }
};

/// Graph with an apex vertex joined to the sides, used for rooted isomorphism.
PlaneGraph apexed(const CandidatePair& c);

/// Every candidate obtained by removing an admissible degree-4 vertex S0.
/// Tiles of degree below `min_tile_degree` and non-3-connected remainders are
/// skipped; output is deduplicated and sorted by code.
std::vector<CandidatePair> extract_candidates(const PlaneGraph& g, int min_tile_degree);

/// Builds a candidate directly from a tiling graph and its side vertices
/// (used for hand-authored fixtures). Throws GraphError if the sides do not
/// bound a face. When `label` is given it receives the new id of every
/// original vertex.
CandidatePair make_candidate(const PlaneGraph& g, std::array<VertexId, 4> sides,
                             std::vector<VertexId>* label = nullptr);

/// Faces of a candidate classified as apex/corner/side/interior; faces that
/// contain two non-consecutive sides or three sides are left Unclassified.
std::vector<Face> classified_faces(const CandidatePair& c);
/// Same classification, keeping the corner-to-face map.
FaceIndex classified_face_index(const CandidatePair& c);

}  // namespace tiling

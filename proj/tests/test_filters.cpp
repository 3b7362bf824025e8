#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "tiling/equations.hpp"
#include "tiling/filters.hpp"

using namespace tiling;

namespace {

std::vector<CandidatePair> corpus(const std::string& file, int min_degree) {
  std::map<CanonicalCode, CandidatePair> all;
  for (const auto& g : read_planar_code_file(std::string(TILING_DATA_DIR) + "/corpus/" + file))
    for (auto& c : extract_candidates(g, min_degree)) all.emplace(c.code, c);
  std::vector<CandidatePair> out;
  for (auto& [code, c] : all) out.push_back(c);
  return out;
}

// Corner rule straight from the face list: a tile touching two consecutive
// sides must sit on a face that contains both of them.
bool corner_oracle(const CandidatePair& c) {
  const auto fs = faces(c.graph);
  for (int k = 0; k < 4; ++k) {
    const VertexId a = c.sides[k], b = c.sides[(k + 1) % 4];
    for (VertexId t = 0; t < c.graph.vertex_count(); ++t) {
      if (c.is_side(t) || !c.graph.adjacent(t, a) || !c.graph.adjacent(t, b)) continue;
      bool found = false;
      for (const Face& f : fs) {
        const auto has = [&](VertexId v) { return std::count(f.boundary.begin(), f.boundary.end(), v) > 0; };
        if (has(a) && has(b) && has(t) && f.boundary.size() == 3) found = true;
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("face targets") {
  CHECK(face_target(FaceKind::Corner) == Rational(1, 2));
  CHECK(face_target(FaceKind::Side) == Rational(1));
  CHECK(face_target(FaceKind::Interior) == Rational(2));
  CHECK_THROWS(face_target(FaceKind::Apex));
}

TEST_CASE("vertex rows") {
  auto e = angle_vertex_equation(FaceKind::Interior, {0, 1, kPlain}, 4);
  REQUIRE(e);
  CHECK(e->rhs == Rational(1));
  CHECK(e->terms.size() == 2);
  e = angle_vertex_equation(FaceKind::Interior, {2, 2, 2, 2}, 4);
  REQUIRE(e);
  REQUIRE(e->terms.size() == 1);
  CHECK(e->terms[0].coeff == Rational(4));
  CHECK_FALSE(angle_vertex_equation(FaceKind::Interior, {kPlain, kPlain}, 4));
  CHECK_FALSE(angle_vertex_equation(FaceKind::Side, {kPlain}, 4));
  CHECK_THROWS(angle_vertex_equation(FaceKind::Corner, {5}, 4));
  const Equation sum = angle_sum_equation(5);
  CHECK(sum.rhs == Rational(3));
  CHECK(sum.terms.size() == 5);
}

TEST_CASE("strips are cut by the opposite sides rule in the square only") {
  const CandidatePair c = make_candidate(fixture::strips(3), {0, 1, 2, 3});
  CHECK(face_sanity_filter(c).keep);
  CHECK(corner_filter(c).keep);
  const FilterVerdict v = opposite_sides_filter(c, 4, LabelMode::Square);
  CHECK_FALSE(v.keep);
  CHECK(v.rule == "opposite-sides");
  CHECK(opposite_sides_filter(c, 4, LabelMode::Rectangle).keep);
  CHECK(opposite_sides_filter(c, 5, LabelMode::Square).keep);
  CHECK(degree_filter(c, 4).keep);
  CHECK(degree_filter(c, 5).rule == "degree");
  CHECK(apply_filters(c, 4, LabelMode::Rectangle).keep);
}

TEST_CASE("equiangular triangle rules") {
  const CandidatePair strips = make_candidate(fixture::strips(3), {0, 1, 2, 3});
  const EquiangularFilterResult r = equiangular_filters(strips, 3);
  CHECK_FALSE(r.verdict.keep);
  CHECK(r.verdict.rule == "equiangular-opposite-sides");
  CHECK(r.constraints.empty());

  const CandidatePair one = make_candidate(fixture::strips(1), {0, 1, 2, 3});
  const EquiangularFilterResult q = equiangular_filters(one, 4);
  CHECK(q.verdict.keep);
  REQUIRE(q.constraints.size() == 1);
  CHECK(q.constraints[0].tile == -1);
  CHECK(q.constraints[0].bound.lo == Rational(1, 4));
  CHECK(q.constraints[0].rule == "equiangular-three-sides");
}

TEST_CASE("equiangular constraints stay inside the acute range") {
  for (const auto& c : corpus("pc3m3_v8.pc", 3)) {
    const auto r = equiangular_filters(c, 3);
    for (const auto& ac : r.constraints) {
      CHECK(ac.tile >= 0);
      CHECK(!c.is_side(ac.tile));
      CHECK(ac.bound.hi <= Rational(1, 2));
    }
  }
}

TEST_CASE("corner filter agrees with the face-list oracle") {
  int discarded = 0, total = 0;
  for (const char* file : {"pc3m4_v10.pc", "pc3m3_v8.pc", "pc3m4_v8.pc"})
    for (const auto& c : corpus(file, 3)) {
      ++total;
      if (face_sanity_filter(c).keep == false) continue;
      const bool keep = corner_filter(c).keep;
      CHECK(keep == corner_oracle(c));
      discarded += !keep;
    }
  CHECK(total > 100);
  CHECK(discarded > 0);
}

TEST_CASE("known tilings pass the filters that apply to them") {
  const CandidatePair trap = make_candidate(fixture::trapezoids(), {0, 1, 2, 3});
  CHECK(apply_filters(trap, 4, LabelMode::Rectangle).keep);
  CHECK(apply_filters(trap, 4, LabelMode::Square).keep);
  const CandidatePair two = make_candidate(fixture::two_trapezoids(), {0, 1, 2, 3});
  CHECK(apply_filters(two, 4, LabelMode::Rectangle).keep);
}

TEST_CASE("filter tallies on the n=5 corpus") {
  // frozen after the corner oracle above and the search results agreed
  std::map<std::string, int> square, rect;
  const auto cands = corpus("pc3m4_v10.pc", 4);
  CHECK(cands.size() == 107);
  for (const auto& c : cands) {
    ++square[apply_filters(c, 4, LabelMode::Square).rule];
    ++rect[apply_filters(c, 4, LabelMode::Rectangle).rule];
  }
  CHECK(square["corner"] == 9);
  CHECK(square["opposite-sides"] == 19);
  CHECK(square[""] == 79);
  CHECK(rect["corner"] == 9);
  CHECK(rect["opposite-sides"] == 0);
}

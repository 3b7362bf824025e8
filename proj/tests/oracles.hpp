#pragma once

// Deliberately naive reference implementations used to cross-check the
// library. Nothing here shares code with src/.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include "tiling/plane_graph.hpp"
#include "tiling/rational.hpp"

namespace oracle {

using tiling::PlaneGraph;
using tiling::Rational;

/// Plane-graph isomorphism by trying every degree- and adjacency-compatible
/// bijection, then comparing rotations either directly or all reversed.
inline bool isomorphic(const PlaneGraph& g, const PlaneGraph& h, int root_g = -1, int root_h = -1) {
  const int n = g.vertex_count();
  if (n != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  std::vector<int> phi(n, -1);
  std::vector<bool> used(n, false);

  auto cyclic_equal = [](const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t d = a.size();
    for (std::size_t s = 0; s < d; ++s) {
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) ok = a[i] == b[(i + s) % d];
      if (ok) return true;
    }
    return false;
  };
  auto rotations_match = [&](bool reversed) {
    for (int v = 0; v < n; ++v) {
      std::vector<int> img;
      for (int w : g.rotation(v)) img.push_back(phi[w]);
      if (reversed) std::reverse(img.begin(), img.end());
      if (!cyclic_equal(img, h.rotation(phi[v]))) return false;
    }
    return true;
  };
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return rotations_match(false) || rotations_match(true);
    for (int w = 0; w < n; ++w) {
      if (used[w] || g.degree(i) != h.degree(w)) continue;
      if (root_g >= 0 && ((i == root_g) != (w == root_h))) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = g.adjacent(i, j) == h.adjacent(w, phi[j]);
      if (!ok) continue;
      phi[i] = w;
      used[w] = true;
      if (rec(i + 1)) return true;
      used[w] = false;
    }
    phi[i] = -1;
    return false;
  };
  return rec(0);
}

// ---------------------------------------------------------------------------
// Abstract graphs on at most 8 vertices as adjacency bitmasks.

struct SmallGraph {
  int n = 0;
  std::vector<std::uint32_t> adj;

  bool edge(int u, int v) const { return (adj[u] >> v) & 1u; }
  int degree(int v) const { return __builtin_popcount(adj[v]); }
};

/// Canonical upper-triangle bitstring: maximum over all vertex orders that
/// sort vertices by degree.
inline std::uint64_t small_canonical(const SmallGraph& g) {
  std::vector<int> order(g.n);
  for (int i = 0; i < g.n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
  std::uint64_t best = 0;
  bool have = false;
  // permute within equal-degree blocks only
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < g.n;) {
    int j = i;
    while (j < g.n && g.degree(order[j]) == g.degree(order[i])) ++j;
    blocks.push_back({i, j});
    i = j;
  }
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      std::uint64_t code = 0;
      for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) code = (code << 1) | (g.edge(order[i], order[j]) ? 1u : 0u);
      if (!have || code > best) best = code, have = true;
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + lo, order.begin() + hi);
    do rec(b + 1);
    while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(0);
  return best;
}

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;

inline BoostGraph to_boost(const SmallGraph& g) {
  BoostGraph b(g.n);
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (g.edge(u, v)) boost::add_edge(u, v, b);
  auto ei = boost::get(boost::edge_index, b);
  int k = 0;
  for (auto [it, end] = boost::edges(b); it != end; ++it) boost::put(ei, *it, k++);
  return b;
}

inline bool planar(const SmallGraph& g) {
  BoostGraph b = to_boost(g);
  return boost::boyer_myrvold_planarity_test(b);
}

/// A planar embedding of g as a rotation system (Boyer-Myrvold).
inline PlaneGraph embed(const SmallGraph& g) {
  BoostGraph b = to_boost(g);
  using Edge = boost::graph_traits<BoostGraph>::edge_descriptor;
  std::vector<std::vector<Edge>> emb(g.n);
  const bool ok = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = b, boost::boyer_myrvold_params::embedding = &emb[0]);
  if (!ok) throw std::logic_error("not planar");
  std::vector<std::vector<int>> rot(g.n);
  for (int v = 0; v < g.n; ++v)
    for (const Edge& e : emb[v]) {
      const int s = static_cast<int>(boost::source(e, b)), t = static_cast<int>(boost::target(e, b));
      rot[v].push_back(s == v ? t : s);
    }
  return PlaneGraph(std::move(rot));
}

inline bool connected_without(const SmallGraph& g, std::uint32_t removed) {
  int start = -1, alive = 0;
  for (int v = 0; v < g.n; ++v)
    if (!((removed >> v) & 1u)) {
      ++alive;
      if (start < 0) start = v;
    }
  if (alive == 0) return true;
  std::uint32_t seen = 1u << start, frontier = seen;
  while (frontier) {
    std::uint32_t next = 0;
    for (int v = 0; v < g.n; ++v)
      if ((frontier >> v) & 1u) next |= g.adj[v];
    next &= ~seen & ~removed;
    seen |= next;
    frontier = next;
  }
  return __builtin_popcount(seen) == alive;
}

inline bool three_connected(const SmallGraph& g) {
  if (g.n < 4) return false;
  for (int u = 0; u < g.n; ++u)
    for (int v = u; v < g.n; ++v)
      if (!connected_without(g, (1u << u) | (1u << v))) return false;
  return true;
}

/// Every planar graph on exactly `n` vertices up to isomorphism, grown one
/// vertex at a time (induced subgraphs of planar graphs are planar).
inline std::vector<std::vector<SmallGraph>> planar_graphs_up_to(int max_n) {
  std::vector<std::vector<SmallGraph>> by_n(max_n + 1);
  by_n[1].push_back(SmallGraph{1, {0}});
  for (int n = 2; n <= max_n; ++n) {
    std::set<std::uint64_t> seen;
    for (const SmallGraph& base : by_n[n - 1]) {
      for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        SmallGraph g{n, base.adj};
        g.adj.push_back(mask);
        for (int v = 0; v < n - 1; ++v)
          if ((mask >> v) & 1u) g.adj[v] |= 1u << (n - 1);
        if (!planar(g)) continue;
        if (seen.insert(small_canonical(g)).second) by_n[n].push_back(g);
      }
    }
  }
  return by_n;
}

/// Polyhedral graphs (3-connected planar) with the given vertex count and
/// minimum degree, embedded.
inline std::vector<PlaneGraph> polyhedra(const std::vector<SmallGraph>& planar_n, int min_degree) {
  std::vector<PlaneGraph> out;
  for (const SmallGraph& g : planar_n) {
    bool deg = true;
    for (int v = 0; v < g.n; ++v) deg = deg && g.degree(v) >= min_degree;
    if (deg && three_connected(g)) out.push_back(embed(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear algebra over 64-bit rationals by textbook Gauss-Jordan elimination.

/// Returns -1 for inconsistent, otherwise the rank.
inline int gauss_rank(std::vector<std::vector<Rational>> rows, int n) {
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int p = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (!rows[i][col].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[rank]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      const Rational f = rows[i][col] / rows[rank][col];
      for (int j = 0; j <= n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  for (int i = rank; i < static_cast<int>(rows.size()); ++i)
    if (!rows[i][n].is_zero()) return -1;
  return rank;
}

}  // namespace oracle

namespace oracle {

/// One linear inequality  sum a_i x_i  <=  b  (or < b when strict).
struct Ineq {
  std::vector<Rational> a;
  Rational b;
  bool strict = false;
};

/// Fourier-Motzkin elimination: is the system of (strict) inequalities
/// satisfiable over the reals?
inline bool fourier_motzkin(std::vector<Ineq> sys, int n) {
  for (int v = 0; v < n; ++v) {
    std::vector<Ineq> pos, neg, rest;
    for (auto& q : sys) {
      const int s = q.a[v].sign();
      (s > 0 ? pos : s < 0 ? neg : rest).push_back(q);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        // scale so the coefficients of v cancel
        const Rational fp = -q.a[v], fq = p.a[v];
        Ineq r;
        r.a.resize(n);
        for (int j = 0; j < n; ++j) r.a[j] = fp * p.a[j] + fq * q.a[j];
        r.b = fp * p.b + fq * q.b;
        r.strict = p.strict || q.strict;
        rest.push_back(r);
      }
    sys = std::move(rest);
  }
  for (const auto& q : sys) {
    if (q.strict ? !(Rational(0) < q.b) : !(Rational(0) <= q.b)) return false;
  }
  return true;
}

}  // namespace oracle

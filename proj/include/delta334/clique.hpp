#pragma once

// Maximum clique by Bron-Kerbosch with pivoting, run on each vertex's
// later neighbourhood in a degeneracy order so that large sparse graphs
// only ever build small local bitsets.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "delta334/bitset.hpp"
#include "delta334/budget.hpp"
#include "delta334/graph.hpp"

namespace delta334 {

struct CliqueResult {
  std::size_t size = 0;
  std::vector<std::uint32_t> witness;  // sorted vertex indices
  bool exact = true;                   // false: budget ran out, size is a lower bound
  std::uint64_t nodes = 0;
};

// Smallest-last ordering; also returns the degeneracy.
inline std::pair<std::vector<std::uint32_t>, std::size_t> degeneracy_order(const TriangleGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> deg(n);
  std::size_t maxdeg = 0;
  for (std::uint32_t v = 0; v < n; ++v) maxdeg = std::max(maxdeg, deg[v] = g.degree(v));
  std::vector<std::vector<std::uint32_t>> buckets(maxdeg + 1);
  for (std::uint32_t v = 0; v < n; ++v) buckets[deg[v]].push_back(v);
  std::vector<bool> removed(n, false);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  std::size_t degeneracy = 0, low = 0;
  while (order.size() < n) {
    low = std::min(low, maxdeg);
    while (low <= maxdeg && buckets[low].empty()) ++low;
    auto v = buckets[low].back();
    buckets[low].pop_back();
    if (removed[v] || deg[v] != low) continue;  // stale bucket entry
    removed[v] = true;
    degeneracy = std::max(degeneracy, low);
    order.push_back(v);
    for (auto w : g.neighbors(v))
      if (!removed[w]) {
        --deg[w];
        buckets[deg[w]].push_back(w);
        if (deg[w] < low) low = deg[w];
      }
  }
  return {order, degeneracy};
}

inline CliqueResult clique_number(const TriangleGraph& g, const Budget& budget = Budget::unlimited()) {
  CliqueResult best;
  const std::size_t n = g.size();
  if (n == 0) return best;
  best.size = 1;
  best.witness = {0};
  BudgetMeter meter(budget);

  auto [order, degeneracy] = degeneracy_order(g);
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

  std::vector<std::int64_t> local_index(n, -1);
  for (auto v : order) {
    // Later neighbours of v in the degeneracy order.
    std::vector<std::uint32_t> cand;
    for (auto w : g.neighbors(v))
      if (rank[w] > rank[v]) cand.push_back(w);
    if (cand.size() + 1 <= best.size) continue;

    const std::size_t m = cand.size();
    for (std::size_t i = 0; i < m; ++i) local_index[cand[i]] = static_cast<std::int64_t>(i);
    std::vector<VertexSet> adj(m, VertexSet(m));
    for (std::size_t i = 0; i < m; ++i)
      for (auto w : g.neighbors(cand[i]))
        if (local_index[w] >= 0) adj[i].set(static_cast<std::size_t>(local_index[w]));
    for (auto w : cand) local_index[w] = -1;

    std::vector<std::uint32_t> r{v};
    std::function<void(VertexSet)> expand = [&](VertexSet p) {
      if (!meter.tick()) return;
      std::size_t pc = p.count();
      if (pc == 0) {
        if (r.size() > best.size) {
          best.size = r.size();
          best.witness = r;
        }
        return;
      }
      if (r.size() + pc <= best.size) return;
      // Pivot: vertex of P with most neighbours inside P.
      std::size_t pivot = 0, pivot_deg = 0;
      bool have = false;
      p.for_each([&](std::size_t u) {
        std::size_t d = adj[u].intersect_count(p);
        if (!have || d > pivot_deg) {
          pivot = u;
          pivot_deg = d;
          have = true;
        }
      });
      VertexSet branch = p;
      branch.subtract(adj[pivot]);
      std::vector<std::size_t> todo;
      branch.for_each([&](std::size_t u) { todo.push_back(u); });
      for (auto u : todo) {
        if (meter.exhausted()) return;
        if (r.size() + p.count() <= best.size) return;
        r.push_back(cand[u]);
        expand(p & adj[u]);
        r.pop_back();
        p.reset(u);
      }
    };
    VertexSet all(m);
    for (std::size_t i = 0; i < m; ++i) all.set(i);
    expand(all);
    if (meter.exhausted()) break;
  }
  best.exact = !meter.exhausted();
  best.nodes = meter.nodes();
  std::sort(best.witness.begin(), best.witness.end());
  return best;
}

inline bool is_clique(const TriangleGraph& g, const std::vector<std::uint32_t>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (!g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

// Complement graph on the same vertex set (no loops, no labels).
inline TriangleGraph complement(const TriangleGraph& g) {
  std::vector<Edge> e;
  for (std::uint32_t a = 0; a < g.size(); ++a)
    for (std::uint32_t b = a + 1; b < g.size(); ++b)
      if (!g.adjacent(a, b)) e.emplace_back(a, b);
  return TriangleGraph(g.size(), std::move(e));
}

}  // namespace delta334

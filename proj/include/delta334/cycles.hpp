#pragma once

// Cycle structure: girth, Hamiltonian cycles and per-length cycle census.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "delta334/budget.hpp"
#include "delta334/graph.hpp"

namespace delta334 {

// True when `cycle` lists distinct vertices with consecutive (and
// last-to-first) adjacency; length >= 3.
inline bool is_cycle(const TriangleGraph& g, const std::vector<std::uint32_t>& cycle) {
  if (cycle.size() < 3) return false;
  std::vector<std::uint32_t> sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (cycle[i] >= g.size()) return false;
    if (!g.adjacent(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  }
  return true;
}

// Length of a shortest cycle, or nullopt for a forest.
inline std::optional<std::size_t> girth(const TriangleGraph& g) {
  const std::size_t n = g.size();
  for (auto [a, b] : g.edges()) {
    auto na = g.neighbors(a), nb = g.neighbors(b);
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] == nb[j]) return 3;
      if (na[i] < nb[j]) ++i;
      else ++j;
    }
  }
  std::optional<std::size_t> best;
  std::vector<std::int64_t> dist(n), parent(n);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    parent[root] = -1;
    queue.assign(1, root);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      auto u = queue[h];
      if (best && 2 * static_cast<std::size_t>(dist[u]) + 1 >= *best) break;
      for (auto w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != static_cast<std::int64_t>(w)) {
          auto len = static_cast<std::size_t>(dist[u] + dist[w] + 1);
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

struct HamiltonResult {
  enum class Status { kFound, kNone, kUnresolved };
  Status status = Status::kUnresolved;
  std::vector<std::uint32_t> cycle;
  std::uint64_t nodes = 0;
  std::string reason;  // why kNone holds

  std::string status_name() const {
    switch (status) {
      case Status::kFound: return "found";
      case Status::kNone: return "none";
      case Status::kUnresolved: return "unresolved";
    }
    return {};
  }
};

namespace detail {

// Posa rotation-extension with a fixed seed. Returns a Hamiltonian cycle or
// an empty vector.
inline std::vector<std::uint32_t> posa_hamiltonian(const TriangleGraph& g, std::uint64_t seed, std::size_t max_steps) {
  const std::size_t n = g.size();
  if (n < 3) return {};
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> path{static_cast<std::uint32_t>(rng() % n)};
  std::vector<std::int64_t> pos(n, -1);
  pos[path[0]] = 0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto end = path.back();
    auto nb = g.neighbors(end);
    if (nb.empty()) return {};
    if (path.size() == n && g.adjacent(end, path.front())) return path;
    // Extend to an unvisited neighbour when one exists.
    std::vector<std::uint32_t> fresh;
    for (auto w : nb)
      if (pos[w] < 0) fresh.push_back(w);
    if (!fresh.empty()) {
      auto w = fresh[rng() % fresh.size()];
      pos[w] = static_cast<std::int64_t>(path.size());
      path.push_back(w);
      continue;
    }
    // Rotate: pick neighbour path[i], reverse path[i+1..end].
    auto w = nb[rng() % nb.size()];
    auto i = static_cast<std::size_t>(pos[w]);
    if (i + 1 >= path.size()) continue;
    std::reverse(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end());
    for (std::size_t k = i + 1; k < path.size(); ++k) pos[path[k]] = static_cast<std::int64_t>(k);
  }
  return {};
}

}  // namespace detail

// Hamiltonian cycle: rotation heuristic first, then exhaustive backtracking
// from vertex 0 with fewest-onward-neighbours branching. Exhaustion proves
// that no Hamiltonian cycle exists.
inline HamiltonResult hamiltonian_cycle(const TriangleGraph& g, const Budget& budget = Budget::nodes(50'000'000)) {
  HamiltonResult r;
  const std::size_t n = g.size();
  if (n < 3) {
    r.status = HamiltonResult::Status::kNone;
    r.reason = "fewer than 3 vertices";
    return r;
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (g.degree(v) < 2) {
      r.status = HamiltonResult::Status::kNone;
      r.reason = "vertex " + std::to_string(v) + " has degree below 2";
      return r;
    }
  {
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> q{0};
    seen[0] = true;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (auto w : g.neighbors(q[h]))
        if (!seen[w]) {
          seen[w] = true;
          q.push_back(w);
        }
    if (q.size() != n) {
      r.status = HamiltonResult::Status::kNone;
      r.reason = "graph is disconnected";
      return r;
    }
  }
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto c = detail::posa_hamiltonian(g, seed, 50 * n * n);
    if (!c.empty()) {
      r.status = HamiltonResult::Status::kFound;
      r.cycle = std::move(c);
      return r;
    }
  }

  BudgetMeter meter(budget);
  std::vector<bool> visited(n, false);
  std::vector<std::size_t> free_deg(n);
  for (std::uint32_t v = 0; v < n; ++v) free_deg[v] = g.degree(v);
  std::vector<std::uint32_t> path;
  const std::uint32_t start = 0;

  auto visit = [&](std::uint32_t v) {
    visited[v] = true;
    path.push_back(v);
    for (auto w : g.neighbors(v)) --free_deg[w];
  };
  auto unvisit = [&](std::uint32_t v) {
    visited[v] = false;
    path.pop_back();
    for (auto w : g.neighbors(v)) ++free_deg[w];
  };
  // Every unvisited vertex still needs two usable neighbours.
  auto feasible = [&](std::uint32_t end) {
    for (auto w : g.neighbors(end))
      if (!visited[w] && free_deg[w] + 1 + (g.adjacent(w, start) ? 1 : 0) < 2) return false;
    if (path.size() >= 2)
      for (auto w : g.neighbors(path[path.size() - 2]))
        if (!visited[w] && free_deg[w] + (g.adjacent(w, end) ? 1 : 0) + (g.adjacent(w, start) ? 1 : 0) < 2)
          return false;
    return true;
  };

  std::function<bool()> extend = [&]() -> bool {
    if (!meter.tick()) return false;
    auto end = path.back();
    if (path.size() == n) return g.adjacent(end, start);
    std::vector<std::uint32_t> cand;
    for (auto w : g.neighbors(end))
      if (!visited[w]) cand.push_back(w);
    std::stable_sort(cand.begin(), cand.end(), [&](auto a, auto b) { return free_deg[a] < free_deg[b]; });
    for (auto w : cand) {
      visit(w);
      if (feasible(w) && extend()) return true;
      unvisit(w);
      if (meter.exhausted()) return false;
    }
    return false;
  };
  visit(start);
  bool found = extend();
  r.nodes = meter.nodes();
  if (found) {
    r.status = HamiltonResult::Status::kFound;
    r.cycle = path;
  } else if (meter.exhausted()) {
    r.status = HamiltonResult::Status::kUnresolved;
  } else {
    r.status = HamiltonResult::Status::kNone;
    r.reason = "exhaustive search";
  }
  return r;
}

struct CycleLengthStatus {
  enum class Status { kFound, kAbsent, kUnresolved };
  std::size_t length = 0;
  Status status = Status::kUnresolved;
  std::vector<std::uint32_t> cycle;  // witness when found
  std::string proof;                 // "bipartite" or "exhaustive search" when absent

  std::string status_name() const {
    switch (status) {
      case Status::kFound: return "found";
      case Status::kAbsent: return "absent";
      case Status::kUnresolved: return "unresolved";
    }
    return {};
  }
};

// Absence proofs by exhaustion are only attempted up to this size.
inline constexpr std::size_t kCycleAbsenceProofLimit = 64;

namespace detail {

// Cycle with exactly `len` vertices whose smallest vertex is the start.
inline std::vector<std::uint32_t> find_cycle_of_length(const TriangleGraph& g, std::size_t len, BudgetMeter& meter) {
  const std::size_t n = g.size();
  std::vector<bool> on_path(n, false);
  std::vector<std::uint32_t> path;
  std::vector<std::int64_t> dist(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    // Distances back to s inside vertices >= s bound the remaining walk.
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::vector<std::uint32_t> q{s};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (auto w : g.neighbors(q[h]))
        if (w > s && dist[w] < 0) {
          dist[w] = dist[q[h]] + 1;
          q.push_back(w);
        }
    std::function<bool()> dfs = [&]() -> bool {
      if (!meter.tick()) return false;
      auto end = path.back();
      if (path.size() == len) return g.adjacent(end, s);
      for (auto w : g.neighbors(end)) {
        if (w <= s || on_path[w] || dist[w] < 0) continue;
        // After w the path has size+1 vertices; closing needs len-size-1 more steps.
        if (static_cast<std::size_t>(dist[w]) > len - path.size()) continue;
        on_path[w] = true;
        path.push_back(w);
        if (dfs()) return true;
        path.pop_back();
        on_path[w] = false;
        if (meter.exhausted()) return false;
      }
      return false;
    };
    path.assign(1, s);
    on_path[s] = true;
    bool ok = dfs();
    on_path[s] = false;
    if (ok) return path;
    for (auto v : path) on_path[v] = false;
    path.clear();
    if (meter.exhausted()) return {};
  }
  return {};
}

inline bool two_colorable(const TriangleGraph& g) {
  std::vector<int> side(g.size(), -1);
  for (std::uint32_t s = 0; s < g.size(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<std::uint32_t> q{s};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (auto w : g.neighbors(q[h])) {
        if (side[w] < 0) {
          side[w] = 1 - side[q[h]];
          q.push_back(w);
        } else if (side[w] == side[q[h]]) {
          return false;
        }
      }
  }
  return true;
}

}  // namespace detail

// For each length in [min_len, max_len]: a witness cycle, a proof of
// absence, or unresolved. Lengths are searched longest first; a Hamiltonian
// cycle and its chords seed many lengths before any search.
inline std::vector<CycleLengthStatus> cycle_census(const TriangleGraph& g, std::size_t min_len, std::size_t max_len,
                                                   std::uint64_t nodes_per_length = 2'000'000) {
  const std::size_t n = g.size();
  min_len = std::max<std::size_t>(min_len, 3);
  max_len = std::min(max_len, n);
  std::vector<CycleLengthStatus> out;
  if (min_len > max_len) return out;
  for (std::size_t L = min_len; L <= max_len; ++L) out.push_back({L, CycleLengthStatus::Status::kUnresolved, {}, {}});
  auto slot = [&](std::size_t L) -> CycleLengthStatus& { return out[L - min_len]; };

  bool bipartite = detail::two_colorable(g);
  if (bipartite)
    for (auto& s : out)
      if (s.length % 2 == 1) {
        s.status = CycleLengthStatus::Status::kAbsent;
        s.proof = "bipartite";
      }

  // Chords of a Hamiltonian cycle c split it into two shorter cycles.
  if (n >= 3 && max_len >= 3) {
    HamiltonResult ham = hamiltonian_cycle(g, Budget::nodes(nodes_per_length));
    if (ham.status == HamiltonResult::Status::kFound) {
      const auto& c = ham.cycle;
      if (n <= max_len && n >= min_len) slot(n) = {n, CycleLengthStatus::Status::kFound, c, {}};
      std::vector<std::int64_t> pos(n);
      for (std::size_t i = 0; i < n; ++i) pos[c[i]] = static_cast<std::int64_t>(i);
      for (auto [a, b] : g.edges()) {
        auto i = static_cast<std::size_t>(std::min(pos[a], pos[b]));
        auto j = static_cast<std::size_t>(std::max(pos[a], pos[b]));
        if (j - i == 1 || (i == 0 && j == n - 1)) continue;
        std::size_t inner = j - i + 1;
        if (inner >= min_len && inner <= max_len && slot(inner).status != CycleLengthStatus::Status::kFound)
          slot(inner) = {inner, CycleLengthStatus::Status::kFound, {c.begin() + static_cast<std::ptrdiff_t>(i), c.begin() + static_cast<std::ptrdiff_t>(j) + 1}, {}};
        std::size_t outer = n - (j - i) + 1;
        if (outer >= min_len && outer <= max_len && slot(outer).status != CycleLengthStatus::Status::kFound) {
          std::vector<std::uint32_t> cyc(c.begin() + static_cast<std::ptrdiff_t>(j), c.end());
          cyc.insert(cyc.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i) + 1);
          slot(outer) = {outer, CycleLengthStatus::Status::kFound, std::move(cyc), {}};
        }
      }
    } else if (ham.status == HamiltonResult::Status::kNone && n <= max_len && n >= min_len &&
               slot(n).status != CycleLengthStatus::Status::kAbsent) {
      slot(n).status = CycleLengthStatus::Status::kAbsent;
      slot(n).proof = ham.reason;
    }
  }

  for (std::size_t L = max_len; L >= min_len; --L) {
    auto& s = slot(L);
    if (s.status != CycleLengthStatus::Status::kUnresolved) continue;
    BudgetMeter meter(Budget::nodes(nodes_per_length));
    auto c = detail::find_cycle_of_length(g, L, meter);
    if (!c.empty()) {
      s.status = CycleLengthStatus::Status::kFound;
      s.cycle = std::move(c);
    } else if (!meter.exhausted() && n <= kCycleAbsenceProofLimit) {
      s.status = CycleLengthStatus::Status::kAbsent;
      s.proof = "exhaustive search";
    }
    if (L == 0) break;
  }
  return out;
}

}  // namespace delta334

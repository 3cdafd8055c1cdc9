#pragma once

// Vertex colourings: DSATUR greedy, exact DSATUR branch and bound,
// verification, and pullback along graph morphisms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "delta334/budget.hpp"
#include "delta334/clique.hpp"
#include "delta334/graph.hpp"

namespace delta334 {

struct Coloring {
  std::vector<std::uint32_t> colors;
  std::size_t num_colors = 0;  // distinct indices used
  bool proper = false;
};

// First monochromatic edge, or nullopt when the colouring is proper.
inline std::optional<Edge> verify_coloring(const TriangleGraph& g, const std::vector<std::uint32_t>& colors) {
  if (colors.size() != g.size()) throw std::invalid_argument("verify_coloring: colour count does not match vertex count");
  for (auto [a, b] : g.edges())
    if (colors[a] == colors[b]) return Edge{a, b};
  return std::nullopt;
}

inline std::optional<Edge> verify_coloring(const TriangleGraph& g, const Coloring& c) { return verify_coloring(g, c.colors); }

inline Coloring make_coloring(const TriangleGraph& g, std::vector<std::uint32_t> colors) {
  Coloring c;
  std::vector<std::uint32_t> distinct = colors;
  std::sort(distinct.begin(), distinct.end());
  c.num_colors = static_cast<std::size_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
  c.proper = !verify_coloring(g, colors).has_value();
  c.colors = std::move(colors);
  return c;
}

// DSATUR: repeatedly colour the uncoloured vertex with the most distinct
// neighbour colours (ties: larger degree, then lower index) with the
// smallest colour it admits.
inline Coloring greedy_chromatic_upper(const TriangleGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> color(n, UINT32_MAX);
  std::vector<std::vector<std::uint32_t>> seen(n);  // per-vertex neighbour colour counts
  std::vector<std::size_t> sat(n, 0);
  using Key = std::tuple<std::size_t, std::size_t, std::uint32_t>;  // (-sat, -deg, index) via ordering below
  auto key = [&](std::uint32_t v) { return Key{n - sat[v], n - g.degree(v), v}; };
  std::set<Key> queue;
  for (std::uint32_t v = 0; v < n; ++v) queue.insert(key(v));
  while (!queue.empty()) {
    auto v = std::get<2>(*queue.begin());
    queue.erase(queue.begin());
    std::uint32_t c = 0;
    while (c < seen[v].size() && seen[v][c] > 0) ++c;
    color[v] = c;
    for (auto w : g.neighbors(v)) {
      if (color[w] != UINT32_MAX) continue;
      if (seen[w].size() <= c) seen[w].resize(c + 1, 0);
      if (seen[w][c]++ == 0) {
        queue.erase(key(w));
        ++sat[w];
        queue.insert(key(w));
      }
    }
  }
  return make_coloring(g, std::move(color));
}

// Tabu search for a proper k-colouring (TabuCol). Deterministic for a
// fixed seed; returns nullopt when `iterations` moves do not reach zero
// conflicts.
inline std::optional<std::vector<std::uint32_t>> tabu_k_coloring(const TriangleGraph& g, std::size_t k,
                                                                 std::uint64_t iterations, std::uint64_t seed = 1) {
  const std::size_t n = g.size();
  if (n == 0) return std::vector<std::uint32_t>{};
  if (k == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  // Start from DSATUR, folding colours >= k into random ones.
  std::vector<std::uint32_t> color = greedy_chromatic_upper(g).colors;
  for (auto& c : color)
    if (c >= k) c = static_cast<std::uint32_t>(rng() % k);
  std::vector<std::int64_t> gamma(n * k, 0);  // neighbours of v with colour c
  for (auto [a, b] : g.edges()) {
    ++gamma[a * k + color[b]];
    ++gamma[b * k + color[a]];
  }
  std::int64_t conflicts = 0;
  for (auto [a, b] : g.edges())
    if (color[a] == color[b]) ++conflicts;
  // Vertices with at least one same-coloured neighbour, with positions for
  // O(1) removal.
  std::vector<std::uint32_t> hot;
  std::vector<std::int64_t> hot_pos(n, -1);
  auto refresh = [&](std::uint32_t v) {
    bool conflicted = gamma[v * k + color[v]] > 0;
    if (conflicted && hot_pos[v] < 0) {
      hot_pos[v] = static_cast<std::int64_t>(hot.size());
      hot.push_back(v);
    } else if (!conflicted && hot_pos[v] >= 0) {
      auto last = hot.back();
      hot[static_cast<std::size_t>(hot_pos[v])] = last;
      hot_pos[last] = hot_pos[v];
      hot.pop_back();
      hot_pos[v] = -1;
    }
  };
  for (std::uint32_t v = 0; v < n; ++v) refresh(v);

  std::vector<std::uint64_t> tabu_until(n * k, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> moves;
  for (std::uint64_t it = 1; it <= iterations && conflicts > 0; ++it) {
    std::int64_t best_delta = INT64_MAX;
    moves.clear();
    for (auto v : hot) {
      for (std::uint32_t c = 0; c < k; ++c) {
        if (c == color[v]) continue;
        std::int64_t delta = gamma[v * k + c] - gamma[v * k + color[v]];
        bool aspiration = conflicts + delta == 0;
        if (tabu_until[v * k + c] >= it && !aspiration) continue;
        if (delta < best_delta) {
          best_delta = delta;
          moves.clear();
        }
        if (delta == best_delta) moves.emplace_back(v, c);
      }
    }
    if (moves.empty()) continue;
    auto [v, c] = moves[rng() % moves.size()];
    auto old = color[v];
    for (auto w : g.neighbors(v)) {
      --gamma[w * k + old];
      ++gamma[w * k + c];
    }
    color[v] = c;
    conflicts += best_delta;
    refresh(v);
    for (auto w : g.neighbors(v))
      if (color[w] == old || color[w] == c) refresh(w);
    tabu_until[v * k + old] = it + static_cast<std::uint64_t>(0.6 * static_cast<double>(conflicts)) + rng() % 10;
  }
  if (conflicts > 0) return std::nullopt;
  return color;
}

// Why the lower bound holds.
struct LowerBoundCertificate {
  enum class Kind { kTrivial, kClique, kExhaustedSearch, kSubgraph };
  Kind kind = Kind::kTrivial;
  std::size_t bound = 0;
  std::vector<std::uint32_t> witness;  // clique or searched subgraph vertices
  std::uint64_t nodes = 0;             // search nodes behind an exhaustion claim

  std::string kind_name() const {
    switch (kind) {
      case Kind::kTrivial: return "trivial";
      case Kind::kClique: return "clique";
      case Kind::kExhaustedSearch: return "exhausted-search";
      case Kind::kSubgraph: return "subgraph-exhausted-search";
    }
    return {};
  }
};

struct ChromaticResult {
  std::size_t lower = 0;
  std::size_t upper = 0;
  Coloring best;                       // witness for `upper`
  LowerBoundCertificate certificate;   // witness for `lower`
  bool exact = false;                  // lower == upper
  bool timed_out = false;
  std::uint64_t nodes = 0;
};

namespace detail {

// DSATUR branch and bound on one connected graph. Searches for colourings
// with fewer than `best.size()` colours; `forced` vertices are precoloured
// 0..k-1. Returns true when the search space was exhausted.
inline bool dsatur_branch_and_bound(const TriangleGraph& g, const std::vector<std::uint32_t>& forced,
                                    std::size_t lower, std::vector<std::uint32_t>& best, std::size_t& best_k,
                                    BudgetMeter& meter) {
  const std::size_t n = g.size();
  if (best_k <= lower) return true;
  const std::size_t K = best_k;  // colours are always < best_k
  std::vector<std::uint32_t> color(n, UINT32_MAX);
  std::vector<std::uint32_t> cnt(n * K, 0);
  std::vector<std::size_t> sat(n, 0), free_deg(n);
  for (std::uint32_t v = 0; v < n; ++v) free_deg[v] = g.degree(v);
  std::size_t colored = 0;

  auto assign = [&](std::uint32_t v, std::uint32_t c) {
    color[v] = c;
    ++colored;
    for (auto w : g.neighbors(v)) {
      --free_deg[w];
      if (cnt[w * K + c]++ == 0) ++sat[w];
    }
  };
  auto unassign = [&](std::uint32_t v) {
    auto c = color[v];
    color[v] = UINT32_MAX;
    --colored;
    for (auto w : g.neighbors(v)) {
      ++free_deg[w];
      if (--cnt[w * K + c] == 0) --sat[w];
    }
  };

  std::size_t used = 0;
  for (auto v : forced) assign(v, static_cast<std::uint32_t>(used++));

  std::function<bool(std::size_t)> search = [&](std::size_t used_now) -> bool {
    if (!meter.tick()) return false;
    if (colored == n) {
      if (used_now < best_k) {
        best_k = used_now;
        best = color;
      }
      return true;
    }
    std::uint32_t v = UINT32_MAX;
    for (std::uint32_t u = 0; u < n; ++u) {
      if (color[u] != UINT32_MAX) continue;
      if (v == UINT32_MAX || sat[u] > sat[v] || (sat[u] == sat[v] && free_deg[u] > free_deg[v])) v = u;
    }
    // Colours 0..used_now-1, or a fresh colour if that still beats the best.
    for (std::size_t c = 0; c < std::min(used_now + 1, best_k - 1); ++c) {
      if (cnt[v * K + c] != 0) continue;
      assign(v, static_cast<std::uint32_t>(c));
      bool ok = search(std::max(used_now, c + 1));
      unassign(v);
      if (!ok) return false;
      if (best_k <= lower) return true;
    }
    return true;
  };
  return search(used);
}

}  // namespace detail

// Exact chromatic number by DSATUR branch and bound with a clique lower
// bound and DSATUR greedy upper bound, solved per connected component.
// On budget exhaustion the best bounds found so far are returned.
inline ChromaticResult chromatic_number_exact(const TriangleGraph& g, const Budget& budget = Budget::unlimited()) {
  ChromaticResult out;
  const std::size_t n = g.size();
  if (n == 0) {
    out.exact = true;
    out.best = make_coloring(g, {});
    return out;
  }
  BudgetMeter meter(budget);

  // Components, largest first.
  std::vector<std::vector<std::uint32_t>> comps;
  {
    std::vector<bool> seen(n, false);
    for (std::uint32_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      std::vector<std::uint32_t> comp{s};
      seen[s] = true;
      for (std::size_t h = 0; h < comp.size(); ++h)
        for (auto w : g.neighbors(comp[h]))
          if (!seen[w]) {
            seen[w] = true;
            comp.push_back(w);
          }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  }

  std::vector<std::uint32_t> colors(n, 0);
  out.lower = 1;
  out.certificate = {LowerBoundCertificate::Kind::kTrivial, 1, {comps[0][0]}, 0};
  for (const auto& comp : comps) {
    TriangleGraph sub = g.induced(comp);
    // Clique bound for this component.
    CliqueResult cl = clique_number(sub, Budget::nodes(1'000'000));
    std::size_t lower = std::max<std::size_t>(cl.size, 1);
    std::vector<std::uint32_t> forced = cl.witness;

    Coloring greedy = greedy_chromatic_upper(sub);
    std::vector<std::uint32_t> best = greedy.colors;
    std::size_t best_k = greedy.num_colors;
    // Local search tightens the greedy bound before exact search.
    while (best_k > std::max(lower, out.lower)) {
      auto t = tabu_k_coloring(sub, best_k - 1, std::min<std::uint64_t>(200'000, 200 * sub.size()));
      if (!t) break;
      best = std::move(*t);
      best_k -= 1;
    }
    std::size_t proven = lower;
    LowerBoundCertificate cert;
    {
      std::vector<std::uint32_t> w;
      for (auto v : cl.witness) w.push_back(comp[v]);
      cert = {LowerBoundCertificate::Kind::kClique, lower, w, 0};
    }
    // Components whose greedy colouring already fits under the running
    // lower bound need no search.
    if (best_k > lower && best_k > out.lower) {
      std::uint64_t before = meter.nodes();
      if (detail::dsatur_branch_and_bound(sub, forced, lower, best, best_k, meter)) {
        if (best_k > lower) {
          proven = best_k;
          cert = {LowerBoundCertificate::Kind::kExhaustedSearch, best_k, comp, meter.nodes() - before};
        }
      } else {
        out.timed_out = true;
      }
    }
    for (std::size_t i = 0; i < comp.size(); ++i) colors[comp[i]] = best[i];
    if (proven > out.lower) {
      out.lower = proven;
      out.certificate = cert;
    }
  }
  out.best = make_coloring(g, std::move(colors));
  out.upper = out.best.num_colors;
  out.exact = out.lower == out.upper;
  out.nodes = meter.nodes();
  return out;
}

struct LiftResult {
  Coloring coloring;
  std::optional<Edge> violation;  // set when the pulled-back colouring is improper
};

// Colours each domain vertex like its image.
inline LiftResult lift_coloring(const TriangleGraph& domain, const GraphMorphism& m, const Coloring& c) {
  if (m.vertex_map.size() != domain.size()) throw std::invalid_argument("lift_coloring: morphism does not match domain");
  std::vector<std::uint32_t> colors(domain.size());
  for (std::size_t v = 0; v < domain.size(); ++v) colors[v] = c.colors.at(m.vertex_map[v]);
  LiftResult r;
  r.violation = verify_coloring(domain, colors);
  r.coloring = make_coloring(domain, std::move(colors));
  return r;
}

}  // namespace delta334

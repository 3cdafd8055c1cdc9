#pragma once

// Degree, connectivity, bipartiteness and nonplanarity evidence, plus the
// aggregate InvariantReport with every claim carrying a checkable witness.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "delta334/budget.hpp"
#include "delta334/clique.hpp"
#include "delta334/coloring.hpp"
#include "delta334/cycles.hpp"
#include "delta334/graph.hpp"

namespace delta334 {

// degree -> number of vertices. Loops do not count toward degree.
inline std::map<std::size_t, std::size_t> degree_sequence(const TriangleGraph& g) {
  std::map<std::size_t, std::size_t> hist;
  for (std::uint32_t v = 0; v < g.size(); ++v) ++hist[g.degree(v)];
  return hist;
}

// Connected components in order of their smallest vertex; each sorted.
inline std::vector<std::vector<std::uint32_t>> components(const TriangleGraph& g) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(g.size(), false);
  for (std::uint32_t s = 0; s < g.size(); ++s) {
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
    out.push_back(std::move(comp));
  }
  return out;
}

struct BipartiteResult {
  bool bipartite = false;
  std::vector<std::uint8_t> side;          // 0/1 per vertex when bipartite
  std::vector<std::uint32_t> odd_cycle;    // witness otherwise
};

// Breadth-first two-colouring. A conflict edge closes an odd cycle through
// the two tree paths to their lowest common ancestor.
inline BipartiteResult is_bipartite(const TriangleGraph& g) {
  const std::size_t n = g.size();
  BipartiteResult r;
  std::vector<int> side(n, -1);
  std::vector<std::int64_t> parent(n, -1), depth(n, 0);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<std::uint32_t> q{s};
    for (std::size_t h = 0; h < q.size(); ++h) {
      auto u = q[h];
      for (auto w : g.neighbors(u)) {
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          parent[w] = u;
          depth[w] = depth[u] + 1;
          q.push_back(w);
        } else if (side[w] == side[u]) {
          std::vector<std::uint32_t> left{u}, right{w};
          auto a = static_cast<std::int64_t>(u), b = static_cast<std::int64_t>(w);
          while (depth[a] > depth[b]) left.push_back(static_cast<std::uint32_t>(a = parent[a]));
          while (depth[b] > depth[a]) right.push_back(static_cast<std::uint32_t>(b = parent[b]));
          while (a != b) {
            left.push_back(static_cast<std::uint32_t>(a = parent[a]));
            right.push_back(static_cast<std::uint32_t>(b = parent[b]));
          }
          right.pop_back();  // common ancestor already in left
          r.odd_cycle = left;
          r.odd_cycle.insert(r.odd_cycle.end(), right.rbegin(), right.rend());
          std::reverse(r.odd_cycle.begin(), r.odd_cycle.end());
          return r;
        }
      }
    }
  }
  r.bipartite = true;
  r.side.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) r.side[v] = static_cast<std::uint8_t>(side[v]);
  return r;
}

struct PlanarityEvidence {
  enum class Reason { kInconclusive, kEdgeCount, kChromatic, kK5, kK33 };
  Reason reason = Reason::kInconclusive;
  std::string detail;
  std::vector<std::uint32_t> witness;  // subgraph vertices behind the claim

  bool nonplanar() const { return reason != Reason::kInconclusive; }
  std::string reason_name() const {
    switch (reason) {
      case Reason::kInconclusive: return "inconclusive";
      case Reason::kEdgeCount: return "edge-count";
      case Reason::kChromatic: return "chromatic";
      case Reason::kK5: return "K5-subgraph";
      case Reason::kK33: return "K33-subgraph";
    }
    return {};
  }
};

namespace detail {

// Induced subgraph on `verts` exceeds the planar edge bound 3|V| - 6.
inline std::optional<std::size_t> dense_subgraph_edges(const TriangleGraph& g, const std::vector<std::uint32_t>& verts) {
  if (verts.size() < 3) return std::nullopt;
  std::vector<bool> in(g.size(), false);
  for (auto v : verts) in[v] = true;
  std::size_t e = 0;
  for (auto v : verts)
    for (auto w : g.neighbors(v))
      if (in[w] && w > v) ++e;
  if (e > 3 * verts.size() - 6) return e;
  return std::nullopt;
}

// K_{3,3} as a subgraph: {a1,a2,a3} fully joined to three common neighbours.
inline std::optional<std::vector<std::uint32_t>> find_k33(const TriangleGraph& g, BudgetMeter& meter) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> mark(n, 0);
  for (std::uint32_t a1 = 0; a1 < n; ++a1) {
    if (g.degree(a1) < 3) continue;
    // Candidates a2 > a1 at distance two sharing >= 3 neighbours with a1.
    std::map<std::uint32_t, std::vector<std::uint32_t>> common;
    for (auto x : g.neighbors(a1))
      for (auto a2 : g.neighbors(x))
        if (a2 > a1) common[a2].push_back(x);
    for (auto& [a2, c12] : common) {
      if (!meter.tick()) return std::nullopt;
      if (c12.size() < 3) continue;
      for (auto& [a3, c13] : common) {
        if (a3 <= a2 || c13.size() < 3) continue;
        if (!meter.tick()) return std::nullopt;
        std::vector<std::uint32_t> both;
        std::set_intersection(c12.begin(), c12.end(), c13.begin(), c13.end(), std::back_inserter(both));
        if (both.size() >= 3) return std::vector<std::uint32_t>{a1, a2, a3, both[0], both[1], both[2]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Certificate-based nonplanarity: global or neighbourhood edge counts,
// chromatic number at least five, or a K5 / K3,3 subgraph. Anything else is
// inconclusive; there is no planarity test here.
inline PlanarityEvidence nonplanarity_check(const TriangleGraph& g, std::size_t chromatic_lower = 0,
                                            const Budget& budget = Budget::nodes(20'000'000)) {
  PlanarityEvidence ev;
  const std::size_t n = g.size();
  if (n >= 3 && g.num_edges() > 3 * n - 6) {
    ev.reason = PlanarityEvidence::Reason::kEdgeCount;
    ev.detail = std::to_string(g.num_edges()) + " > 3*" + std::to_string(n) + "-6 = " + std::to_string(3 * n - 6);
    return ev;
  }
  if (chromatic_lower >= 5) {
    ev.reason = PlanarityEvidence::Reason::kChromatic;
    ev.detail = "chromatic number >= " + std::to_string(chromatic_lower);
    return ev;
  }
  BudgetMeter meter(budget);
  // Closed two-step neighbourhoods are subgraphs; a dense one suffices.
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!meter.tick()) break;
    std::vector<std::uint32_t> ball{v};
    for (auto w : g.neighbors(v)) ball.push_back(w);
    std::size_t first_ring = ball.size();
    for (std::size_t i = 1; i < first_ring; ++i)
      for (auto x : g.neighbors(ball[i])) ball.push_back(x);
    std::sort(ball.begin(), ball.end());
    ball.erase(std::unique(ball.begin(), ball.end()), ball.end());
    if (auto e = detail::dense_subgraph_edges(g, ball)) {
      ev.reason = PlanarityEvidence::Reason::kEdgeCount;
      ev.detail = "two-step neighbourhood of vertex " + std::to_string(v) + ": " + std::to_string(*e) + " > 3*" +
                  std::to_string(ball.size()) + "-6";
      ev.witness = std::move(ball);
      return ev;
    }
  }
  CliqueResult cl = clique_number(g, Budget::nodes(1'000'000));
  if (cl.size >= 5) {
    ev.reason = PlanarityEvidence::Reason::kK5;
    ev.witness.assign(cl.witness.begin(), cl.witness.begin() + 5);
    ev.detail = "K5 subgraph";
    return ev;
  }
  BudgetMeter k33_meter(budget);
  if (auto w = detail::find_k33(g, k33_meter)) {
    ev.reason = PlanarityEvidence::Reason::kK33;
    ev.witness = *w;
    ev.detail = "K3,3 subgraph";
    return ev;
  }
  ev.detail = "no certificate found";
  return ev;
}

// Re-checks a nonplanarity witness against the graph.
inline bool verify_nonplanarity(const TriangleGraph& g, const PlanarityEvidence& ev) {
  switch (ev.reason) {
    case PlanarityEvidence::Reason::kInconclusive: return false;
    case PlanarityEvidence::Reason::kChromatic: return true;  // rests on the supplied chromatic bound
    case PlanarityEvidence::Reason::kEdgeCount:
      if (ev.witness.empty()) return g.size() >= 3 && g.num_edges() > 3 * g.size() - 6;
      return detail::dense_subgraph_edges(g, ev.witness).has_value();
    case PlanarityEvidence::Reason::kK5: return ev.witness.size() == 5 && is_clique(g, ev.witness);
    case PlanarityEvidence::Reason::kK33: {
      if (ev.witness.size() != 6) return false;
      for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j)
          if (!g.adjacent(ev.witness[static_cast<std::size_t>(i)], ev.witness[static_cast<std::size_t>(j)])) return false;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Aggregate report.
// ---------------------------------------------------------------------------
struct ReportOptions {
  Budget clique_budget = Budget::nodes(50'000'000);
  Budget chromatic_budget = Budget::time(60.0);
  Budget hamilton_budget = Budget::nodes(20'000'000);
  std::uint64_t cycle_nodes_per_length = 2'000'000;
  bool cycles = true;     // cycle census; skipped above kCycleCensusLimit
  bool hamilton = true;
};

inline constexpr std::size_t kCycleCensusLimit = 200;

struct InvariantReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t loops = 0;
  std::map<std::size_t, std::size_t> degree_histogram;
  std::vector<std::vector<std::uint32_t>> components;
  BipartiteResult bipartite;
  std::optional<std::size_t> girth;
  CliqueResult clique;
  ChromaticResult chromatic;
  std::optional<HamiltonResult> hamilton;
  std::vector<CycleLengthStatus> cycles;
  PlanarityEvidence planarity;
};

inline InvariantReport compute_report(const TriangleGraph& g, const ReportOptions& opt = {}) {
  InvariantReport r;
  r.vertices = g.size();
  r.edges = g.num_edges();
  r.loops = g.loops().size();
  r.degree_histogram = degree_sequence(g);
  r.components = components(g);
  r.bipartite = is_bipartite(g);
  r.girth = girth(g);
  r.clique = clique_number(g, opt.clique_budget);
  r.chromatic = chromatic_number_exact(g, opt.chromatic_budget);
  if (opt.hamilton) r.hamilton = hamiltonian_cycle(g, opt.hamilton_budget);
  if (opt.cycles && g.size() <= kCycleCensusLimit) r.cycles = cycle_census(g, 3, g.size(), opt.cycle_nodes_per_length);
  r.planarity = nonplanarity_check(g, r.chromatic.lower);
  return r;
}

// Re-verifies every witness in the report. Returns the failed claims.
inline std::vector<std::string> verify_report(const TriangleGraph& g, const InvariantReport& r) {
  std::vector<std::string> bad;
  if (!is_clique(g, r.clique.witness) || r.clique.witness.size() != r.clique.size) bad.push_back("clique witness");
  if (!r.chromatic.best.proper || verify_coloring(g, r.chromatic.best) || r.chromatic.best.num_colors != r.chromatic.upper)
    bad.push_back("chromatic witness");
  if (r.chromatic.lower < r.clique.size && r.clique.exact) bad.push_back("chromatic lower bound below clique number");
  if (r.bipartite.bipartite) {
    for (auto [a, b] : g.edges())
      if (r.bipartite.side[a] == r.bipartite.side[b]) {
        bad.push_back("bipartition");
        break;
      }
  } else if (r.bipartite.odd_cycle.size() % 2 == 0 || !is_cycle(g, r.bipartite.odd_cycle)) {
    bad.push_back("odd cycle witness");
  }
  if (r.hamilton && r.hamilton->status == HamiltonResult::Status::kFound &&
      (r.hamilton->cycle.size() != g.size() || !is_cycle(g, r.hamilton->cycle)))
    bad.push_back("hamiltonian cycle");
  for (const auto& c : r.cycles)
    if (c.status == CycleLengthStatus::Status::kFound && (c.cycle.size() != c.length || !is_cycle(g, c.cycle)))
      bad.push_back("cycle of length " + std::to_string(c.length));
  if (r.planarity.nonplanar() && !verify_nonplanarity(g, r.planarity)) bad.push_back("nonplanarity");
  return bad;
}

inline nlohmann::json to_json(const InvariantReport& r) {
  using nlohmann::json;
  json degrees = json::object();
  for (auto [d, c] : r.degree_histogram) degrees[std::to_string(d)] = c;
  json comps = json::array();
  for (const auto& c : r.components) comps.push_back(c.size());
  json out{
      {"vertices", r.vertices},
      {"edges", r.edges},
      {"loops", r.loops},
      {"degree_histogram", degrees},
      {"components", {{"count", r.components.size()}, {"sizes", comps}}},
      {"girth", r.girth ? json(*r.girth) : json(nullptr)},
      {"clique", {{"size", r.clique.size}, {"exact", r.clique.exact}, {"witness", r.clique.witness}}},
      {"chromatic",
       {{"lower", r.chromatic.lower},
        {"upper", r.chromatic.upper},
        {"exact", r.chromatic.exact},
        {"timed_out", r.chromatic.timed_out},
        {"coloring", r.chromatic.best.colors},
        {"lower_certificate",
         {{"kind", r.chromatic.certificate.kind_name()},
          {"bound", r.chromatic.certificate.bound},
          {"vertices", r.chromatic.certificate.witness},
          {"search_nodes", r.chromatic.certificate.nodes}}}}},
      {"planarity",
       {{"nonplanar", r.planarity.nonplanar()},
        {"reason", r.planarity.reason_name()},
        {"detail", r.planarity.detail},
        {"witness", r.planarity.witness}}},
  };
  if (r.bipartite.bipartite) {
    std::vector<std::uint32_t> part;
    for (std::uint32_t v = 0; v < r.bipartite.side.size(); ++v)
      if (r.bipartite.side[v] == 0) part.push_back(v);
    out["bipartite"] = {{"bipartite", true}, {"part0", part}};
  } else {
    out["bipartite"] = {{"bipartite", false}, {"odd_cycle", r.bipartite.odd_cycle}};
  }
  if (r.hamilton)
    out["hamiltonian"] = {{"status", r.hamilton->status_name()}, {"cycle", r.hamilton->cycle}, {"reason", r.hamilton->reason}};
  json cycles = json::array();
  for (const auto& c : r.cycles)
    cycles.push_back({{"length", c.length}, {"status", c.status_name()}, {"cycle", c.cycle}, {"proof", c.proof}});
  out["cycles"] = cycles;
  return out;
}

}  // namespace delta334

#pragma once

// Finite portions of the 334-triangle graph of SL3(Z): conjugation-closure
// generation from order-three seeds, trace-filtered edge construction, and
// the reduction-mod-p checks (no vertex reduces to the identity, edges map
// to edges, colourings lift back).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "delta334/algebra.hpp"
#include "delta334/budget.hpp"
#include "delta334/clique.hpp"
#include "delta334/coloring.hpp"
#include "delta334/graph.hpp"
#include "delta334/group_enum.hpp"
#include "delta334/invariants.hpp"
#include "delta334/parallel.hpp"

namespace delta334 {

// Order-three generators of the two SL3(Z) representations of the
// (3,3,4) triangle group used as default seeds.
inline std::vector<IntMatrix3> default_seed_matrices() {
  return {
      IntMatrix3({0, 0, 1, 1, 0, 0, 0, 1, 0}),
      IntMatrix3({1, 2, 3, 0, -2, -1, 0, 3, 1}),
      IntMatrix3({1, 1, 2, 0, 1, 1, 0, -3, -2}),
      IntMatrix3({-2, 0, -1, -5, 1, -1, 3, 0, 1}),
  };
}

struct GenerationConfig {
  std::vector<IntMatrix3> seeds = default_seed_matrices();
  std::size_t conj_depth = 6;
  std::int64_t entry_bound = 1'000'000'000;
  std::size_t target_vertices = 25'000;
  // Parametric family over [-family_bound, family_bound]^3; 0 disables it.
  std::int64_t family_bound = 1;

  void validate() const {
    if (entry_bound < 1 || entry_bound > kDefaultOverflowBound) throw std::invalid_argument("entry_bound must lie in [1, overflow bound]");
    if (target_vertices < 1) throw std::invalid_argument("target_vertices must be positive");
    if (family_bound < 0) throw std::invalid_argument("family_bound must be non-negative");
    if (seeds.empty() && family_bound == 0) throw std::invalid_argument("empty seed set");
    for (const auto& s : seeds) {
      auto ord = element_order(GroupElement(s), 3);
      if (!ord || *ord != 3) throw std::invalid_argument("every seed must have order exactly 3");
    }
  }
};

struct GenerationStats {
  std::vector<std::size_t> level_sizes;  // new vertices per conjugation depth
  std::size_t rejected_entry_bound = 0;
  bool reached_target = false;
  bool closed = false;  // frontier emptied before the depth limit
  std::uint64_t pairs_total = 0;
  std::uint64_t prefilter_passed = 0;
  std::uint64_t edges = 0;
};

struct PortionGraph {
  TriangleGraph graph;
  GenerationConfig config;
  GenerationStats stats;
};

// The twelve elementary matrices E_ij(+-1) in a fixed order.
inline std::vector<std::pair<IntMatrix3, IntMatrix3>> elementary_conjugators() {
  std::vector<std::pair<IntMatrix3, IntMatrix3>> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (int s : {1, -1}) out.emplace_back(IntMatrix3::elementary(i, j, s), IntMatrix3::elementary(i, j, -s));
    }
  return out;
}

// Breadth-first conjugation closure of seeds and family members (with
// inverses) under E_ij(+-1), level by level up to conj_depth. Matrices with
// an entry above entry_bound, or whose inverse has one, are rejected and
// counted. Generation stops once
// target_vertices is reached; inverses are always added in pairs so the
// result stays closed under inversion. Output is sorted by ElementKey.
inline std::pair<std::vector<IntMatrix3>, GenerationStats> generate_portion(const GenerationConfig& cfg,
                                                                            unsigned threads = 1) {
  cfg.validate();
  GenerationStats stats;
  std::unordered_set<ElementKey> seen;
  std::vector<IntMatrix3> all;
  auto key_of = [](const IntMatrix3& m) { return GroupElement(m).key(); };
  auto full = [&] { return all.size() >= cfg.target_vertices; };

  // Adds m and m^-1 together; a pair where either side breaks the entry
  // bound is rejected whole. Returns false when nothing was added.
  auto admit = [&](const IntMatrix3& m, std::vector<IntMatrix3>& frontier) {
    if (seen.count(key_of(m))) return false;
    IntMatrix3 inv = m.inverse();
    if (m.max_abs_entry() > cfg.entry_bound || inv.max_abs_entry() > cfg.entry_bound) {
      ++stats.rejected_entry_bound;
      return false;
    }
    seen.insert(key_of(m));
    all.push_back(m);
    frontier.push_back(m);
    if (seen.insert(key_of(inv)).second) {
      all.push_back(inv);
      frontier.push_back(inv);
    }
    return true;
  };

  std::vector<IntMatrix3> frontier;
  std::vector<IntMatrix3> initial = cfg.seeds;
  for (std::int64_t a = -cfg.family_bound; cfg.family_bound > 0 && a <= cfg.family_bound; ++a)
    for (std::int64_t b = -cfg.family_bound; b <= cfg.family_bound; ++b)
      for (std::int64_t c = -cfg.family_bound; c <= cfg.family_bound; ++c) initial.push_back(parametric_order3(a, b, c));
  for (const auto& m : initial) {
    if (full()) break;
    admit(m, frontier);
  }
  stats.level_sizes.push_back(all.size());

  const auto conj = elementary_conjugators();
  for (std::size_t depth = 1; depth <= cfg.conj_depth && !full(); ++depth) {
    if (frontier.empty()) {
      stats.closed = true;
      break;
    }
    std::sort(frontier.begin(), frontier.end(), [&](const auto& x, const auto& y) { return key_of(x) < key_of(y); });
    // Conjugates computed in parallel, merged in frontier order.
    std::vector<std::vector<IntMatrix3>> produced(frontier.size());
    std::vector<std::size_t> rejected(frontier.size(), 0);
    parallel_shards(frontier.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        for (const auto& [e, e_inv] : conj) {
          IntMatrix3 w = e.multiply(frontier[i]).multiply(e_inv);
          if (w.max_abs_entry() > cfg.entry_bound) ++rejected[i];
          else produced[i].push_back(w);
        }
    });
    std::vector<IntMatrix3> next;
    std::size_t before = all.size();
    for (std::size_t i = 0; i < frontier.size() && !full(); ++i) {
      stats.rejected_entry_bound += rejected[i];
      for (const auto& w : produced[i]) {
        if (full()) break;
        admit(w, next);
      }
    }
    stats.level_sizes.push_back(all.size() - before);
    frontier = std::move(next);
  }
  if (!full() && frontier.empty()) stats.closed = true;
  stats.reached_target = full();

  std::vector<std::pair<ElementKey, IntMatrix3>> keyed;
  keyed.reserve(all.size());
  for (auto& m : all) keyed.emplace_back(key_of(m), m);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<IntMatrix3> out;
  out.reserve(keyed.size());
  for (auto& [k, m] : keyed) out.push_back(m);
  return {std::move(out), stats};
}

// An element of order dividing 4 in SL3(Z) has eigenvalues {1,1,1},
// {1,-1,-1} or {1,i,-i}, so its trace is 3, -1 or 1.
inline bool trace_prefilter(const IntMatrix3& a, const IntMatrix3& b) {
  std::int64_t t = a.trace_of_product(b);
  return t == 3 || t == -1 || t == 1;
}

inline bool product_order_divides_4(const IntMatrix3& a, const IntMatrix3& b) {
  IntMatrix3 c = a.multiply(b);
  IntMatrix3 c2 = c.multiply(c);
  return c2.multiply(c2).is_identity();
}

// All-pairs edges with the trace prefilter ahead of the exact test.
inline PortionGraph build_portion_edges(std::vector<IntMatrix3> vertices, const GenerationConfig& cfg = {},
                                        GenerationStats stats = {}, unsigned threads = 1) {
  const std::size_t n = vertices.size();
  for (const auto& v : vertices)
    if (!v.multiply(v).multiply(v).is_identity()) throw PreconditionError("build_portion_edges: vertex without order dividing 3");
  unsigned shards = threads == 0 ? default_thread_count() : threads;
  std::vector<std::vector<Edge>> shard_edges(shards);
  std::vector<std::uint64_t> passed(shards, 0);
  parallel_shards(shards, shards, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s)
      for (std::size_t i = s; i < n; i += shards)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!trace_prefilter(vertices[i], vertices[j])) continue;
          ++passed[s];
          if (product_order_divides_4(vertices[i], vertices[j]))
            shard_edges[s].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
  });
  std::vector<Edge> edges;
  stats.prefilter_passed = 0;
  for (std::size_t s = 0; s < shards; ++s) {
    edges.insert(edges.end(), shard_edges[s].begin(), shard_edges[s].end());
    stats.prefilter_passed += passed[s];
  }
  stats.pairs_total = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  stats.edges = edges.size();
  std::vector<GroupElement> labels(vertices.begin(), vertices.end());
  nlohmann::json meta{{"kind", "sl3z-portion"}};
  return {TriangleGraph(n, std::move(edges), {}, std::move(labels), std::move(meta)), cfg, stats};
}

inline PortionGraph generate_portion_graph(const GenerationConfig& cfg, unsigned threads = 1) {
  auto [verts, stats] = generate_portion(cfg, threads);
  return build_portion_edges(std::move(verts), cfg, stats, threads);
}

struct IdentityReductionReport {
  std::int64_t p = 0;
  std::size_t checked = 0;
  std::vector<std::uint32_t> violations;  // vertex indices reducing to I mod p

  bool ok() const { return violations.empty(); }
};

inline IdentityReductionReport verify_no_identity_reduction(const std::vector<IntMatrix3>& vertices, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("verify_no_identity_reduction: modulus must be prime");
  IdentityReductionReport r{p, vertices.size(), {}};
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (reduce_mod(vertices[i], p).is_identity()) r.violations.push_back(static_cast<std::uint32_t>(i));
  return r;
}

inline std::vector<IntMatrix3> matrix_labels(const TriangleGraph& g) {
  std::vector<IntMatrix3> out;
  out.reserve(g.size());
  for (const auto& x : g.labels()) {
    if (!x.holds<IntMatrix3>()) throw std::invalid_argument("portion vertices must be integer matrices");
    out.push_back(x.as<IntMatrix3>());
  }
  return out;
}

// Codomain for reduction mod p: the 334-triangle graph of SL3(Z/pZ) with
// its looped identity vertex included.
inline TriangleGraph reduction_codomain(std::int64_t p, unsigned threads = 1) {
  auto spec = GroupSpec::sl3(static_cast<int>(p));
  return build_delta334(order3_vertices(spec, true), threads, {{"group", spec.to_string()}, {"include_identity", true}});
}

struct EdgePreservationReport {
  std::int64_t p = 0;
  MorphismReport morphism;
  TriangleGraph codomain;

  bool ok() const { return morphism.ok(); }
};

inline EdgePreservationReport verify_edge_preservation(const TriangleGraph& portion, std::int64_t p,
                                                       unsigned threads = 1) {
  EdgePreservationReport r;
  r.p = p;
  r.codomain = reduction_codomain(p, threads);
  r.morphism = induced_morphism(portion, p, r.codomain);
  return r;
}

struct PortionChromaticBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  LowerBoundCertificate lower_certificate;
  Coloring upper_witness;
  std::string upper_source;  // "lift" or "direct"
  Coloring lifted;           // pulled back from SL3(Z/2Z)
  std::size_t codomain_chromatic = 0;
  bool codomain_chromatic_exact = false;
  ChromaticResult direct;
  std::size_t clique = 0;
  std::vector<std::uint32_t> clique_witness;
  bool exact() const { return lower == upper; }
};

// Exhaustive check that `vertices` induce a subgraph needing more than k
// colours. Returns the search-node count on success.
inline std::optional<std::uint64_t> subgraph_not_colorable(const TriangleGraph& g, const std::vector<std::uint32_t>& vertices,
                                                           std::size_t k, const Budget& budget) {
  TriangleGraph sub = g.induced(vertices);
  ChromaticResult r = chromatic_number_exact(sub, budget);
  if (r.lower > k) return r.nodes;
  return std::nullopt;
}

// Upper bound: the better of the colouring lifted from SL3(Z/2Z) and a
// direct colouring of the portion. Lower bound: the clique number, the
// direct exact search, or a small subgraph proved not to be colourable with
// fewer colours (closed neighbourhoods first, then two-step balls).
inline PortionChromaticBounds portion_chromatic_bounds(const TriangleGraph& portion, const Budget& budget = Budget::time(120.0),
                                                       unsigned threads = 1) {
  PortionChromaticBounds b;
  // Lift through SL3(Z/2Z).
  auto pres = verify_edge_preservation(portion, 2, threads);
  ChromaticResult codomain_chi = chromatic_number_exact(pres.codomain, Budget::time(300.0));
  b.codomain_chromatic = codomain_chi.upper;
  b.codomain_chromatic_exact = codomain_chi.exact;
  if (pres.ok()) {
    auto lift = lift_coloring(portion, pres.morphism.morphism, codomain_chi.best);
    b.lifted = lift.coloring;
  }

  b.direct = chromatic_number_exact(portion, budget);
  CliqueResult cl = clique_number(portion, Budget::nodes(50'000'000));
  b.clique = cl.size;
  b.clique_witness = cl.witness;

  if (b.lifted.proper && (b.lifted.num_colors <= b.direct.upper || !b.direct.best.proper)) {
    b.upper = b.lifted.num_colors;
    b.upper_witness = b.lifted;
    b.upper_source = "lift";
  } else {
    b.upper = b.direct.upper;
    b.upper_witness = b.direct.best;
    b.upper_source = "direct";
  }

  b.lower = b.direct.lower;
  b.lower_certificate = b.direct.certificate;
  if (cl.size > b.lower) {
    b.lower = cl.size;
    b.lower_certificate = {LowerBoundCertificate::Kind::kClique, cl.size, cl.witness, 0};
  }
  // Small-subgraph probes for the next lower bound.
  for (int radius = 1; radius <= 2 && b.lower < b.upper; ++radius) {
    for (std::uint32_t v = 0; v < portion.size() && b.lower < b.upper; ++v) {
      std::vector<std::uint32_t> ball{v};
      std::size_t ring_start = 0;
      for (int r = 0; r < radius; ++r) {
        std::size_t ring_end = ball.size();
        for (std::size_t i = ring_start; i < ring_end; ++i)
          for (auto w : portion.neighbors(ball[i])) ball.push_back(w);
        std::sort(ball.begin() + static_cast<std::ptrdiff_t>(ring_end), ball.end());
        ball.erase(std::unique(ball.begin() + static_cast<std::ptrdiff_t>(ring_end), ball.end()), ball.end());
        // Drop vertices already in earlier rings.
        std::vector<std::uint32_t> earlier(ball.begin(), ball.begin() + static_cast<std::ptrdiff_t>(ring_end));
        std::sort(earlier.begin(), earlier.end());
        std::vector<std::uint32_t> fresh;
        for (std::size_t i = ring_end; i < ball.size(); ++i)
          if (!std::binary_search(earlier.begin(), earlier.end(), ball[i])) fresh.push_back(ball[i]);
        ball.resize(ring_end);
        ball.insert(ball.end(), fresh.begin(), fresh.end());
        ring_start = ring_end;
      }
      if (ball.size() > 200) continue;
      std::sort(ball.begin(), ball.end());
      if (auto nodes = subgraph_not_colorable(portion, ball, b.lower, Budget::nodes(200'000))) {
        b.lower += 1;
        b.lower_certificate = {LowerBoundCertificate::Kind::kSubgraph, b.lower, ball, *nodes};
      }
    }
  }
  return b;
}

}  // namespace delta334

#pragma once

// The 334-triangle graph: vertices are elements with x^3 = e, and x ~ y
// exactly when (xy)^4 = e. Also Kronecker products, graph morphisms induced
// by reduction mod p, and small-graph isomorphism search.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "delta334/algebra.hpp"
#include "delta334/group_enum.hpp"
#include "delta334/parallel.hpp"

namespace delta334 {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Undirected graph with optional self-loops and optional GroupElement
// labels. Adjacency lists are sorted; rows are additionally stored as a
// dense bitset when the graph has at most kDenseLimit vertices.
class TriangleGraph {
 public:
  static constexpr std::size_t kDenseLimit = 4096;

  TriangleGraph() = default;

  // Edges may be given in any order and orientation; duplicates are merged.
  // Self-pairs in `edges` are rejected; use `loops` instead.
  TriangleGraph(std::size_t n, std::vector<Edge> edges, std::vector<std::uint32_t> loops = {},
                std::vector<GroupElement> labels = {}, nlohmann::json meta = nlohmann::json::object())
      : n_(n), meta_(std::move(meta)) {
    if (!labels.empty() && labels.size() != n) throw std::invalid_argument("label count does not match vertex count");
    for (auto& [a, b] : edges) {
      if (a >= n || b >= n) throw std::invalid_argument("edge endpoint out of range");
      if (a == b) throw std::invalid_argument("self-pair in edge list; use loops");
      if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    std::sort(loops.begin(), loops.end());
    loops.erase(std::unique(loops.begin(), loops.end()), loops.end());
    for (auto v : loops)
      if (v >= n) throw std::invalid_argument("loop vertex out of range");
    loops_ = std::move(loops);
    loop_flag_.assign(n, false);
    for (auto v : loops_) loop_flag_[v] = true;

    adj_.assign(n, {});
    for (auto [a, b] : edges_) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    for (auto& row : adj_) std::sort(row.begin(), row.end());

    if (n <= kDenseLimit) {
      words_ = (n + 63) / 64;
      bits_.assign(n * words_, 0);
      for (auto [a, b] : edges_) {
        bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
        bits_[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
      }
    }

    labels_ = std::move(labels);
    keys_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      keys_.push_back(labels_[i].key());
      key_index_.emplace(keys_.back(), static_cast<std::uint32_t>(i));
    }
    if (key_index_.size() != keys_.size()) throw std::invalid_argument("duplicate vertex labels");
  }

  std::size_t size() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& loops() const { return loops_; }
  bool has_loop(std::uint32_t v) const { return loop_flag_[v]; }

  // Distinct-vertex adjacency; loops are not neighbors.
  bool adjacent(std::uint32_t a, std::uint32_t b) const {
    if (a == b) return false;
    if (!bits_.empty()) return (bits_[a * words_ + b / 64] >> (b % 64)) & 1u;
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
  }

  // Adjacency in the loop-aware sense used by Kronecker products.
  bool related(std::uint32_t a, std::uint32_t b) const { return a == b ? has_loop(a) : adjacent(a, b); }

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const { return adj_[v]; }
  std::size_t degree(std::uint32_t v) const { return adj_[v].size(); }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<GroupElement>& labels() const { return labels_; }
  const GroupElement& label(std::uint32_t v) const { return labels_.at(v); }
  const std::vector<ElementKey>& keys() const { return keys_; }

  std::optional<std::uint32_t> index_of(const ElementKey& k) const {
    auto it = key_index_.find(k);
    if (it == key_index_.end()) return std::nullopt;
    return it->second;
  }

  const nlohmann::json& meta() const { return meta_; }
  void set_meta(nlohmann::json m) { meta_ = std::move(m); }

  // Same graph with vertices renumbered so labels are sorted by key.
  TriangleGraph canonical() const {
    if (!has_labels()) return *this;
    std::vector<std::uint32_t> order(n_);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return keys_[a] < keys_[b]; });
    std::vector<std::uint32_t> pos(n_);
    for (std::uint32_t i = 0; i < n_; ++i) pos[order[i]] = i;
    return relabeled(pos);
  }

  // Graph with vertex v moved to position new_index[v].
  TriangleGraph relabeled(const std::vector<std::uint32_t>& new_index) const {
    std::vector<Edge> e;
    e.reserve(edges_.size());
    for (auto [a, b] : edges_) e.emplace_back(new_index[a], new_index[b]);
    std::vector<std::uint32_t> l;
    for (auto v : loops_) l.push_back(new_index[v]);
    std::vector<GroupElement> lab;
    if (has_labels()) {
      lab.resize(n_);
      for (std::uint32_t v = 0; v < n_; ++v) lab[new_index[v]] = labels_[v];
    }
    return TriangleGraph(n_, std::move(e), std::move(l), std::move(lab), meta_);
  }

  // Subgraph induced by the given vertices, in the given order.
  TriangleGraph induced(const std::vector<std::uint32_t>& vertices) const {
    std::vector<std::int64_t> pos(n_, -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<std::int64_t>(i);
    std::vector<Edge> e;
    for (auto [a, b] : edges_)
      if (pos[a] >= 0 && pos[b] >= 0) e.emplace_back(static_cast<std::uint32_t>(pos[a]), static_cast<std::uint32_t>(pos[b]));
    std::vector<std::uint32_t> l;
    for (auto v : loops_)
      if (pos[v] >= 0) l.push_back(static_cast<std::uint32_t>(pos[v]));
    std::vector<GroupElement> lab;
    if (has_labels())
      for (auto v : vertices) lab.push_back(labels_[v]);
    return TriangleGraph(vertices.size(), std::move(e), std::move(l), std::move(lab), meta_);
  }

  // Structural equality: same vertex count, labels, edges and loops.
  friend bool operator==(const TriangleGraph& a, const TriangleGraph& b) {
    return a.n_ == b.n_ && a.keys_ == b.keys_ && a.edges_ == b.edges_ && a.loops_ == b.loops_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> loops_;
  std::vector<bool> loop_flag_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<GroupElement> labels_;
  std::vector<ElementKey> keys_;
  std::unordered_map<ElementKey, std::uint32_t> key_index_;
  nlohmann::json meta_ = nlohmann::json::object();
};

// (xy)^4 == e. Requires x^3 == y^3 == e.
inline bool edge_predicate(const GroupElement& x, const GroupElement& y) {
  if (!x.power(3).is_identity() || !y.power(3).is_identity())
    throw PreconditionError("edge_predicate: arguments must satisfy x^3 = e");
  GroupElement c = x.compose(y);
  GroupElement c2 = c.compose(c);
  return c2.compose(c2).is_identity();
}

namespace detail {

inline bool product_has_order_dividing_4(const GroupElement& x, const GroupElement& y) {
  GroupElement c = x.compose(y);
  GroupElement c2 = c.compose(c);
  return c2.compose(c2).is_identity();
}

}  // namespace detail

// Builds the 334-triangle graph on the given elements. Pairs are tested in
// row shards across `threads` workers; output does not depend on threads.
inline TriangleGraph build_delta334(const ElementSet& elements, unsigned threads = 1,
                                    nlohmann::json meta = nlohmann::json::object()) {
  const std::size_t n = elements.size();
  for (const auto& x : elements.elements)
    if (!x.power(3).is_identity()) throw PreconditionError("build_delta334: every vertex must satisfy x^3 = e");

  std::vector<std::vector<Edge>> shard_edges(threads == 0 ? default_thread_count() : threads);
  std::vector<std::vector<std::uint32_t>> shard_loops(shard_edges.size());
  // Interleave rows so shards get similar work on the triangular loop.
  parallel_shards(shard_edges.size(), static_cast<unsigned>(shard_edges.size()),
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t s = begin; s < end; ++s)
                      for (std::size_t i = s; i < n; i += shard_edges.size()) {
                        if (detail::product_has_order_dividing_4(elements[i], elements[i]))
                          shard_loops[s].push_back(static_cast<std::uint32_t>(i));
                        for (std::size_t j = i + 1; j < n; ++j)
                          if (detail::product_has_order_dividing_4(elements[i], elements[j]))
                            shard_edges[s].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
                      }
                  });
  std::vector<Edge> edges;
  std::vector<std::uint32_t> loops;
  for (std::size_t s = 0; s < shard_edges.size(); ++s) {
    edges.insert(edges.end(), shard_edges[s].begin(), shard_edges[s].end());
    loops.insert(loops.end(), shard_loops[s].begin(), shard_loops[s].end());
  }
  return TriangleGraph(n, std::move(edges), std::move(loops), elements.elements, std::move(meta));
}

// Vertices are pairs (g, h) at index g * |H| + h; (g,h) ~ (g',h') iff g ~ g'
// and h ~ h', where a looped vertex counts as related to itself. When both
// factors are labeled the product vertices carry direct-sum labels.
inline TriangleGraph kronecker_product(const TriangleGraph& g, const TriangleGraph& h) {
  const std::size_t n1 = g.size(), n2 = h.size();
  auto idx = [&](std::size_t a, std::size_t b) { return static_cast<std::uint32_t>(a * n2 + b); };

  // Related pairs including the diagonal for looped vertices.
  auto related_list = [](const TriangleGraph& x) {
    std::vector<std::vector<std::uint32_t>> r(x.size());
    for (std::uint32_t v = 0; v < x.size(); ++v) {
      if (x.has_loop(v)) r[v].push_back(v);
      for (auto w : x.neighbors(v)) r[v].push_back(w);
      std::sort(r[v].begin(), r[v].end());
    }
    return r;
  };
  auto rg = related_list(g), rh = related_list(h);

  std::vector<Edge> edges;
  std::vector<std::uint32_t> loops;
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      for (auto a2 : rg[a])
        for (auto b2 : rh[b]) {
          std::uint32_t u = idx(a, b), v = idx(a2, b2);
          if (u == v) loops.push_back(u);
          else if (u < v) edges.emplace_back(u, v);
        }

  std::vector<GroupElement> labels;
  if (g.has_labels() && h.has_labels()) {
    labels.reserve(n1 * n2);
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        labels.push_back(GroupElement::direct_sum(g.label(static_cast<std::uint32_t>(a)), h.label(static_cast<std::uint32_t>(b))));
  }
  nlohmann::json meta{{"kind", "kronecker"}, {"left", g.meta()}, {"right", h.meta()}};
  return TriangleGraph(n1 * n2, std::move(edges), std::move(loops), std::move(labels), std::move(meta));
}

// ---------------------------------------------------------------------------
// Graph morphisms.
// ---------------------------------------------------------------------------
struct GraphMorphism {
  std::size_t domain_size = 0;
  std::size_t codomain_size = 0;
  std::vector<std::uint32_t> vertex_map;

  static GraphMorphism identity(std::size_t n) {
    GraphMorphism m{n, n, std::vector<std::uint32_t>(n)};
    std::iota(m.vertex_map.begin(), m.vertex_map.end(), 0u);
    return m;
  }
};

struct MorphismViolation {
  enum class Kind { kMissingImage, kEdgeNotPreserved, kEndpointsCollapsed, kLoopNotPreserved };
  Kind kind;
  std::uint32_t u;
  std::uint32_t v;  // equals u for vertex-level violations

  std::string describe() const {
    switch (kind) {
      case Kind::kMissingImage: return "vertex " + std::to_string(u) + " reduces outside the codomain";
      case Kind::kEdgeNotPreserved: return "edge " + std::to_string(u) + "-" + std::to_string(v) + " not preserved";
      case Kind::kEndpointsCollapsed: return "edge " + std::to_string(u) + "-" + std::to_string(v) + " collapses to one vertex";
      case Kind::kLoopNotPreserved: return "loop at " + std::to_string(u) + " not preserved";
    }
    return {};
  }
};

// A candidate morphism with every violation found. Violations are reported
// rather than thrown; `ok()` is the verification verdict.
struct MorphismReport {
  GraphMorphism morphism;
  std::vector<MorphismViolation> violations;
  std::size_t edges_checked = 0;

  bool ok() const { return violations.empty(); }
};

// Checks every edge and loop of `domain` against a total vertex map.
inline MorphismReport check_morphism(const TriangleGraph& domain, const TriangleGraph& codomain,
                                     const GraphMorphism& m) {
  MorphismReport r{m, {}, 0};
  for (auto [a, b] : domain.edges()) {
    ++r.edges_checked;
    auto u = m.vertex_map[a], v = m.vertex_map[b];
    if (u == v) r.violations.push_back({MorphismViolation::Kind::kEndpointsCollapsed, a, b});
    else if (!codomain.adjacent(u, v)) r.violations.push_back({MorphismViolation::Kind::kEdgeNotPreserved, a, b});
  }
  for (auto a : domain.loops())
    if (!codomain.has_loop(m.vertex_map[a])) r.violations.push_back({MorphismViolation::Kind::kLoopNotPreserved, a, a});
  return r;
}

// Morphism induced by entrywise reduction mod p. Domain labels must be
// IntMatrix3; codomain labels must be ModMatrix3 over p.
inline MorphismReport induced_morphism(const TriangleGraph& domain, std::int64_t p, const TriangleGraph& codomain) {
  if (!is_prime(p)) throw std::invalid_argument("induced_morphism: modulus must be prime");
  if (domain.size() > 0 && !domain.has_labels()) throw std::invalid_argument("induced_morphism: domain has no labels");
  MorphismReport r;
  r.morphism.domain_size = domain.size();
  r.morphism.codomain_size = codomain.size();
  r.morphism.vertex_map.assign(domain.size(), 0);
  std::vector<bool> mapped(domain.size(), false);
  for (std::uint32_t v = 0; v < domain.size(); ++v) {
    const auto& x = domain.label(v);
    if (!x.holds<IntMatrix3>()) throw std::invalid_argument("induced_morphism: domain vertices must be integer matrices");
    auto image = codomain.index_of(GroupElement(reduce_mod(x.as<IntMatrix3>(), p)).key());
    if (!image) {
      r.violations.push_back({MorphismViolation::Kind::kMissingImage, v, v});
      continue;
    }
    r.morphism.vertex_map[v] = *image;
    mapped[v] = true;
  }
  for (auto [a, b] : domain.edges()) {
    if (!mapped[a] || !mapped[b]) continue;
    ++r.edges_checked;
    auto u = r.morphism.vertex_map[a], w = r.morphism.vertex_map[b];
    if (u == w) r.violations.push_back({MorphismViolation::Kind::kEndpointsCollapsed, a, b});
    else if (!codomain.adjacent(u, w)) r.violations.push_back({MorphismViolation::Kind::kEdgeNotPreserved, a, b});
  }
  for (auto a : domain.loops())
    if (mapped[a] && !codomain.has_loop(r.morphism.vertex_map[a]))
      r.violations.push_back({MorphismViolation::Kind::kLoopNotPreserved, a, a});
  return r;
}

// ---------------------------------------------------------------------------
// Isomorphism of small graphs.
// ---------------------------------------------------------------------------
inline constexpr std::size_t kIsomorphismVertexLimit = 100;

namespace detail {

// Iterated neighbourhood-colour refinement shared between both graphs so
// colour ids are comparable.
inline std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> joint_refinement(const TriangleGraph& g,
                                                                                           const TriangleGraph& h) {
  auto initial = [](const TriangleGraph& x) {
    std::vector<std::uint64_t> c(x.size());
    for (std::uint32_t v = 0; v < x.size(); ++v) c[v] = x.degree(v) * 2 + (x.has_loop(v) ? 1 : 0);
    return c;
  };
  std::vector<std::uint64_t> cg = initial(g), ch = initial(h);
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::uint64_t>, std::uint32_t> ids;
    auto signature = [&](const TriangleGraph& x, const std::vector<std::uint64_t>& c, std::uint32_t v) {
      std::vector<std::uint64_t> s{c[v]};
      std::vector<std::uint64_t> nb;
      for (auto w : x.neighbors(v)) nb.push_back(c[w]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      return s;
    };
    std::vector<std::vector<std::uint64_t>> sg(g.size()), sh(h.size());
    for (std::uint32_t v = 0; v < g.size(); ++v) ids.emplace(sg[v] = signature(g, cg, v), 0);
    for (std::uint32_t v = 0; v < h.size(); ++v) ids.emplace(sh[v] = signature(h, ch, v), 0);
    std::uint32_t next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (std::uint32_t v = 0; v < g.size(); ++v) cg[v] = ids[sg[v]];
    for (std::uint32_t v = 0; v < h.size(); ++v) ch[v] = ids[sh[v]];
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {std::vector<std::uint32_t>(cg.begin(), cg.end()), std::vector<std::uint32_t>(ch.begin(), ch.end())};
}

}  // namespace detail

// Returns mapping[v] = image of g's vertex v in h, or nullopt when the
// graphs are not isomorphic. Loops must correspond as well.
inline std::optional<std::vector<std::uint32_t>> graph_isomorphic(const TriangleGraph& g, const TriangleGraph& h) {
  if (g.size() > kIsomorphismVertexLimit || h.size() > kIsomorphismVertexLimit)
    throw GuardExceeded("graph_isomorphic: graphs are limited to 100 vertices");
  if (g.size() != h.size() || g.num_edges() != h.num_edges() || g.loops().size() != h.loops().size())
    return std::nullopt;
  const std::size_t n = g.size();
  auto [cg, ch] = detail::joint_refinement(g, h);
  {
    auto a = cg, b = ch;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  // Visit g in BFS order so each new vertex is constrained by mapped ones.
  std::vector<std::uint32_t> order;
  std::vector<bool> seen(n, false);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    std::size_t head = order.size();
    order.push_back(s);
    while (head < order.size()) {
      auto v = order[head++];
      for (auto w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = true;
          order.push_back(w);
        }
    }
  }

  std::vector<std::int64_t> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    auto v = order[depth];
    for (std::uint32_t cand = 0; cand < n; ++cand) {
      if (used[cand] || ch[cand] != cg[v]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        auto u = order[k];
        if (g.adjacent(v, u) != h.adjacent(cand, static_cast<std::uint32_t>(map[u]))) ok = false;
      }
      if (!ok) continue;
      map[v] = cand;
      used[cand] = true;
      if (extend(depth + 1)) return true;
      used[cand] = false;
      map[v] = -1;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return std::vector<std::uint32_t>(map.begin(), map.end());
}

// True when `mapping` is a bijection carrying edges and loops of g exactly
// onto those of h.
inline bool is_isomorphism(const TriangleGraph& g, const TriangleGraph& h, const std::vector<std::uint32_t>& mapping) {
  if (g.size() != h.size() || mapping.size() != g.size()) return false;
  std::vector<bool> hit(h.size(), false);
  for (auto m : mapping) {
    if (m >= h.size() || hit[m]) return false;
    hit[m] = true;
  }
  if (g.num_edges() != h.num_edges() || g.loops().size() != h.loops().size()) return false;
  for (auto [a, b] : g.edges())
    if (!h.adjacent(mapping[a], mapping[b])) return false;
  for (auto a : g.loops())
    if (!h.has_loop(mapping[a])) return false;
  return true;
}

}  // namespace delta334

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Details for each check go to the indented lines below it.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "delta334/delta334.hpp"
#include "oracles.hpp"

using namespace delta334;

namespace {

class Criterion {
 public:
  Criterion(int id, std::string title, double limit_s) : id_(id), title_(std::move(title)), limit_(limit_s) {}

  void check(bool ok, const std::string& what) {
    if (!ok) ++failures_;
    notes_.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes_.push_back("note " + what); }

  bool finish(double seconds) {
    if (seconds > limit_) check(false, "time " + fmt(seconds) + " s exceeds " + fmt(limit_) + " s");
    bool ok = failures_ == 0;
    std::printf("%s criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id_, title_.c_str(), seconds);
    for (const auto& n : notes_) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    return ok;
  }

  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", x);
    return buf;
  }

 private:
  int id_;
  std::string title_;
  double limit_;
  int failures_ = 0;
  std::vector<std::string> notes_;
};

bool run(int id, const std::string& title, double limit_s, const std::function<void(Criterion&)>& body) {
  Criterion c(id, title, limit_s);
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
  return c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

TriangleGraph delta(const GroupSpec& spec, bool with_identity = false) {
  return build_delta334(order3_vertices(spec, with_identity));
}
TriangleGraph delta(const char* spec, bool with_identity = false) { return delta(parse_group_spec(spec), with_identity); }

std::uint32_t vertex_of(const TriangleGraph& g, const GroupElement& x) {
  auto v = g.index_of(x.key());
  if (!v) throw std::runtime_error("element " + to_string(x) + " is not a vertex");
  return *v;
}

std::set<std::size_t> lengths_with(const std::vector<CycleLengthStatus>& census, CycleLengthStatus::Status s) {
  std::set<std::size_t> out;
  for (const auto& c : census)
    if (c.status == s) out.insert(c.length);
  return out;
}

bool witnesses_valid(const TriangleGraph& g, const std::vector<CycleLengthStatus>& census) {
  for (const auto& c : census)
    if (c.status == CycleLengthStatus::Status::kFound && (c.cycle.size() != c.length || !is_cycle(g, c.cycle))) return false;
  return true;
}

std::string str(std::size_t x) { return std::to_string(x); }

// ---------------------------------------------------------------------------

void criterion_a4_s4(Criterion& c) {
  auto spec = parse_group_spec("A4");
  auto g = delta(spec);
  c.check(g.size() == 8, "8 vertices (got " + str(g.size()) + ")");
  c.check(components(g).size() == 1, "connected");
  auto bip = is_bipartite(g);
  c.check(bip.bipartite, "bipartite");
  if (bip.bipartite) {
    bool parts_are_classes = true;
    auto classes = conjugacy_classes(spec, order3_vertices(spec));
    for (const auto& cls : classes) {
      std::set<std::uint8_t> sides;
      for (const auto& x : cls.elements) sides.insert(bip.side[vertex_of(g, x)]);
      parts_are_classes = parts_are_classes && sides.size() == 1;
    }
    c.check(classes.size() == 2 && parts_are_classes, "parts are the two conjugacy classes");
  }
  std::vector<Edge> kk;
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = 4; j < 8; ++j) kk.emplace_back(i, j);
  TriangleGraph k44(8, kk);
  auto iso = graph_isomorphic(g, k44);
  c.check(iso && is_isomorphism(g, k44, *iso), "isomorphic to K4,4 with a verified mapping");
  auto chi = chromatic_number_exact(g);
  c.check(chi.exact && chi.upper == 2 && !verify_coloring(g, chi.best), "chromatic number 2");
  auto cl = clique_number(g);
  c.check(cl.exact && cl.size == 2, "clique number 2");
  auto census = cycle_census(g, 3, 8);
  c.check(lengths_with(census, CycleLengthStatus::Status::kFound) == std::set<std::size_t>{4, 6, 8} &&
              lengths_with(census, CycleLengthStatus::Status::kAbsent) == std::set<std::size_t>{3, 5, 7} &&
              witnesses_valid(g, census),
          "cycle lengths exactly {4, 6, 8}; 3, 5, 7 proved absent");
  auto s4 = delta("S4");
  c.check(s4 == g && s4.keys() == g.keys(), "Delta334(S4) has the same vertices and edges as Delta334(A4)");
}

void criterion_s5(Criterion& c) {
  auto g = delta("S5");
  c.check(g.size() == 20, "20 vertices (got " + str(g.size()) + ")");
  c.check(degree_sequence(g) == std::map<std::size_t, std::size_t>{{7, 20}}, "every vertex has degree 7");
  auto bip = is_bipartite(g);
  c.check(!bip.bipartite && bip.odd_cycle.size() % 2 == 1 && is_cycle(g, bip.odd_cycle), "not bipartite, odd cycle verified");
  std::vector<std::uint32_t> tri;
  for (const char* s : {"(123)", "(124)", "(125)"}) tri.push_back(vertex_of(g, GroupElement(Permutation::from_cycles(s, 5))));
  c.check(is_cycle(g, tri), "(123), (124), (125) form an odd cycle");
}

void criterion_sl2_3(Criterion& c) {
  auto s4 = delta("S4"), sl = delta("SL2(3)");
  auto iso = graph_isomorphic(s4, sl);
  c.check(iso.has_value(), "graph_isomorphic returns a mapping");
  if (iso) c.check(is_isomorphism(s4, sl, *iso), "mapping preserves adjacency in both directions");
}

void criterion_sl3_2(Criterion& c) {
  auto g = delta("SL3(2)");
  c.check(g.size() == 56, "56 vertices (got " + str(g.size()) + ")");
  c.check(g.num_edges() == 532, "532 edges (got " + str(g.num_edges()) + ")");
  c.check(degree_sequence(g) == std::map<std::size_t, std::size_t>{{19, 56}}, "uniform degree 19");
  c.check(components(g).size() == 1, "connected");

  auto cl = clique_number(g);
  c.check(cl.exact && cl.size == 5 && is_clique(g, cl.witness), "clique number exactly 5");
  const ModMatrix3::Entries reference[] = {
      {0, 1, 0, 1, 0, 1, 1, 1, 0}, {1, 0, 1, 0, 1, 1, 0, 1, 0}, {1, 1, 1, 1, 0, 0, 0, 0, 1},
      {1, 0, 0, 1, 1, 1, 1, 1, 0}, {1, 0, 0, 1, 0, 1, 0, 1, 1},
  };
  std::vector<std::uint32_t> five;
  for (const auto& e : reference) five.push_back(vertex_of(g, GroupElement(ModMatrix3(e, 2))));
  c.check(is_clique(g, five), "the reference five-matrix set is a clique");

  auto chi = chromatic_number_exact(g);
  c.check(chi.exact && chi.upper == 8 && !verify_coloring(g, chi.best) && chi.best.num_colors == 8, "8-colouring verified");
  c.check(chi.lower == 8 && chi.certificate.kind == LowerBoundCertificate::Kind::kExhaustedSearch,
          "no 7-colouring: " + chi.certificate.kind_name() + " over " + std::to_string(chi.certificate.nodes) + " nodes");

  auto ham = hamiltonian_cycle(g);
  c.check(ham.status == HamiltonResult::Status::kFound && ham.cycle.size() == 56 && is_cycle(g, ham.cycle),
          "Hamiltonian cycle found and verified");
  auto census = cycle_census(g, 3, 56);
  auto found = lengths_with(census, CycleLengthStatus::Status::kFound);
  c.check(found.size() == 54 && *found.begin() == 3 && *found.rbegin() == 56 && witnesses_valid(g, census),
          "cycle witnesses for every length 3..56");
  auto pl = nonplanarity_check(g, chi.lower);
  c.check(pl.reason == PlanarityEvidence::Reason::kEdgeCount && verify_nonplanarity(g, pl), "nonplanar by edge count: " + pl.detail);
}

void criterion_sl3_3(Criterion& c) {
  auto g = delta("SL3(3)");
  c.check(g.size() == 728, "728 elements of order 3 (got " + str(g.size()) + ")");
  auto with_e = delta("SL3(3)", true);
  auto comps = components(with_e);
  std::size_t non_identity = 0;
  for (const auto& comp : comps)
    if (!(comp.size() == 1 && with_e.label(comp[0]).is_identity())) ++non_identity;
  c.check(non_identity == 1, "one connected non-identity component");
  auto deg = degree_sequence(g);
  std::set<std::size_t> ds;
  for (auto [d, n] : deg) ds.insert(d);
  c.check(ds == std::set<std::size_t>{118, 136},
          "degree set {118, 136} (" + str(deg[118]) + " and " + str(deg[136]) + " vertices)");
  auto chi = chromatic_number_exact(g, Budget::time(20));
  c.check(chi.best.proper && !verify_coloring(g, chi.best), "colouring witness verified");
  c.note("chromatic number bounds " + str(chi.lower) + ".." + str(chi.upper) + " (lower by " + chi.certificate.kind_name() +
         ")");
}

void criterion_abelian_kronecker(Criterion& c) {
  for (const char* spec : {"Z3", "Z9", "sum(Z3,Z3)"}) {
    auto g = delta(spec);
    std::set<Edge> expected;
    for (std::uint32_t v = 0; v < g.size(); ++v) expected.insert(std::minmax(v, vertex_of(g, g.label(v).inverse())));
    c.check(std::set<Edge>(g.edges().begin(), g.edges().end()) == expected, std::string(spec) + ": edges are exactly {x, x^-1}");
  }
  const char* names[] = {"Z3", "A4", "S4"};
  for (const char* a : names)
    for (const char* b : names) {
      auto ga = parse_group_spec(a), gb = parse_group_spec(b);
      auto prod = kronecker_product(delta(ga, true), delta(gb, true));
      auto direct = delta(GroupSpec::sum(ga, gb), true);
      c.check(prod.canonical() == direct.canonical(),
              std::string("Delta334(") + a + " + " + b + ") = Delta334(" + a + ") x Delta334(" + b + "), " +
                  str(direct.size()) + " vertices");
    }
}

void criterion_portion(Criterion& c) {
  GenerationConfig cfg;  // default configuration
  auto p = generate_portion_graph(cfg);
  const auto& g = p.graph;
  c.check(g.size() >= 5000, "portion has " + str(g.size()) + " vertices, " + str(g.num_edges()) + " edges");
  auto mats = matrix_labels(g);
  for (std::int64_t q : {2, 3, 5}) {
    auto r = verify_no_identity_reduction(mats, q);
    c.check(r.ok() && r.checked == g.size(), "mod " + std::to_string(q) + ": 0 identity reductions");
  }
  auto b = portion_chromatic_bounds(g, Budget::time(240));
  auto pres = verify_edge_preservation(g, 2);
  c.check(pres.ok() && pres.morphism.edges_checked == g.num_edges(),
          "mod 2: all " + str(pres.morphism.edges_checked) + " edges preserved");
  c.check(b.lifted.proper && !verify_coloring(g, b.lifted) && b.lifted.num_colors <= 8,
          "lifted colouring proper with " + str(b.lifted.num_colors) + " colours");
  c.check(b.clique >= 3 && is_clique(g, b.clique_witness) && b.clique_witness.size() == b.clique, "3-clique found and verified");
  auto cl = clique_number(g, Budget::nodes(200'000'000));
  c.check(cl.size < 4, std::string("no 4-clique found") + (cl.exact ? " (exhaustive)" : " (search budget exhausted)"));
  c.check(b.upper_witness.proper && !verify_coloring(g, b.upper_witness) && b.upper_witness.num_colors == b.upper,
          "upper-bound colouring verified (" + b.upper_source + ")");
  bool lower_ok = b.lower <= 3 || b.lower_certificate.kind == LowerBoundCertificate::Kind::kClique;
  if (b.lower_certificate.kind == LowerBoundCertificate::Kind::kSubgraph) {
    auto sub = g.induced(b.lower_certificate.witness);
    auto recheck = chromatic_number_exact(sub, Budget::nodes(20'000'000));
    lower_ok = recheck.lower >= b.lower;
    c.note("lower bound re-checked on a " + str(sub.size()) + "-vertex subgraph");
  } else if (b.lower_certificate.kind == LowerBoundCertificate::Kind::kExhaustedSearch) {
    lower_ok = b.direct.exact;
  }
  c.check(lower_ok, "lower-bound certificate (" + b.lower_certificate.kind_name() + ") verified");
  c.check(b.lower >= 3 && b.upper <= 8 && b.lower <= b.upper,
          "chromatic number of the portion in " + str(b.lower) + ".." + str(b.upper) + ", within [3, 8]");
  auto pl = nonplanarity_check(g, b.lower);
  c.check(!pl.nonplanar() || verify_nonplanarity(g, pl),
          pl.nonplanar() ? "nonplanar (" + pl.reason_name() + ")" : "planarity inconclusive (flagged)");
  c.note(b.exact() ? "exact chromatic number " + str(b.upper) : "chromatic number not pinned within budget");
}

void criterion_oracle(Criterion& c) {
  std::vector<std::pair<std::string, TriangleGraph>> graphs;
  for (const char* spec : {"Z3", "Z6", "Z9", "S3", "A4", "S4", "SL2(2)", "SL2(3)", "sum(Z3,Z3)", "sum(Z3,S3)", "sum(Z2,A4)"})
    for (bool e : {false, true}) {
      auto g = delta(spec, e);
      if (g.size() <= 10) graphs.emplace_back(std::string(spec) + (e ? " with identity" : ""), g);
    }
  c.check(graphs.size() >= 15, str(graphs.size()) + " built graphs with at most 10 vertices");
  for (const auto& [name, g] : graphs) {
    oracle::Graph o(static_cast<int>(g.size()));
    for (auto [a, b] : g.edges()) o.add(static_cast<int>(a), static_cast<int>(b));
    auto chi = chromatic_number_exact(g);
    auto cl = clique_number(g);
    int bchi = oracle::chromatic_number(o), bcl = oracle::clique_number(o);
    c.check(chi.exact && static_cast<int>(chi.upper) == bchi && cl.exact && static_cast<int>(cl.size) == bcl,
            name + ": chi " + str(chi.upper) + " / " + std::to_string(bchi) + ", clique " + str(cl.size) + " / " +
                std::to_string(bcl));
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "A4 and S4", 1.0, criterion_a4_s4);
  ok &= run(2, "S5", 1.0, criterion_s5);
  ok &= run(3, "S4 and SL2(3) isomorphic", 1.0, criterion_sl2_3);
  ok &= run(4, "SL3(2)", 600.0, criterion_sl3_2);
  ok &= run(5, "SL3(3)", 60.0, criterion_sl3_3);
  ok &= run(6, "Abelian groups and Kronecker products", 10.0, criterion_abelian_kronecker);
  ok &= run(7, "SL3(Z) portion", 900.0, criterion_portion);
  ok &= run(8, "brute-force oracle on small graphs", 60.0, criterion_oracle);
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}

#pragma once
// Command-line driver. One subcommand per invocation; every output file
// embeds a RunManifest describing the run that produced it.
//
// Exit codes: 0 success, 1 usage or data error, 2 a verification failed.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graph_io.hpp"
#include "group_enum.hpp"
#include "invariants.hpp"
#include "sl3z_gen.hpp"

namespace delta334 {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr std::uint64_t kDefaultNodeBudget = 20'000'000;
inline constexpr std::uint64_t kHeuristicSeed = 1;  // tabu search seed

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitVerification = 2 };

// Default node budget; DELTA334_NODE_BUDGET overrides it.
inline std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("DELTA334_NODE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultNodeBudget;
}

struct RunManifest {
  std::string subcommand;
  nlohmann::json flags = nlohmann::json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::uint64_t seed = kHeuristicSeed;

  nlohmann::json to_json() const {
    return {{"tool", "delta334"}, {"version", kToolVersion}, {"subcommand", subcommand},
            {"flags", flags},     {"inputs", inputs},        {"outputs", outputs}, {"seed", seed}};
  }
};

namespace detail {

struct CliOptions {
  std::string group, left, right;
  std::string in, other, out, portion, seeds, format = "dot";
  bool with_identity = false;
  bool no_cycles = false, no_hamilton = false, bounds = false, classes = false;
  std::uint64_t node_budget = 0;
  std::optional<double> time_budget;
  unsigned threads = 0;
  std::size_t min_len = 3, max_len = 0;
  std::vector<std::int64_t> mods{2};
  std::size_t depth = 6, target = 25'000;
  std::int64_t entry_bound = 1'000'000'000, family_bound = 1;
};

inline RunManifest make_manifest(const CLI::App& sub, const CliOptions& o) {
  RunManifest m;
  m.subcommand = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    // Thread count never changes results, so it stays out of the manifest.
    if (name == "help" || name == "threads") continue;
    if (opt->count() > 0) {
      auto res = opt->results();
      m.flags[name] = res.size() == 1 ? nlohmann::json(res.front()) : nlohmann::json(res);
    } else {
      m.flags[name] = opt->get_default_str();
    }
  }
  for (const auto* p : {&o.in, &o.other, &o.portion, &o.seeds})
    if (!p->empty()) m.inputs.push_back(*p);
  if (!o.out.empty()) m.outputs.push_back(o.out);
  return m;
}

inline Budget budget_of(const CliOptions& o) { return Budget{o.node_budget, o.time_budget.value_or(0.0)}; }

// "3-7, 9, 12-14"
inline std::string ranges(const std::vector<std::size_t>& xs) {
  if (xs.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j + 1 < xs.size() && xs[j + 1] == xs[j] + 1) ++j;
    if (!out.empty()) out += ", ";
    out += std::to_string(xs[i]);
    if (j > i) out += "-" + std::to_string(xs[j]);
    i = j + 1;
  }
  return out;
}

inline void row(std::ostream& out, const std::string& key, const std::string& value) {
  out << "  " << key << std::string(key.size() < 18 ? 18 - key.size() : 1, ' ') << value << "\n";
}

inline std::string degree_summary(const std::map<std::size_t, std::size_t>& hist) {
  if (hist.size() == 1) return std::to_string(hist.begin()->first) + " (uniform)";
  std::string s;
  for (auto [d, c] : hist) s += (s.empty() ? "" : ", ") + std::to_string(d) + " x" + std::to_string(c);
  return s;
}

inline std::string chromatic_summary(const ChromaticResult& c) {
  std::string s = c.exact ? std::to_string(c.upper) + " (exact)"
                          : "between " + std::to_string(c.lower) + " and " + std::to_string(c.upper);
  s += ", lower bound by " + c.certificate.kind_name();
  if (c.timed_out) s += ", budget exhausted";
  return s;
}

inline void write_json(const std::string& path, nlohmann::json j, const RunManifest& m) {
  if (path.empty()) return;
  j["manifest"] = m.to_json();
  write_text_file(path, dump_canonical(j));
}

inline void write_graph(const std::string& path, const TriangleGraph& g, const RunManifest& m,
                        const nlohmann::json* generation = nullptr) {
  nlohmann::json j = graph_to_json(g);
  j["meta"]["manifest"] = m.to_json();
  if (generation) j["generation"] = *generation;
  write_text_file(path, dump_canonical(j));
}

inline TriangleGraph load_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline int cmd_enumerate(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  GroupSpec spec = parse_group_spec(o.group);
  ElementSet group = enumerate_group(spec);
  ElementSet verts = order3_vertices(group, o.with_identity);
  nlohmann::json elems = nlohmann::json::array();
  for (const auto& x : verts.elements) elems.push_back(element_to_json(x));
  nlohmann::json j{{"group", spec.to_string()},
                   {"order", group.size()},
                   {"include_identity", o.with_identity},
                   {"carrier", verts.empty() ? std::string() : carrier_descriptor(verts[0])},
                   {"elements", elems}};
  out << spec.to_string() << ": order " << group.size() << ", " << verts.size() << " elements with x^3 = e"
      << (o.with_identity ? " (identity included)" : " (identity excluded)") << "\n";
  if (o.classes) {
    auto cls = conjugacy_classes(group, verts);
    std::vector<std::size_t> sizes;
    for (const auto& c : cls) sizes.push_back(c.size());
    j["class_sizes"] = sizes;
    out << "  conjugacy classes: " << cls.size() << " (sizes";
    for (auto s : sizes) out << " " << s;
    out << ")\n";
  }
  for (const auto& x : verts.elements) out << "  " << to_string(x) << "\n";
  write_json(o.out, j, m);
  return kExitOk;
}

inline int cmd_graph(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  GroupSpec spec = parse_group_spec(o.group);
  auto g = build_delta334(order3_vertices(spec, o.with_identity), o.threads,
                          {{"group", spec.to_string()}, {"include_identity", o.with_identity}});
  out << "Delta334(" << spec.to_string() << "): " << g.size() << " vertices, " << g.num_edges() << " edges, "
      << g.loops().size() << " loops\n";
  write_graph(o.out, g, m);
  return kExitOk;
}

inline int cmd_stats(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  auto g = load_graph(o.in);
  ReportOptions opt;
  opt.clique_budget = Budget::nodes(o.node_budget);
  opt.chromatic_budget = budget_of(o);
  opt.hamilton_budget = Budget::nodes(o.node_budget);
  opt.cycle_nodes_per_length = o.node_budget;
  opt.cycles = !o.no_cycles;
  opt.hamilton = !o.no_hamilton;
  auto r = compute_report(g, opt);
  auto bad = verify_report(g, r);

  out << "graph " << o.in << "\n";
  row(out, "vertices", std::to_string(r.vertices));
  row(out, "edges", std::to_string(r.edges));
  row(out, "loops", std::to_string(r.loops));
  row(out, "degrees", degree_summary(r.degree_histogram));
  row(out, "components", std::to_string(r.components.size()) + (r.components.size() == 1 ? " (connected)" : ""));
  row(out, "bipartite", r.bipartite.bipartite ? "yes" : "no (odd cycle of length " + std::to_string(r.bipartite.odd_cycle.size()) + ")");
  row(out, "girth", r.girth ? std::to_string(*r.girth) : "acyclic");
  row(out, "clique number", std::to_string(r.clique.size) + (r.clique.exact ? " (exact)" : " (lower bound)"));
  row(out, "chromatic number", chromatic_summary(r.chromatic));
  if (r.hamilton) row(out, "hamiltonian", r.hamilton->status_name());
  if (!r.cycles.empty()) {
    std::vector<std::size_t> found, absent, open;
    for (const auto& c : r.cycles)
      (c.status == CycleLengthStatus::Status::kFound ? found
       : c.status == CycleLengthStatus::Status::kAbsent ? absent : open).push_back(c.length);
    row(out, "cycles found", ranges(found));
    row(out, "cycles absent", ranges(absent));
    if (!open.empty()) row(out, "cycles unresolved", ranges(open));
  }
  row(out, "planarity", r.planarity.nonplanar() ? "nonplanar (" + r.planarity.reason_name() + ")" : "inconclusive");
  for (const auto& b : bad) out << "  VERIFICATION FAILED: " << b << "\n";

  write_json(o.out, {{"graph", g.meta()}, {"report", to_json(r)}, {"verification_failures", bad}}, m);
  return bad.empty() ? kExitOk : kExitVerification;
}

inline int cmd_color(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  auto g = load_graph(o.in);
  auto r = chromatic_number_exact(g, budget_of(o));
  bool ok = r.best.proper && !verify_coloring(g, r.best);
  out << "chromatic number: " << chromatic_summary(r) << "\n";
  out << "search nodes: " << r.nodes << "\n";
  if (!ok) out << "VERIFICATION FAILED: coloring is not proper\n";
  write_json(o.out,
             {{"lower", r.lower},
              {"upper", r.upper},
              {"exact", r.exact},
              {"timed_out", r.timed_out},
              {"coloring", r.best.colors},
              {"lower_certificate",
               {{"kind", r.certificate.kind_name()}, {"bound", r.certificate.bound},
                {"vertices", r.certificate.witness}, {"search_nodes", r.certificate.nodes}}}},
             m);
  return ok ? kExitOk : kExitVerification;
}

inline int cmd_clique(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  auto g = load_graph(o.in);
  auto r = clique_number(g, Budget::nodes(o.node_budget));
  bool ok = is_clique(g, r.witness) && r.witness.size() == r.size;
  out << "clique number: " << r.size << (r.exact ? " (exact)" : " (lower bound; budget exhausted)") << "\n";
  out << "witness:";
  for (auto v : r.witness) out << " " << (g.has_labels() ? to_string(g.label(v)) : std::to_string(v));
  out << "\n";
  if (!ok) out << "VERIFICATION FAILED: witness is not a clique\n";
  write_json(o.out, {{"size", r.size}, {"exact", r.exact}, {"witness", r.witness}, {"search_nodes", r.nodes}}, m);
  return ok ? kExitOk : kExitVerification;
}

inline int cmd_cycles(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  auto g = load_graph(o.in);
  std::size_t hi = o.max_len == 0 ? g.size() : o.max_len;
  auto census = cycle_census(g, o.min_len, hi, o.node_budget);
  std::vector<std::size_t> found, absent, open;
  nlohmann::json rows = nlohmann::json::array();
  bool ok = true;
  for (const auto& c : census) {
    (c.status == CycleLengthStatus::Status::kFound ? found
     : c.status == CycleLengthStatus::Status::kAbsent ? absent : open).push_back(c.length);
    if (c.status == CycleLengthStatus::Status::kFound && (c.cycle.size() != c.length || !is_cycle(g, c.cycle))) ok = false;
    rows.push_back({{"length", c.length}, {"status", c.status_name()}, {"cycle", c.cycle}, {"proof", c.proof}});
  }
  out << "cycle lengths " << o.min_len << ".." << hi << "\n";
  row(out, "found", ranges(found));
  row(out, "absent", ranges(absent));
  row(out, "unresolved", ranges(open));
  if (!ok) out << "VERIFICATION FAILED: a cycle witness is invalid\n";
  write_json(o.out, {{"cycles", rows}}, m);
  return ok ? kExitOk : kExitVerification;
}

inline int cmd_hamilton(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  auto g = load_graph(o.in);
  auto r = hamiltonian_cycle(g, budget_of(o));
  bool ok = r.status != HamiltonResult::Status::kFound || (r.cycle.size() == g.size() && is_cycle(g, r.cycle));
  out << "hamiltonian cycle: " << r.status_name();
  if (!r.reason.empty()) out << " (" << r.reason << ")";
  out << "\n";
  if (!ok) out << "VERIFICATION FAILED: cycle witness is invalid\n";
  write_json(o.out, {{"status", r.status_name()}, {"cycle", r.cycle}, {"reason", r.reason}, {"search_nodes", r.nodes}}, m);
  return ok ? kExitOk : kExitVerification;
}

// Builds Delta334(G) x Delta334(H) with identities included and compares it
// to Delta334(G + H).
inline int cmd_kronecker(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  GroupSpec gs = parse_group_spec(o.left), hs = parse_group_spec(o.right);
  auto g = build_delta334(order3_vertices(gs, true), o.threads, {{"group", gs.to_string()}, {"include_identity", true}});
  auto h = build_delta334(order3_vertices(hs, true), o.threads, {{"group", hs.to_string()}, {"include_identity", true}});
  auto prod = kronecker_product(g, h);
  GroupSpec ss = GroupSpec::sum(gs, hs);
  auto direct = build_delta334(order3_vertices(ss, true), o.threads);
  bool same = prod.canonical() == direct.canonical();
  out << "Delta334(" << gs.to_string() << ") x Delta334(" << hs.to_string() << "): " << prod.size() << " vertices, "
      << prod.num_edges() << " edges, " << prod.loops().size() << " loops\n";
  out << "matches Delta334(" << ss.to_string() << "): " << (same ? "yes" : "NO") << "\n";
  if (!o.out.empty()) {
    auto meta = prod.meta();
    meta["matches_direct_sum"] = same;
    prod.set_meta(meta);
    write_graph(o.out, prod, m);
  }
  return same ? kExitOk : kExitVerification;
}

inline int cmd_iso(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  auto g = load_graph(o.in), h = load_graph(o.other);
  auto iso = graph_isomorphic(g, h);
  bool ok = !iso || is_isomorphism(g, h, *iso);
  out << "isomorphic: " << (iso ? "yes" : "no") << "\n";
  if (!ok) out << "VERIFICATION FAILED: mapping is not an isomorphism\n";
  write_json(o.out, {{"isomorphic", iso.has_value()}, {"mapping", iso ? nlohmann::json(*iso) : nlohmann::json(nullptr)}}, m);
  return ok ? kExitOk : kExitVerification;
}

inline int cmd_gen(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  GenerationConfig cfg;
  if (!o.seeds.empty()) cfg.seeds = seeds_from_json(read_json_file(o.seeds));
  cfg.conj_depth = o.depth;
  cfg.target_vertices = o.target;
  cfg.entry_bound = o.entry_bound;
  cfg.family_bound = o.family_bound;
  cfg.validate();
  auto p = generate_portion_graph(cfg, o.threads);
  const auto& s = p.stats;
  out << "portion: " << p.graph.size() << " vertices, " << p.graph.num_edges() << " edges\n";
  out << "  per depth:";
  for (auto n : s.level_sizes) out << " " << n;
  out << "\n  rejected by entry bound: " << s.rejected_entry_bound << "\n";
  out << "  pairs " << s.pairs_total << ", passed trace filter " << s.prefilter_passed << "\n";
  nlohmann::json gen = portion_to_json(p).at("generation");
  write_graph(o.out, p.graph, m, &gen);
  return kExitOk;
}

inline int cmd_verify(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  PortionGraph p = portion_from_json(read_json_file(o.portion));
  auto mats = matrix_labels(p.graph);
  bool ok = true;
  nlohmann::json checks = nlohmann::json::array();
  for (auto q : o.mods) {
    if (!is_prime(q) || (q != 2 && q != 3 && q != 5)) throw std::invalid_argument("--mod must be 2, 3 or 5");
    auto red = verify_no_identity_reduction(mats, q);
    auto pres = verify_edge_preservation(p.graph, q, o.threads);
    out << "mod " << q << ": " << red.violations.size() << " identity reductions, " << pres.morphism.violations.size()
        << " morphism violations over " << pres.morphism.edges_checked << " edges\n";
    nlohmann::json viol = nlohmann::json::array();
    for (const auto& v : pres.morphism.violations) viol.push_back(v.describe());
    nlohmann::json entry{{"p", q},
                         {"identity_reductions", red.violations},
                         {"morphism_violations", viol},
                         {"edges_checked", pres.morphism.edges_checked}};
    ok = ok && red.ok() && pres.ok();
    if (q == 2 && pres.ok()) {
      auto chi = chromatic_number_exact(pres.codomain, Budget::unlimited());
      auto lift = lift_coloring(p.graph, pres.morphism.morphism, chi.best);
      bool proper = lift.coloring.proper && !verify_coloring(p.graph, lift.coloring);
      out << "  lifted coloring: " << lift.coloring.num_colors << " colors, " << (proper ? "proper" : "NOT proper") << "\n";
      entry["lifted_coloring"] = {{"colors", lift.coloring.num_colors}, {"proper", proper}, {"coloring", lift.coloring.colors}};
      ok = ok && proper;
    }
    checks.push_back(std::move(entry));
  }
  nlohmann::json j{{"checks", checks}};
  if (o.bounds) {
    auto b = portion_chromatic_bounds(p.graph, budget_of(o), o.threads);
    bool wit = b.upper_witness.proper && !verify_coloring(p.graph, b.upper_witness) && is_clique(p.graph, b.clique_witness);
    out << "chromatic number of the portion: "
        << (b.exact() ? std::to_string(b.upper) : std::to_string(b.lower) + ".." + std::to_string(b.upper))
        << " (upper from " << b.upper_source << ", lower by " << b.lower_certificate.kind_name() << ")\n";
    out << "clique number found: " << b.clique << "\n";
    j["chromatic"] = {{"lower", b.lower},
                      {"upper", b.upper},
                      {"upper_source", b.upper_source},
                      {"coloring", b.upper_witness.colors},
                      {"lower_certificate",
                       {{"kind", b.lower_certificate.kind_name()},
                        {"bound", b.lower_certificate.bound},
                        {"vertices", b.lower_certificate.witness}}},
                      {"clique", b.clique_witness}};
    ok = ok && wit;
  }
  out << (ok ? "all checks passed" : "VERIFICATION FAILED") << "\n";
  j["ok"] = ok;
  write_json(o.out, j, m);
  return ok ? kExitOk : kExitVerification;
}

inline std::string manifest_comment(const RunManifest& m) {
  std::string s = m.to_json().dump();
  for (std::size_t i = s.find("--"); i != std::string::npos; i = s.find("--", i)) s.replace(i, 2, "- -");
  return s;
}

inline int cmd_export(const CliOptions& o, const RunManifest& m, std::ostream& out) {
  auto g = load_graph(o.in);
  std::string text;
  if (o.format == "dot") text = "// manifest: " + manifest_comment(m) + "\n" + to_dot(g);
  else {
    text = to_graphml(g);
    text.insert(text.find('\n') + 1, "<!-- manifest: " + manifest_comment(m) + " -->\n");
  }
  if (o.out.empty()) out << text;
  else write_text_file(o.out, text);
  return kExitOk;
}

}  // namespace detail

// Parses argv and runs one subcommand. Never throws.
inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  detail::CliOptions o;
  o.node_budget = default_node_budget();
  CLI::App app{"Build and analyse 334-triangle graphs of finite groups and of SL3(Z) portions", "delta334"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto add_budget = [&](CLI::App* s) {
    s->add_option("--node-budget", o.node_budget, "search node limit (env DELTA334_NODE_BUDGET sets the default)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--time-budget", o.time_budget, "wall-clock limit in seconds; runs that hit it are not reproducible")
        ->check(CLI::PositiveNumber);
  };
  auto add_threads = [&](CLI::App* s) {
    s->add_option("--threads", o.threads, "worker threads (0 = DELTA334_THREADS or all cores)")->capture_default_str();
  };
  auto add_out = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--out", o.out, "output file");
    if (required) opt->required();
  };
  auto add_in = [&](CLI::App* s) { s->add_option("--in", o.in, "graph JSON file")->required(); };

  std::vector<std::pair<CLI::App*, int (*)(const detail::CliOptions&, const RunManifest&, std::ostream&)>> subs;

  auto* en = app.add_subcommand("enumerate", "list the elements x with x^3 = e");
  en->add_option("--group", o.group, "group spec, e.g. S4, A5, SL3(2), sum(S4,Z3)")->required();
  en->add_flag("--with-identity", o.with_identity, "include the identity");
  en->add_flag("--classes", o.classes, "also split them into conjugacy classes");
  add_out(en, false);
  subs.emplace_back(en, detail::cmd_enumerate);

  auto* gr = app.add_subcommand("graph", "build the 334-triangle graph of a finite group");
  gr->add_option("--group", o.group, "group spec")->required();
  gr->add_flag("--with-identity", o.with_identity, "include the identity as a looped vertex");
  add_out(gr, true);
  add_threads(gr);
  subs.emplace_back(gr, detail::cmd_graph);

  auto* st = app.add_subcommand("stats", "compute and verify the full invariant report");
  add_in(st);
  add_out(st, false);
  st->add_flag("--no-cycles", o.no_cycles, "skip the cycle-length census");
  st->add_flag("--no-hamilton", o.no_hamilton, "skip the Hamiltonian cycle search");
  add_budget(st);
  subs.emplace_back(st, detail::cmd_stats);

  auto* co = app.add_subcommand("color", "exact chromatic number with certificates");
  add_in(co);
  add_out(co, false);
  add_budget(co);
  subs.emplace_back(co, detail::cmd_color);

  auto* cl = app.add_subcommand("clique", "maximum clique");
  add_in(cl);
  add_out(cl, false);
  add_budget(cl);
  subs.emplace_back(cl, detail::cmd_clique);

  auto* cy = app.add_subcommand("cycles", "cycle-length census");
  add_in(cy);
  add_out(cy, false);
  cy->add_option("--min", o.min_len, "shortest length")->check(CLI::Range(3, 1 << 20))->capture_default_str();
  cy->add_option("--max", o.max_len, "longest length (0 = vertex count)")->capture_default_str();
  add_budget(cy);
  subs.emplace_back(cy, detail::cmd_cycles);

  auto* ha = app.add_subcommand("hamilton", "Hamiltonian cycle search");
  add_in(ha);
  add_out(ha, false);
  add_budget(ha);
  subs.emplace_back(ha, detail::cmd_hamilton);

  auto* kr = app.add_subcommand("kronecker", "Kronecker product of two group graphs, checked against the direct sum");
  kr->add_option("--left", o.left, "first group spec")->required();
  kr->add_option("--right", o.right, "second group spec")->required();
  add_out(kr, false);
  add_threads(kr);
  subs.emplace_back(kr, detail::cmd_kronecker);

  auto* is = app.add_subcommand("iso", "graph isomorphism test");
  add_in(is);
  is->add_option("--other", o.other, "second graph JSON file")->required();
  add_out(is, false);
  subs.emplace_back(is, detail::cmd_iso);

  auto* ge = app.add_subcommand("gen-sl3z", "generate a finite portion of the SL3(Z) graph");
  add_out(ge, true);
  ge->add_option("--seeds", o.seeds, "JSON list of row-major 9-integer seed matrices");
  ge->add_option("--depth", o.depth, "conjugation depth")->capture_default_str();
  ge->add_option("--target", o.target, "vertex target")->check(CLI::PositiveNumber)->capture_default_str();
  ge->add_option("--entry-bound", o.entry_bound, "largest allowed absolute entry")->check(CLI::PositiveNumber)->capture_default_str();
  ge->add_option("--family-bound", o.family_bound, "parameter range of the explicit order-3 family (0 = off)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_threads(ge);
  subs.emplace_back(ge, detail::cmd_gen);

  auto* ve = app.add_subcommand("verify", "check reduction and coloring-lift properties of a portion");
  ve->add_option("--portion", o.portion, "portion JSON file")->required();
  ve->add_option("--mod", o.mods, "primes to reduce by (2, 3, 5)")->capture_default_str();
  ve->add_flag("--bounds", o.bounds, "also bound the chromatic number of the portion");
  add_out(ve, false);
  add_budget(ve);
  add_threads(ve);
  subs.emplace_back(ve, detail::cmd_verify);

  auto* ex = app.add_subcommand("export", "write DOT or GraphML");
  add_in(ex);
  ex->add_option("--format", o.format, "dot or graphml")->check(CLI::IsMember({"dot", "graphml"}))->capture_default_str();
  add_out(ex, false);
  subs.emplace_back(ex, detail::cmd_export);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (auto& [sub, fn] : subs) {
    if (!sub->parsed()) continue;
    try {
      return fn(o, detail::make_manifest(*sub, o), out);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
    }
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace delta334

#pragma once
// JSON, DOT and GraphML serialization for triangle graphs and SL3(Z) portions.
//
// Labels are stored compactly; the graph's "carrier" meta entry says how to
// read them back:
//   perm(n)    image array, 0-based
//   cyclic(m)  integer residue
//   int3       9 integers, row-major
//   mod3(p)    9 residues, row-major
//   mod2(p)    4 residues, row-major
//   sum(A,B)   [left, right]

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "graph.hpp"
#include "sl3z_gen.hpp"

namespace delta334 {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string carrier_descriptor(const GroupElement& x) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Permutation>) return "perm(" + std::to_string(v.degree()) + ")";
        else if constexpr (std::is_same_v<T, Residue>) return "cyclic(" + std::to_string(v.modulus) + ")";
        else if constexpr (std::is_same_v<T, IntMatrix3>) return "int3";
        else if constexpr (std::is_same_v<T, ModMatrix3>) return "mod3(" + std::to_string(v.modulus()) + ")";
        else if constexpr (std::is_same_v<T, ModMatrix2>) return "mod2(" + std::to_string(v.modulus()) + ")";
        else return "sum(" + carrier_descriptor(*v.left) + "," + carrier_descriptor(*v.right) + ")";
      },
      x.value());
}

inline nlohmann::json element_to_json(const GroupElement& x) {
  return std::visit(
      [&](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Permutation>) return v.images();
        else if constexpr (std::is_same_v<T, Residue>) return v.value;
        else if constexpr (std::is_same_v<T, DirectSumElement>)
          return nlohmann::json::array({element_to_json(*v.left), element_to_json(*v.right)});
        else return v.entries();
      },
      x.value());
}

namespace detail {

// Parsed form of a carrier descriptor.
struct Carrier {
  std::string kind;  // perm, cyclic, int3, mod3, mod2, sum
  std::int64_t param = 0;
  std::shared_ptr<Carrier> left, right;
};

inline Carrier parse_carrier(std::string_view s, std::size_t& pos) {
  auto fail = [&](const std::string& why) -> Carrier {
    throw FormatError("bad carrier descriptor '" + std::string(s) + "': " + why);
  };
  std::size_t start = pos;
  while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
  Carrier c;
  c.kind = std::string(s.substr(start, pos - start));
  if (c.kind == "int3") return c;
  if (pos >= s.size() || s[pos] != '(') return fail("expected '('");
  ++pos;
  if (c.kind == "sum") {
    c.left = std::make_shared<Carrier>(parse_carrier(s, pos));
    if (pos >= s.size() || s[pos] != ',') return fail("expected ','");
    ++pos;
    c.right = std::make_shared<Carrier>(parse_carrier(s, pos));
  } else if (c.kind == "perm" || c.kind == "cyclic" || c.kind == "mod3" || c.kind == "mod2") {
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (digits == pos || pos - digits > 9) return fail("expected a parameter");
    c.param = std::stoll(std::string(s.substr(digits, pos - digits)));
  } else {
    return fail("unknown carrier '" + c.kind + "'");
  }
  if (pos >= s.size() || s[pos] != ')') return fail("expected ')'");
  ++pos;
  return c;
}

template <std::size_t N>
std::array<std::uint32_t, N> fixed_array(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != N) throw FormatError("expected an array of " + std::to_string(N) + " integers");
  std::array<std::uint32_t, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = j[i].get<std::uint32_t>();
  return out;
}

inline GroupElement element_from_json(const Carrier& c, const nlohmann::json& j) {
  if (c.kind == "perm") {
    auto images = j.get<std::vector<int>>();
    if (static_cast<std::int64_t>(images.size()) != c.param) throw FormatError("permutation label has wrong degree");
    return Permutation::from_images(images);
  }
  if (c.kind == "cyclic") {
    if (c.param < 1) throw FormatError("cyclic modulus must be positive");
    auto v = j.get<std::int64_t>();
    if (v < 0 || v >= c.param) throw FormatError("residue out of range");
    return Residue::make(v, c.param);
  }
  if (c.kind == "int3") {
    if (!j.is_array() || j.size() != 9) throw FormatError("int3 label must have 9 entries");
    IntMatrix3::Entries e{};
    for (std::size_t i = 0; i < 9; ++i) e[i] = j[i].get<std::int64_t>();
    return IntMatrix3(e);
  }
  if (c.kind == "mod3") return ModMatrix3(fixed_array<9>(j), static_cast<std::uint32_t>(c.param));
  if (c.kind == "mod2") return ModMatrix2(fixed_array<4>(j), static_cast<std::uint32_t>(c.param));
  if (!j.is_array() || j.size() != 2) throw FormatError("sum label must be a pair");
  return GroupElement::direct_sum(element_from_json(*c.left, j[0]), element_from_json(*c.right, j[1]));
}

}  // namespace detail

inline GroupElement element_from_json(std::string_view carrier, const nlohmann::json& j) {
  std::size_t pos = 0;
  auto c = detail::parse_carrier(carrier, pos);
  if (pos != carrier.size()) throw FormatError("trailing text in carrier descriptor");
  try {
    return detail::element_from_json(c, j);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad label: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad label: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Graph files
// ---------------------------------------------------------------------------

inline nlohmann::json graph_to_json(const TriangleGraph& g) {
  nlohmann::json meta = g.meta();
  if (g.has_labels() && g.size() > 0) meta["carrier"] = carrier_descriptor(g.label(0));
  nlohmann::json vertices = nlohmann::json::array();
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    nlohmann::json entry{{"id", v}};
    if (g.has_labels()) entry["label"] = element_to_json(g.label(v));
    vertices.push_back(std::move(entry));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return {{"meta", std::move(meta)}, {"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"loops", g.loops()}};
}

inline TriangleGraph graph_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw FormatError("graph file must be a JSON object");
    for (const char* field : {"meta", "vertices", "edges"})
      if (!j.contains(field)) throw FormatError(std::string("graph file lacks \"") + field + "\"");
    const auto& verts = j.at("vertices");
    if (!verts.is_array()) throw FormatError("\"vertices\" must be an array");
    nlohmann::json meta = j.at("meta");
    std::string carrier = meta.value("carrier", std::string());
    std::vector<GroupElement> labels;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (verts[i].at("id").get<std::size_t>() != i) throw FormatError("vertex ids must be 0..n-1 in order");
      if (verts[i].contains("label")) {
        if (carrier.empty()) throw FormatError("labelled vertices need a \"carrier\" meta entry");
        labels.push_back(element_from_json(carrier, verts[i].at("label")));
      }
    }
    if (!labels.empty() && labels.size() != verts.size()) throw FormatError("either every vertex or none carries a label");
    meta.erase("carrier");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("edges must be [i, j] pairs");
      edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
    }
    std::vector<std::uint32_t> loops;
    if (j.contains("loops")) loops = j.at("loops").get<std::vector<std::uint32_t>>();
    return TriangleGraph(verts.size(), std::move(edges), std::move(loops), std::move(labels), std::move(meta));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed graph file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed graph file: ") + e.what());
  }
}

// One canonical text form: sorted keys, no whitespace, trailing newline.
inline std::string dump_canonical(const nlohmann::json& j) { return j.dump() + "\n"; }

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
  if (!out) throw FormatError("write failed for " + path);
}

// ---------------------------------------------------------------------------
// Portions
// ---------------------------------------------------------------------------

inline nlohmann::json matrix_to_json(const IntMatrix3& m) { return m.entries(); }

inline IntMatrix3 matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 9) throw FormatError("matrix must be a row-major array of 9 integers");
  IntMatrix3::Entries e{};
  for (std::size_t i = 0; i < 9; ++i) e[i] = j[i].get<std::int64_t>();
  try {
    return IntMatrix3(e);
  } catch (const std::invalid_argument& ex) {
    throw FormatError(std::string("bad matrix: ") + ex.what());
  }
}

inline std::vector<IntMatrix3> seeds_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("seeds file must be a JSON list of 9-integer arrays");
  std::vector<IntMatrix3> out;
  try {
    for (const auto& m : j) out.push_back(matrix_from_json(m));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad seed: ") + e.what());
  }
  return out;
}

inline nlohmann::json config_to_json(const GenerationConfig& cfg) {
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& s : cfg.seeds) seeds.push_back(matrix_to_json(s));
  return {{"seeds", std::move(seeds)},
          {"conj_depth", cfg.conj_depth},
          {"entry_bound", cfg.entry_bound},
          {"target_vertices", cfg.target_vertices},
          {"family_bound", cfg.family_bound}};
}

inline GenerationConfig config_from_json(const nlohmann::json& j) {
  GenerationConfig cfg;
  try {
    cfg.seeds = seeds_from_json(j.at("seeds"));
    cfg.conj_depth = j.at("conj_depth").get<std::size_t>();
    cfg.entry_bound = j.at("entry_bound").get<std::int64_t>();
    cfg.target_vertices = j.at("target_vertices").get<std::size_t>();
    cfg.family_bound = j.at("family_bound").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad generation block: ") + e.what());
  }
  return cfg;
}

inline nlohmann::json stats_to_json(const GenerationStats& s) {
  return {{"level_sizes", s.level_sizes},
          {"rejected_entry_bound", s.rejected_entry_bound},
          {"reached_target", s.reached_target},
          {"closed", s.closed},
          {"pairs_total", s.pairs_total},
          {"prefilter_passed", s.prefilter_passed},
          {"edges", s.edges}};
}

inline GenerationStats stats_from_json(const nlohmann::json& j) {
  GenerationStats s;
  try {
    s.level_sizes = j.at("level_sizes").get<std::vector<std::size_t>>();
    s.rejected_entry_bound = j.at("rejected_entry_bound").get<std::size_t>();
    s.reached_target = j.at("reached_target").get<bool>();
    s.closed = j.at("closed").get<bool>();
    s.pairs_total = j.at("pairs_total").get<std::uint64_t>();
    s.prefilter_passed = j.at("prefilter_passed").get<std::uint64_t>();
    s.edges = j.at("edges").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad generation stats: ") + e.what());
  }
  return s;
}

inline nlohmann::json portion_to_json(const PortionGraph& p) {
  nlohmann::json j = graph_to_json(p.graph);
  j["generation"] = {{"config", config_to_json(p.config)}, {"stats", stats_to_json(p.stats)}};
  return j;
}

inline PortionGraph portion_from_json(const nlohmann::json& j) {
  PortionGraph p;
  p.graph = graph_from_json(j);
  if (!j.contains("generation")) throw FormatError("portion file lacks a \"generation\" block");
  const auto& gen = j.at("generation");
  if (!gen.contains("config") || !gen.contains("stats")) throw FormatError("generation block needs config and stats");
  p.config = config_from_json(gen.at("config"));
  p.stats = stats_from_json(gen.at("stats"));
  for (const auto& x : p.graph.labels())
    if (!x.holds<IntMatrix3>()) throw FormatError("portion vertices must be integer matrices");
  return p;
}

// ---------------------------------------------------------------------------
// DOT and GraphML
// ---------------------------------------------------------------------------

namespace detail {

inline std::string vertex_text(const TriangleGraph& g, std::uint32_t v) {
  return g.has_labels() ? to_string(g.label(v)) : std::to_string(v);
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  return out;
}

}  // namespace detail

inline std::string to_dot(const TriangleGraph& g, std::string_view name = "delta334") {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (std::uint32_t v = 0; v < g.size(); ++v)
    out << "  " << v << " [label=\"" << detail::dot_escape(detail::vertex_text(g, v)) << "\"];\n";
  for (auto [a, b] : g.edges()) out << "  " << a << " -- " << b << ";\n";
  for (auto v : g.loops()) out << "  " << v << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string to_graphml(const TriangleGraph& g) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
         "  <key id=\"element\" for=\"node\" attr.name=\"element\" attr.type=\"string\"/>\n"
         "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    out << "    <node id=\"n" << v << "\">\n";
    out << "      <data key=\"label\">" << detail::xml_escape(detail::vertex_text(g, v)) << "</data>\n";
    if (g.has_labels()) out << "      <data key=\"element\">" << detail::xml_escape(element_to_json(g.label(v)).dump()) << "</data>\n";
    out << "    </node>\n";
  }
  std::size_t id = 0;
  auto edge = [&](std::uint32_t a, std::uint32_t b) {
    out << "    <edge id=\"e" << id++ << "\" source=\"n" << a << "\" target=\"n" << b << "\"/>\n";
  };
  for (auto [a, b] : g.edges()) edge(a, b);
  for (auto v : g.loops()) edge(v, v);
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

}  // namespace delta334

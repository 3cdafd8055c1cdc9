#pragma once

// Enumeration of the supported finite groups, their elements of order
// dividing three, conjugacy classes and generated subgroups.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "delta334/algebra.hpp"

namespace delta334 {

// Enumerated groups may not exceed this order.
inline constexpr std::uint64_t kGroupOrderGuard = 1'000'000;

struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupSpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GroupSpec {
  enum class Kind { kSymmetric, kAlternating, kSL3, kSL2, kCyclic, kSum };

  Kind kind = Kind::kCyclic;
  int param = 1;  // n for S_n / A_n, p for SL(p), m for Z_m
  std::shared_ptr<const GroupSpec> left;
  std::shared_ptr<const GroupSpec> right;

  static GroupSpec symmetric(int n) { return {Kind::kSymmetric, n, nullptr, nullptr}; }
  static GroupSpec alternating(int n) { return {Kind::kAlternating, n, nullptr, nullptr}; }
  static GroupSpec sl3(int p) { return {Kind::kSL3, p, nullptr, nullptr}; }
  static GroupSpec sl2(int p) { return {Kind::kSL2, p, nullptr, nullptr}; }
  static GroupSpec cyclic(int m) { return {Kind::kCyclic, m, nullptr, nullptr}; }
  static GroupSpec sum(GroupSpec a, GroupSpec b) {
    return {Kind::kSum, 0, std::make_shared<const GroupSpec>(std::move(a)),
            std::make_shared<const GroupSpec>(std::move(b))};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::kSymmetric: return "S" + std::to_string(param);
      case Kind::kAlternating: return "A" + std::to_string(param);
      case Kind::kSL3: return "SL3(" + std::to_string(param) + ")";
      case Kind::kSL2: return "SL2(" + std::to_string(param) + ")";
      case Kind::kCyclic: return "Z" + std::to_string(param);
      case Kind::kSum: return "sum(" + left->to_string() + "," + right->to_string() + ")";
    }
    return {};
  }

  // Group order from the closed formulas; used for the guard.
  std::uint64_t order() const {
    auto fact = [](int n) {
      std::uint64_t f = 1;
      for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
      return f;
    };
    std::uint64_t p = static_cast<std::uint64_t>(param);
    switch (kind) {
      case Kind::kSymmetric: return fact(param);
      case Kind::kAlternating: return param < 2 ? 1 : fact(param) / 2;
      case Kind::kSL3: return p * p * p * (p * p * p - 1) * (p * p - 1);
      case Kind::kSL2: return p * (p * p - 1);
      case Kind::kCyclic: return p;
      case Kind::kSum: {
        std::uint64_t a = left->order(), b = right->order();
        if (a > kGroupOrderGuard || b > kGroupOrderGuard) return kGroupOrderGuard + 1;
        return a * b;
      }
    }
    return 0;
  }

  void validate() const {
    switch (kind) {
      case Kind::kSymmetric:
      case Kind::kAlternating:
        if (param < 1 || param > 6) throw GroupSpecError("S_n / A_n require 1 <= n <= 6");
        break;
      case Kind::kSL3:
      case Kind::kSL2:
        if (param != 2 && param != 3 && param != 5) throw GroupSpecError("SL2/SL3 require p in {2, 3, 5}");
        break;
      case Kind::kCyclic:
        if (param < 1) throw GroupSpecError("Z_m requires m >= 1");
        break;
      case Kind::kSum:
        left->validate();
        right->validate();
        break;
    }
    if (order() > kGroupOrderGuard) throw GuardExceeded("group order exceeds " + std::to_string(kGroupOrderGuard));
  }
};

// Grammar: S4 | A5 | SL3(2) | SL2(3) | Z3 | sum(G, H), whitespace ignored.
inline GroupSpec parse_group_spec(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::size_t pos = 0;

  auto read_int = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw GroupSpecError("expected a number in group spec '" + text + "'");
    if (pos - start > 7) throw GroupSpecError("number too large in group spec '" + text + "'");
    return std::stoi(s.substr(start, pos - start));
  };
  auto expect = [&](char c) {
    if (pos >= s.size() || s[pos] != c) throw GroupSpecError(std::string("expected '") + c + "' in group spec '" + text + "'");
    ++pos;
  };
  auto starts = [&](const char* lit) { return s.compare(pos, std::char_traits<char>::length(lit), lit) == 0; };

  std::function<GroupSpec()> parse = [&]() -> GroupSpec {
    if (starts("sum(")) {
      pos += 4;
      GroupSpec a = parse();
      expect(',');
      GroupSpec b = parse();
      expect(')');
      return GroupSpec::sum(std::move(a), std::move(b));
    }
    for (auto [lit, kind] : {std::pair{"SL3(", GroupSpec::Kind::kSL3}, std::pair{"SL2(", GroupSpec::Kind::kSL2}}) {
      if (starts(lit)) {
        pos += 4;
        int p = read_int();
        expect(')');
        return {kind, p, nullptr, nullptr};
      }
    }
    if (pos < s.size() && (s[pos] == 'S' || s[pos] == 'A' || s[pos] == 'Z')) {
      char c = s[pos++];
      int n = read_int();
      if (c == 'S') return GroupSpec::symmetric(n);
      if (c == 'A') return GroupSpec::alternating(n);
      return GroupSpec::cyclic(n);
    }
    throw GroupSpecError("unknown group spec '" + text + "'");
  };

  GroupSpec spec = parse();
  if (pos != s.size()) throw GroupSpecError("trailing characters in group spec '" + text + "'");
  spec.validate();
  return spec;
}

// Ordered, duplicate-free list of elements sorted by ElementKey.
struct ElementSet {
  std::vector<GroupElement> elements;
  std::vector<ElementKey> keys;
  bool includes_identity = false;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
  const GroupElement& operator[](std::size_t i) const { return elements[i]; }

  // Sorts by key and drops duplicates.
  static ElementSet from_elements(std::vector<GroupElement> items) {
    std::vector<std::pair<ElementKey, GroupElement>> keyed;
    keyed.reserve(items.size());
    for (auto& x : items) keyed.emplace_back(x.key(), std::move(x));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ElementSet out;
    for (auto& [k, x] : keyed) {
      if (!out.keys.empty() && out.keys.back() == k) continue;
      if (x.is_identity()) out.includes_identity = true;
      out.keys.push_back(std::move(k));
      out.elements.push_back(std::move(x));
    }
    return out;
  }

  std::optional<std::size_t> index_of(const ElementKey& k) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || *it != k) return std::nullopt;
    return static_cast<std::size_t>(it - keys.begin());
  }

  bool contains(const GroupElement& x) const { return index_of(x.key()).has_value(); }

  friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.keys == b.keys; }
};

namespace detail {

inline std::vector<GroupElement> enumerate_raw(const GroupSpec& spec) {
  std::vector<GroupElement> out;
  switch (spec.kind) {
    case GroupSpec::Kind::kSymmetric:
    case GroupSpec::Kind::kAlternating: {
      std::vector<int> images(static_cast<std::size_t>(spec.param));
      std::iota(images.begin(), images.end(), 0);
      do {
        auto p = Permutation::from_images(images);
        if (spec.kind == GroupSpec::Kind::kSymmetric || p.is_even()) out.emplace_back(p);
      } while (std::next_permutation(images.begin(), images.end()));
      break;
    }
    case GroupSpec::Kind::kCyclic:
      for (int v = 0; v < spec.param; ++v) out.emplace_back(Residue::make(v, spec.param));
      break;
    case GroupSpec::Kind::kSL2: {
      const auto p = static_cast<std::uint32_t>(spec.param);
      ModMatrix2::Entries e{};
      for (e[0] = 0; e[0] < p; ++e[0])
        for (e[1] = 0; e[1] < p; ++e[1])
          for (e[2] = 0; e[2] < p; ++e[2])
            for (e[3] = 0; e[3] < p; ++e[3]) {
              auto m = ModMatrix2::trusted(e, p);
              if (m.determinant() == 1) out.emplace_back(m);
            }
      break;
    }
    case GroupSpec::Kind::kSL3: {
      const auto p = static_cast<std::uint32_t>(spec.param);
      if (p <= 3) {
        // Brute force over all p^9 entry tuples.
        std::uint64_t total = 1;
        for (int i = 0; i < 9; ++i) total *= p;
        ModMatrix3::Entries e{};
        for (std::uint64_t code = 0; code < total; ++code) {
          std::uint64_t c = code;
          for (std::size_t i = 0; i < 9; ++i) {
            e[8 - i] = static_cast<std::uint32_t>(c % p);
            c /= p;
          }
          auto m = ModMatrix3::trusted(e, p);
          if (m.determinant() == 1) out.emplace_back(m);
        }
      } else {
        // Row by row: det is linear in the third row, r3 . (r1 x r2) == 1.
        const std::uint64_t q = p;
        std::uint64_t rows = q * q * q;
        auto row = [&](std::uint64_t code, std::array<std::uint64_t, 3>& r) {
          r[2] = code % q;
          r[1] = (code / q) % q;
          r[0] = code / (q * q);
        };
        std::array<std::uint64_t, 3> r1{}, r2{}, r3{};
        for (std::uint64_t a = 1; a < rows; ++a) {
          row(a, r1);
          for (std::uint64_t b = 1; b < rows; ++b) {
            row(b, r2);
            std::array<std::uint64_t, 3> n{(r1[1] * r2[2] + q * q - r1[2] * r2[1]) % q,
                                           (r1[2] * r2[0] + q * q - r1[0] * r2[2]) % q,
                                           (r1[0] * r2[1] + q * q - r1[1] * r2[0]) % q};
            if (n[0] == 0 && n[1] == 0 && n[2] == 0) continue;
            for (std::uint64_t c = 0; c < rows; ++c) {
              row(c, r3);
              if ((r3[0] * n[0] + r3[1] * n[1] + r3[2] * n[2]) % q != 1) continue;
              ModMatrix3::Entries e{};
              for (std::size_t i = 0; i < 3; ++i) {
                e[i] = static_cast<std::uint32_t>(r1[i]);
                e[3 + i] = static_cast<std::uint32_t>(r2[i]);
                e[6 + i] = static_cast<std::uint32_t>(r3[i]);
              }
              out.emplace_back(ModMatrix3::trusted(e, p));
            }
          }
        }
      }
      break;
    }
    case GroupSpec::Kind::kSum: {
      auto a = enumerate_raw(*spec.left);
      auto b = enumerate_raw(*spec.right);
      out.reserve(a.size() * b.size());
      for (const auto& x : a)
        for (const auto& y : b) out.push_back(GroupElement::direct_sum(x, y));
      break;
    }
  }
  return out;
}

}  // namespace detail

// All elements of the group, each once, sorted by key.
inline ElementSet enumerate_group(const GroupSpec& spec) {
  spec.validate();
  return ElementSet::from_elements(detail::enumerate_raw(spec));
}

// Elements of order dividing three; the identity only when requested.
inline ElementSet order3_vertices(const ElementSet& group, bool include_identity = false) {
  ElementSet out;
  for (std::size_t i = 0; i < group.size(); ++i) {
    const auto& x = group[i];
    if (!x.power(3).is_identity()) continue;
    if (x.is_identity()) {
      if (!include_identity) continue;
      out.includes_identity = true;
    }
    out.elements.push_back(x);
    out.keys.push_back(group.keys[i]);
  }
  return out;
}

inline ElementSet order3_vertices(const GroupSpec& spec, bool include_identity = false) {
  return order3_vertices(enumerate_group(spec), include_identity);
}

// Partition of `subset` into classes under conjugation by all of `group`.
inline std::vector<ElementSet> conjugacy_classes(const ElementSet& group, const ElementSet& subset) {
  std::vector<bool> assigned(subset.size(), false);
  std::vector<GroupElement> inverses;
  inverses.reserve(group.size());
  for (const auto& g : group.elements) inverses.push_back(g.inverse());

  std::vector<ElementSet> classes;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (assigned[i]) continue;
    std::vector<GroupElement> members;
    for (std::size_t j = 0; j < group.size(); ++j) {
      GroupElement c = group[j].compose(subset[i]).compose(inverses[j]);
      if (auto idx = subset.index_of(c.key()); idx && !assigned[*idx]) {
        assigned[*idx] = true;
        members.push_back(std::move(c));
      }
    }
    classes.push_back(ElementSet::from_elements(std::move(members)));
  }
  return classes;
}

inline std::vector<ElementSet> conjugacy_classes(const GroupSpec& spec, const ElementSet& subset) {
  return conjugacy_classes(enumerate_group(spec), subset);
}

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closure of the generators under composition. Throws CapExceeded once the
// closure grows beyond `cap` elements.
inline ElementSet generated_subgroup(const ElementSet& generators, std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("generated_subgroup: cap must be at least 1");
  if (generators.empty()) return {};
  std::unordered_set<ElementKey> seen;
  std::vector<GroupElement> found;
  std::deque<GroupElement> queue;
  auto add = [&](GroupElement x) {
    auto k = x.key();
    if (!seen.insert(std::move(k)).second) return;
    if (seen.size() > cap) throw CapExceeded("generated subgroup exceeds cap " + std::to_string(cap));
    found.push_back(x);
    queue.push_back(std::move(x));
  };
  add(generators[0].identity_like());
  for (const auto& g : generators.elements) add(g);
  while (!queue.empty()) {
    GroupElement x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators.elements) add(x.compose(g));
  }
  return ElementSet::from_elements(std::move(found));
}

}  // namespace delta334

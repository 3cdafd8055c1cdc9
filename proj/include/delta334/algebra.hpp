#pragma once

// Exact arithmetic for the group-element carriers used to build 334-triangle
// graphs: small permutations, cyclic residues, 3x3 integer matrices with
// checked arithmetic, 3x3 and 2x2 matrices over Z/pZ, and direct-sum pairs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace delta334 {

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct CarrierMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Default magnitude bound for IntMatrix3 entries (62 bits).
inline constexpr std::int64_t kDefaultOverflowBound = std::int64_t{1} << 62;

namespace detail {

inline std::int64_t check_bound(std::int64_t v, std::int64_t bound) {
  if (v > bound || v < -bound) throw OverflowError("integer entry exceeds overflow bound");
  return v;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b, std::int64_t bound) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer multiplication overflow");
  return check_bound(r, bound);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b, std::int64_t bound) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer addition overflow");
  return check_bound(r, bound);
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b, std::int64_t bound) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer subtraction overflow");
  return check_bound(r, bound);
}

inline void put_i64(std::string& out, std::int64_t v) {
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

}  // namespace detail

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Permutation on {0, ..., n-1}, n <= 12. Composition applies the right
// factor first: (x * y)(i) = x(y(i)). With this convention
// (1 2 3)(1 2 4) = (1 3)(2 4) holds literally.
// ---------------------------------------------------------------------------
class Permutation {
 public:
  static constexpr std::size_t kMaxDegree = 12;

  Permutation() = default;

  static Permutation identity(std::size_t n) {
    if (n > kMaxDegree) throw std::invalid_argument("permutation degree exceeds 12");
    Permutation p;
    p.n_ = static_cast<std::uint8_t>(n);
    for (std::size_t i = 0; i < n; ++i) p.images_[i] = static_cast<std::uint8_t>(i);
    return p;
  }

  static Permutation from_images(const std::vector<int>& images) {
    if (images.size() > kMaxDegree) throw std::invalid_argument("permutation degree exceeds 12");
    Permutation p;
    p.n_ = static_cast<std::uint8_t>(images.size());
    std::array<bool, kMaxDegree> seen{};
    for (std::size_t i = 0; i < images.size(); ++i) {
      int v = images[i];
      if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("permutation images are not a bijection");
      seen[static_cast<std::size_t>(v)] = true;
      p.images_[i] = static_cast<std::uint8_t>(v);
    }
    return p;
  }

  // Parses 1-based cycle notation such as "(123)(45)" or "(1 2 3)".
  // Points above 9 need the space-separated form.
  static Permutation from_cycles(std::string_view text, std::size_t n) {
    Permutation p = identity(n);
    std::size_t i = 0;
    while (i < text.size()) {
      if (text[i] != '(') {
        if (text[i] == ' ') { ++i; continue; }
        throw std::invalid_argument("malformed cycle notation");
      }
      auto close = text.find(')', i);
      if (close == std::string_view::npos) throw std::invalid_argument("unterminated cycle");
      std::string_view body = text.substr(i + 1, close - i - 1);
      std::vector<int> points;
      bool spaced = body.find(' ') != std::string_view::npos;
      if (spaced) {
        std::size_t k = 0;
        while (k < body.size()) {
          while (k < body.size() && body[k] == ' ') ++k;
          std::size_t e = k;
          while (e < body.size() && body[e] != ' ') ++e;
          if (e > k) points.push_back(std::stoi(std::string(body.substr(k, e - k))));
          k = e;
        }
      } else {
        for (char c : body) {
          if (c < '0' || c > '9') throw std::invalid_argument("malformed cycle notation");
          points.push_back(c - '0');
        }
      }
      for (int pt : points)
        if (pt < 1 || static_cast<std::size_t>(pt) > n) throw std::invalid_argument("cycle point out of range");
      // Cycles given left to right compose right-first, matching operator order.
      Permutation c = identity(n);
      for (std::size_t k = 0; k < points.size(); ++k)
        c.images_[static_cast<std::size_t>(points[k] - 1)] =
            static_cast<std::uint8_t>(points[(k + 1) % points.size()] - 1);
      p = p.compose(c);
      i = close + 1;
    }
    return p;
  }

  std::size_t degree() const { return n_; }
  int operator[](std::size_t i) const { return images_[i]; }

  std::vector<int> images() const { return {images_.begin(), images_.begin() + n_}; }

  Permutation compose(const Permutation& right) const {
    if (n_ != right.n_) throw CarrierMismatch("permutation degrees differ");
    Permutation r;
    r.n_ = n_;
    for (std::size_t i = 0; i < n_; ++i) r.images_[i] = images_[right.images_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.n_ = n_;
    for (std::size_t i = 0; i < n_; ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (images_[i] != i) return false;
    return true;
  }

  bool is_even() const {
    std::size_t transpositions = 0;
    std::array<bool, kMaxDegree> seen{};
    for (std::size_t i = 0; i < n_; ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      transpositions += len - 1;
    }
    return transpositions % 2 == 0;
  }

  // 1-based cycle notation, fixed points omitted; "()" for the identity.
  std::string to_cycles() const {
    std::string out;
    std::array<bool, kMaxDegree> seen{};
    bool wide = n_ > 9;
    for (std::size_t i = 0; i < n_; ++i) {
      if (seen[i] || images_[i] == i) continue;
      out += '(';
      bool first = true;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (wide && !first) out += ' ';
        out += std::to_string(j + 1);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.n_ == b.n_ && std::equal(a.images_.begin(), a.images_.begin() + a.n_, b.images_.begin());
  }

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxDegree> images_{};
};

// ---------------------------------------------------------------------------
// Element of the cyclic group Z/mZ, written additively.
// ---------------------------------------------------------------------------
struct Residue {
  std::int64_t value = 0;
  std::int64_t modulus = 1;

  static Residue make(std::int64_t v, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("cyclic modulus must be positive");
    return {((v % m) + m) % m, m};
  }

  Residue compose(const Residue& o) const {
    if (modulus != o.modulus) throw CarrierMismatch("cyclic moduli differ");
    return {(value + o.value) % modulus, modulus};
  }
  Residue inverse() const { return {(modulus - value) % modulus, modulus}; }
  bool is_identity() const { return value == 0; }
  friend bool operator==(const Residue&, const Residue&) = default;
};

// ---------------------------------------------------------------------------
// 3x3 integer matrix of determinant one. Entries are row-major; every
// arithmetic step is checked against the overflow bound.
// ---------------------------------------------------------------------------
class IntMatrix3 {
 public:
  using Entries = std::array<std::int64_t, 9>;

  IntMatrix3() : IntMatrix3(identity()) {}

  // Throws std::invalid_argument unless det == 1.
  explicit IntMatrix3(const Entries& e, std::int64_t bound = kDefaultOverflowBound) : e_(e) {
    for (auto v : e_) detail::check_bound(v, bound);
    if (determinant(e_, bound) != 1) throw std::invalid_argument("matrix does not have determinant 1");
  }

  static IntMatrix3 identity() {
    IntMatrix3 m(Unchecked{}, Entries{1, 0, 0, 0, 1, 0, 0, 0, 1});
    return m;
  }

  // Elementary matrix I + sign * e_{row,col}, row != col.
  static IntMatrix3 elementary(int row, int col, int sign) {
    Entries e{1, 0, 0, 0, 1, 0, 0, 0, 1};
    e[static_cast<std::size_t>(3 * row + col)] = sign;
    return IntMatrix3(Unchecked{}, e);
  }

  static std::int64_t determinant(const Entries& m, std::int64_t bound = kDefaultOverflowBound) {
    using namespace detail;
    auto minor = [&](int a, int b, int c, int d) {
      return checked_sub(checked_mul(m[a], m[d], bound), checked_mul(m[b], m[c], bound), bound);
    };
    std::int64_t t0 = checked_mul(m[0], minor(4, 5, 7, 8), bound);
    std::int64_t t1 = checked_mul(m[1], minor(3, 5, 6, 8), bound);
    std::int64_t t2 = checked_mul(m[2], minor(3, 4, 6, 7), bound);
    return checked_add(checked_sub(t0, t1, bound), t2, bound);
  }

  const Entries& entries() const { return e_; }
  std::int64_t operator()(int r, int c) const { return e_[static_cast<std::size_t>(3 * r + c)]; }
  std::int64_t det() const { return 1; }

  std::int64_t trace() const { return e_[0] + e_[4] + e_[8]; }

  std::int64_t max_abs_entry() const {
    std::int64_t m = 0;
    for (auto v : e_) m = std::max(m, v < 0 ? -v : v);
    return m;
  }

  IntMatrix3 multiply(const IntMatrix3& o, std::int64_t bound = kDefaultOverflowBound) const {
    using namespace detail;
    Entries r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        std::int64_t acc = 0;
        for (int k = 0; k < 3; ++k)
          acc = checked_add(acc, checked_mul(e_[3 * i + k], o.e_[3 * k + j], bound), bound);
        r[static_cast<std::size_t>(3 * i + j)] = acc;
      }
    return IntMatrix3(Unchecked{}, r);
  }

  IntMatrix3 compose(const IntMatrix3& o) const { return multiply(o); }

  // Adjugate; equals the inverse since det == 1.
  IntMatrix3 inverse(std::int64_t bound = kDefaultOverflowBound) const {
    using namespace detail;
    const auto& m = e_;
    // m[a]*m[b] - m[c]*m[d]
    auto cof = [&](int a, int b, int c, int d) {
      return checked_sub(checked_mul(m[a], m[b], bound), checked_mul(m[c], m[d], bound), bound);
    };
    Entries r{cof(4, 8, 5, 7), cof(2, 7, 1, 8), cof(1, 5, 2, 4),
              cof(5, 6, 3, 8), cof(0, 8, 2, 6), cof(2, 3, 0, 5),
              cof(3, 7, 4, 6), cof(1, 6, 0, 7), cof(0, 4, 1, 3)};
    return IntMatrix3(Unchecked{}, r);
  }

  // trace(this * o) without forming the product.
  std::int64_t trace_of_product(const IntMatrix3& o, std::int64_t bound = kDefaultOverflowBound) const {
    using namespace detail;
    std::int64_t acc = 0;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) acc = checked_add(acc, checked_mul(e_[3 * i + k], o.e_[3 * k + i], bound), bound);
    return acc;
  }

  bool is_identity() const { return e_ == Entries{1, 0, 0, 0, 1, 0, 0, 0, 1}; }

  friend bool operator==(const IntMatrix3&, const IntMatrix3&) = default;
  friend auto operator<=>(const IntMatrix3& a, const IntMatrix3& b) { return a.e_ <=> b.e_; }

 private:
  struct Unchecked {};
  IntMatrix3(Unchecked, const Entries& e) : e_(e) {}
  Entries e_;
};

// ---------------------------------------------------------------------------
// N x N matrix over Z/pZ with determinant 1 (N = 2 or 3).
// ---------------------------------------------------------------------------
template <std::size_t N>
class ModMatrix {
 public:
  static_assert(N == 2 || N == 3);
  using Entries = std::array<std::uint32_t, N * N>;

  ModMatrix() = default;

  // Throws std::invalid_argument unless p is prime and det == 1 (mod p).
  ModMatrix(const Entries& e, std::uint32_t p) : e_(e), p_(p) {
    if (!is_prime(p) || p > 65521) throw std::invalid_argument("modulus must be a prime below 65536");
    for (auto v : e_)
      if (v >= p) throw std::invalid_argument("residue out of range");
    if (determinant() != 1) throw std::invalid_argument("matrix does not have determinant 1 mod p");
  }

  static ModMatrix identity(std::uint32_t p) {
    Entries e{};
    for (std::size_t i = 0; i < N; ++i) e[i * N + i] = 1;
    return ModMatrix(e, p);
  }

  // Skips validation; caller guarantees the invariants.
  static ModMatrix trusted(const Entries& e, std::uint32_t p) {
    ModMatrix m;
    m.e_ = e;
    m.p_ = p;
    return m;
  }

  std::uint32_t modulus() const { return p_; }
  const Entries& entries() const { return e_; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return e_[r * N + c]; }

  std::uint32_t determinant() const {
    const std::uint64_t p = p_;
    auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t { return e_[r * N + c]; };
    if constexpr (N == 2) {
      return static_cast<std::uint32_t>((at(0, 0) * at(1, 1) % p + p - at(0, 1) * at(1, 0) % p) % p);
    } else {
      auto minor = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
        return (at(r0, c0) * at(r1, c1) % p + p - at(r0, c1) * at(r1, c0) % p) % p;
      };
      std::uint64_t d = at(0, 0) * minor(1, 2, 1, 2) % p;
      d = (d + p - at(0, 1) * minor(1, 2, 0, 2) % p) % p;
      d = (d + at(0, 2) * minor(1, 2, 0, 1)) % p;
      return static_cast<std::uint32_t>(d);
    }
  }

  ModMatrix compose(const ModMatrix& o) const {
    if (p_ != o.p_) throw CarrierMismatch("matrix moduli differ");
    Entries r{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < N; ++k) acc += std::uint64_t{e_[i * N + k]} * o.e_[k * N + j];
        r[i * N + j] = static_cast<std::uint32_t>(acc % p_);
      }
    return trusted(r, p_);
  }

  ModMatrix inverse() const {
    const std::uint64_t p = p_;
    Entries r{};
    if constexpr (N == 2) {
      r = {e_[3], static_cast<std::uint32_t>((p - e_[1]) % p), static_cast<std::uint32_t>((p - e_[2]) % p), e_[0]};
    } else {
      auto cof = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        return static_cast<std::uint32_t>((std::uint64_t{e_[a]} * e_[b] % p + p - std::uint64_t{e_[c]} * e_[d] % p) % p);
      };
      r = {cof(4, 8, 5, 7), cof(2, 7, 1, 8), cof(1, 5, 2, 4),
           cof(5, 6, 3, 8), cof(0, 8, 2, 6), cof(2, 3, 0, 5),
           cof(3, 7, 4, 6), cof(1, 6, 0, 7), cof(0, 4, 1, 3)};
    }
    return trusted(r, p_);
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (e_[i * N + j] != (i == j ? 1u : 0u)) return false;
    return true;
  }

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

 private:
  Entries e_{};
  std::uint32_t p_ = 2;
};

using ModMatrix3 = ModMatrix<3>;
using ModMatrix2 = ModMatrix<2>;

// Entrywise reduction of an integer matrix into SL3(Z/pZ).
inline ModMatrix3 reduce_mod(const IntMatrix3& a, std::int64_t p) {
  if (!is_prime(p) || p > 65521) throw std::invalid_argument("reduce_mod: modulus must be a prime below 65536");
  ModMatrix3::Entries r{};
  for (std::size_t i = 0; i < 9; ++i) r[i] = static_cast<std::uint32_t>(((a.entries()[i] % p) + p) % p);
  return ModMatrix3::trusted(r, static_cast<std::uint32_t>(p));
}

// The order-three family
//   [[1, 3a, 3b], [0, -2-3c, -1-3c-3c^2], [0, 3, 1+3c]].
inline IntMatrix3 parametric_order3(std::int64_t a, std::int64_t b, std::int64_t c,
                                    std::int64_t bound = kDefaultOverflowBound) {
  using namespace detail;
  std::int64_t three_c = checked_mul(3, c, bound);
  std::int64_t three_c2 = checked_mul(three_c, c, bound);
  IntMatrix3::Entries e{1,
                        checked_mul(3, a, bound),
                        checked_mul(3, b, bound),
                        0,
                        checked_sub(-2, three_c, bound),
                        checked_sub(checked_sub(-1, three_c, bound), three_c2, bound),
                        0,
                        3,
                        checked_add(1, three_c, bound)};
  return IntMatrix3(e, bound);
}

// ---------------------------------------------------------------------------
// GroupElement: a value in one of the supported carriers.
// ---------------------------------------------------------------------------
class GroupElement;

struct DirectSumElement {
  std::shared_ptr<const GroupElement> left;
  std::shared_ptr<const GroupElement> right;
};

enum class CarrierTag : std::uint8_t {
  kPermutation = 1,
  kResidue = 2,
  kIntMatrix3 = 3,
  kModMatrix3 = 4,
  kModMatrix2 = 5,
  kDirectSum = 6,
};

// Canonical byte serialization; equal elements have identical keys.
using ElementKey = std::string;

class GroupElement {
 public:
  using Value = std::variant<Permutation, Residue, IntMatrix3, ModMatrix3, ModMatrix2, DirectSumElement>;

  GroupElement() : v_(Permutation::identity(0)) {}
  GroupElement(Permutation p) : v_(std::move(p)) {}
  GroupElement(Residue r) : v_(r) {}
  GroupElement(IntMatrix3 m) : v_(std::move(m)) {}
  GroupElement(ModMatrix3 m) : v_(std::move(m)) {}
  GroupElement(ModMatrix2 m) : v_(std::move(m)) {}

  static GroupElement direct_sum(GroupElement left, GroupElement right) {
    return GroupElement(DirectSumElement{std::make_shared<const GroupElement>(std::move(left)),
                                         std::make_shared<const GroupElement>(std::move(right))});
  }

  const Value& value() const { return v_; }
  CarrierTag tag() const { return static_cast<CarrierTag>(v_.index() + 1); }

  template <class T>
  const T& as() const { return std::get<T>(v_); }
  template <class T>
  bool holds() const { return std::holds_alternative<T>(v_); }

  const GroupElement& left() const { return *std::get<DirectSumElement>(v_).left; }
  const GroupElement& right() const { return *std::get<DirectSumElement>(v_).right; }

  GroupElement compose(const GroupElement& o) const {
    if (v_.index() != o.v_.index()) throw CarrierMismatch("compose: carriers differ");
    return std::visit(
        [&](const auto& x) -> GroupElement {
          using T = std::decay_t<decltype(x)>;
          const T& y = std::get<T>(o.v_);
          if constexpr (std::is_same_v<T, DirectSumElement>) {
            return direct_sum(x.left->compose(*y.left), x.right->compose(*y.right));
          } else {
            return GroupElement(x.compose(y));
          }
        },
        v_);
  }

  GroupElement inverse() const {
    return std::visit(
        [&](const auto& x) -> GroupElement {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, DirectSumElement>) {
            return direct_sum(x.left->inverse(), x.right->inverse());
          } else {
            return GroupElement(x.inverse());
          }
        },
        v_);
  }

  bool is_identity() const {
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, DirectSumElement>) {
            return x.left->is_identity() && x.right->is_identity();
          } else {
            return x.is_identity();
          }
        },
        v_);
  }

  // Identity of the same carrier (same degree / modulus / component shapes).
  GroupElement identity_like() const {
    return std::visit(
        [&](const auto& x) -> GroupElement {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Permutation>) return Permutation::identity(x.degree());
          else if constexpr (std::is_same_v<T, Residue>) return Residue{0, x.modulus};
          else if constexpr (std::is_same_v<T, IntMatrix3>) return IntMatrix3::identity();
          else if constexpr (std::is_same_v<T, DirectSumElement>)
            return direct_sum(x.left->identity_like(), x.right->identity_like());
          else return T::identity(x.modulus());
        },
        v_);
  }

  GroupElement power(std::uint64_t k) const {
    GroupElement result = identity_like();
    GroupElement base = *this;
    while (k > 0) {
      if (k & 1) result = result.compose(base);
      k >>= 1;
      if (k > 0) base = base.compose(base);
    }
    return result;
  }

  // Carrier tag byte, then the normalized payload.
  ElementKey key() const {
    ElementKey out;
    append_key(out);
    return out;
  }

  void append_key(ElementKey& out) const {
    out.push_back(static_cast<char>(tag()));
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Permutation>) {
            out.push_back(static_cast<char>(x.degree()));
            for (std::size_t i = 0; i < x.degree(); ++i) out.push_back(static_cast<char>(x[i]));
          } else if constexpr (std::is_same_v<T, Residue>) {
            detail::put_i64(out, x.modulus);
            detail::put_i64(out, x.value);
          } else if constexpr (std::is_same_v<T, IntMatrix3>) {
            for (auto v : x.entries()) detail::put_i64(out, v);
          } else if constexpr (std::is_same_v<T, DirectSumElement>) {
            x.left->append_key(out);
            x.right->append_key(out);
          } else {
            detail::put_i64(out, x.modulus());
            for (auto v : x.entries()) detail::put_i64(out, v);
          }
        },
        v_);
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.key() == b.key(); }

 private:
  explicit GroupElement(DirectSumElement d) : v_(std::move(d)) {}
  Value v_;
};

inline GroupElement compose(const GroupElement& x, const GroupElement& y) { return x.compose(y); }
inline GroupElement inverse(const GroupElement& x) { return x.inverse(); }

// Smallest k in [1, cap] with x^k == e, or nullopt when no such k exists.
inline std::optional<std::uint32_t> element_order(const GroupElement& x, std::uint32_t cap) {
  if (cap < 1) throw std::invalid_argument("element_order: cap must be at least 1");
  GroupElement acc = x;
  for (std::uint32_t k = 1; k <= cap; ++k) {
    if (acc.is_identity()) return k;
    if (k < cap) acc = acc.compose(x);
  }
  return std::nullopt;
}

// Human-readable rendering used in summaries and DOT labels.
inline std::string to_string(const GroupElement& x) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Permutation>) {
          return v.to_cycles();
        } else if constexpr (std::is_same_v<T, Residue>) {
          return std::to_string(v.value) + " mod " + std::to_string(v.modulus);
        } else if constexpr (std::is_same_v<T, DirectSumElement>) {
          return "(" + to_string(*v.left) + ", " + to_string(*v.right) + ")";
        } else {
          std::string out = "[";
          const auto& e = v.entries();
          std::size_t n = (e.size() == 9) ? 3 : 2;
          for (std::size_t r = 0; r < n; ++r) {
            out += (r ? ";" : "");
            for (std::size_t c = 0; c < n; ++c) out += (c ? " " : "") + std::to_string(e[r * n + c]);
          }
          return out + "]";
        }
      },
      x.value());
}

}  // namespace delta334

#include <gtest/gtest.h>

#include <set>

#include "delta334/algebra.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace delta334;

namespace {

Permutation cyc(const char* s, std::size_t n = 4) { return Permutation::from_cycles(s, n); }

IntMatrix3 mat(std::initializer_list<std::int64_t> xs) {
  IntMatrix3::Entries e{};
  std::copy(xs.begin(), xs.end(), e.begin());
  return IntMatrix3(e);
}

const IntMatrix3 kSeedA = mat({0, 0, 1, 1, 0, 0, 0, 1, 0});
const IntMatrix3 kSeedB = mat({1, 2, 3, 0, -2, -1, 0, 3, 1});

constexpr int kSamples = 10'000;

}  // namespace

TEST(Permutation, ComposeAppliesRightFactorFirst) {
  // (abc)(abd) = (ac)(bd) with a,b,c,d = 1,2,3,4.
  EXPECT_EQ(cyc("(123)").compose(cyc("(124)")), cyc("(13)(24)"));
  // The other convention would give (14)(23).
  EXPECT_NE(cyc("(124)").compose(cyc("(123)")), cyc("(13)(24)"));
}

TEST(Permutation, MatchesOracleComposition) {
  gen::Rng r(11);
  for (int i = 0; i < 2000; ++i) {
    auto a = gen::permutation(r, 7), b = gen::permutation(r, 7);
    EXPECT_EQ(a.compose(b).images(), oracle::compose(a.images(), b.images()));
    EXPECT_EQ(a.is_even(), oracle::perm_even(a.images()));
  }
}

TEST(Permutation, InverseAndIdentity) {
  EXPECT_EQ(cyc("(123)").inverse(), cyc("(132)"));
  auto x = cyc("(134)");
  EXPECT_EQ(Permutation::identity(4).compose(x), x);
  EXPECT_TRUE(x.compose(x.inverse()).is_identity());
}

TEST(Permutation, CycleNotationRoundTrip) {
  for (const char* s : {"(123)", "(13)(24)", "(1432)", "()"}) {
    auto p = cyc(s);
    EXPECT_EQ(Permutation::from_cycles(p.to_cycles(), 4), p) << s;
  }
  EXPECT_THROW(cyc("(125)"), std::invalid_argument);
  EXPECT_THROW(Permutation::from_images({0, 0, 1}), std::invalid_argument);
}

TEST(Permutation, Parity) {
  EXPECT_TRUE(cyc("(123)").is_even());
  EXPECT_FALSE(cyc("(12)").is_even());
  EXPECT_TRUE(cyc("(12)(34)").is_even());
}

TEST(IntMatrix, RejectsDeterminantOtherThanOne) {
  EXPECT_THROW(mat({2, 0, 0, 0, 1, 0, 0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(mat({0, 1, 0, 1, 0, 0, 0, 0, 1}), std::invalid_argument);
}

TEST(IntMatrix, SeedMatrixCubesToIdentity) {
  auto b2 = kSeedB.multiply(kSeedB);
  EXPECT_TRUE(b2.multiply(kSeedB).is_identity());
  EXPECT_EQ(kSeedB.inverse(), b2);
}

TEST(IntMatrix, OverflowIsReported) {
  // Entries of powers of a hyperbolic matrix grow exponentially.
  auto m = mat({2, 1, 0, 1, 1, 0, 0, 0, 1});
  EXPECT_THROW(
      {
        for (int i = 0; i < 8; ++i) m = m.multiply(m);
      },
      OverflowError);
  auto big = mat({1, 1'000'000'000'000LL, 0, 0, 1, 0, 0, 0, 1});
  EXPECT_THROW(big.multiply(big, 1'000'000), OverflowError);
}

TEST(IntMatrix, DeterminantAndProductMatchOracle) {
  gen::Rng r(5);
  for (int i = 0; i < 2000; ++i) {
    auto a = gen::int_matrix(r), b = gen::int_matrix(r);
    oracle::Mat oa, ob;
    std::copy(a.entries().begin(), a.entries().end(), oa.begin());
    std::copy(b.entries().begin(), b.entries().end(), ob.begin());
    EXPECT_EQ(oracle::det(oa), 1);
    auto ab = a.multiply(b);
    EXPECT_TRUE(std::equal(ab.entries().begin(), ab.entries().end(), oracle::mul(oa, ob).begin()));
    EXPECT_EQ(a.trace_of_product(b), ab.trace());
  }
}

TEST(ElementOrder, Examples) {
  EXPECT_EQ(element_order(GroupElement(cyc("(12)")), 12), 2u);
  EXPECT_EQ(element_order(GroupElement(kSeedA), 12), 3u);
  EXPECT_EQ(element_order(GroupElement(mat({1, 1, 0, 0, 1, 0, 0, 0, 1})), 10), std::nullopt);
  EXPECT_EQ(element_order(GroupElement(Residue::make(3, 9)), 20), 3u);
}

TEST(ElementOrder, IsMinimal) {
  gen::Rng r(9);
  for (int i = 0; i < 500; ++i) {
    GroupElement x(gen::permutation(r, 6));
    auto ord = element_order(x, 60);
    ASSERT_TRUE(ord);
    EXPECT_TRUE(x.power(*ord).is_identity());
    for (std::uint32_t k = 1; k < *ord; ++k) EXPECT_FALSE(x.power(k).is_identity());
  }
}

TEST(ReduceMod, Examples) {
  auto b2 = reduce_mod(kSeedB, 2);
  EXPECT_EQ(b2.entries(), (ModMatrix3::Entries{1, 0, 1, 0, 0, 1, 0, 1, 1}));
  EXPECT_TRUE(reduce_mod(IntMatrix3::identity(), 5).is_identity());
  EXPECT_EQ(reduce_mod(parametric_order3(0, 0, 0), 3).entries(), (ModMatrix3::Entries{1, 0, 0, 0, 1, 2, 0, 0, 1}));
  EXPECT_THROW(reduce_mod(kSeedB, 4), std::invalid_argument);
}

TEST(ReduceMod, IsAHomomorphism) {
  gen::Rng r(21);
  for (int i = 0; i < kSamples; ++i) {
    auto a = gen::int_matrix(r), b = gen::int_matrix(r);
    for (std::int64_t p : {2, 3, 5}) {
      auto lhs = reduce_mod(a.multiply(b), p);
      auto rhs = reduce_mod(a, p).compose(reduce_mod(b, p));
      ASSERT_EQ(lhs.entries(), rhs.entries());
    }
  }
}

TEST(ParametricFamily, Examples) {
  EXPECT_EQ(parametric_order3(0, 0, 0).entries(), (IntMatrix3::Entries{1, 0, 0, 0, -2, -1, 0, 3, 1}));
  EXPECT_EQ(parametric_order3(1, 2, 0).entries(), (IntMatrix3::Entries{1, 3, 6, 0, -2, -1, 0, 3, 1}));
  auto m = parametric_order3(0, 0, 1);
  EXPECT_EQ(m.entries(), (IntMatrix3::Entries{1, 0, 0, 0, -5, -7, 0, 3, 4}));
  EXPECT_TRUE(m.multiply(m).multiply(m).is_identity());
}

TEST(ParametricFamily, AllMembersOfSmallBoxHaveOrderThree) {
  std::set<IntMatrix3::Entries> seen;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      for (int c = -5; c <= 5; ++c) {
        auto m = parametric_order3(a, b, c);
        oracle::Mat o;
        std::copy(m.entries().begin(), m.entries().end(), o.begin());
        EXPECT_EQ(oracle::det(o), 1);
        EXPECT_FALSE(oracle::is_identity(o));
        EXPECT_TRUE(oracle::is_identity(oracle::power(o, 3)));
        seen.insert(m.entries());
      }
  EXPECT_EQ(seen.size(), 1331u);
}

// Associativity and inverse laws for every carrier.
template <class Make>
void check_group_laws(Make make, int samples) {
  for (int i = 0; i < samples; ++i) {
    GroupElement x = make(), y = make(), z = make();
    ASSERT_EQ(x.compose(y).compose(z).key(), x.compose(y.compose(z)).key());
    ASSERT_TRUE(x.compose(x.inverse()).is_identity());
    ASSERT_TRUE(x.inverse().compose(x).is_identity());
    ASSERT_EQ(x.inverse().inverse().key(), x.key());
  }
}

TEST(GroupLaws, Permutations) {
  gen::Rng r(1);
  check_group_laws([&] { return GroupElement(gen::permutation(r, 9)); }, kSamples);
}

TEST(GroupLaws, IntegerMatrices) {
  gen::Rng r(2);
  check_group_laws([&] { return GroupElement(gen::int_matrix(r, 4)); }, kSamples);
}

TEST(GroupLaws, ModMatrices) {
  gen::Rng r(3);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    check_group_laws([&] { return GroupElement(gen::mod_matrix<3>(r, p)); }, kSamples / 4);
    check_group_laws([&] { return GroupElement(gen::mod_matrix<2>(r, p)); }, kSamples / 4);
  }
}

TEST(GroupLaws, ResiduesAndSums) {
  gen::Rng r(4);
  check_group_laws([&] { return GroupElement(Residue::make(r.range(0, 8), 9)); }, kSamples);
  check_group_laws(
      [&] {
        return GroupElement::direct_sum(GroupElement(gen::permutation(r, 4)),
                                        GroupElement::direct_sum(GroupElement(Residue::make(r.range(0, 2), 3)),
                                                                 GroupElement(gen::mod_matrix<2>(r, 3))));
      },
      kSamples);
}

TEST(GroupElement, CarrierMismatchThrows) {
  GroupElement p(cyc("(123)")), q(Permutation::from_cycles("(123)", 5));
  EXPECT_THROW(p.compose(q), CarrierMismatch);
  EXPECT_THROW(p.compose(GroupElement(kSeedA)), CarrierMismatch);
  EXPECT_THROW(GroupElement(reduce_mod(kSeedA, 2)).compose(GroupElement(reduce_mod(kSeedA, 3))), CarrierMismatch);
}

TEST(GroupElement, KeysIdentifyElements) {
  gen::Rng r(8);
  std::set<std::string> keys;
  std::set<std::vector<int>> images;
  for (int i = 0; i < 3000; ++i) {
    auto p = gen::permutation(r, 5);
    keys.insert(GroupElement(p).key());
    images.insert(p.images());
  }
  EXPECT_EQ(keys.size(), images.size());
  // Same entries, different carriers: distinct keys.
  EXPECT_NE(GroupElement(IntMatrix3::identity()).key(), GroupElement(ModMatrix3::identity(2)).key());
  EXPECT_NE(GroupElement(ModMatrix3::identity(2)).key(), GroupElement(ModMatrix3::identity(3)).key());
}

TEST(GroupElement, InverseOfOrderThreeIsSquare) {
  GroupElement b(kSeedB);
  EXPECT_EQ(b.inverse().key(), b.compose(b).key());
  EXPECT_TRUE(GroupElement(IntMatrix3::identity()).inverse().is_identity());
}

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "wholo/permutation.hpp"
#include "wholo/testing/oracles.hpp"

using namespace wholo;

namespace {

Configuration reorder_triple() { return Configuration::from_real(2, {{0, 0}, {0, 2}, {0, 1}}); }

Configuration timelike_triple() { return Configuration::from_real(2, {{0, 0}, {1, 0}, {2, 0}}); }

std::vector<Permutation> all_permutations(int m) {
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 1);
  std::vector<Permutation> out;
  do out.emplace_back(order);
  while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace

TEST(VerifyPermutation, Examples) {
  EXPECT_TRUE(verify_permutation({2, 1, 3}, 3));
  EXPECT_FALSE(verify_permutation({1, 1, 3}, 3));
  EXPECT_FALSE(verify_permutation({1, 2, 4}, 3));
  EXPECT_FALSE(verify_permutation({1, 2}, 3));
  EXPECT_FALSE(verify_permutation({0, 1, 2}, 3));
  EXPECT_TRUE(verify_permutation({}, 0));
}

TEST(Permutation, RejectsNonBijection) { EXPECT_THROW(Permutation({1, 1}), std::invalid_argument); }

TEST(PermuteConfig, Examples) {
  std::mt19937_64 gen(40);
  const auto c = wholo::testing::random_complex_config(gen, 2, 4, 3.0);
  EXPECT_EQ(permute_config(c, Permutation::identity(4)), c);

  const auto pair = wholo::testing::random_complex_config(gen, 3, 2, 3.0);
  EXPECT_EQ(differences(permute_config(pair, Permutation({2, 1})))[0], -differences(pair)[0]);

  const auto xi = differences(permute_config(reorder_triple(), Permutation({1, 3, 2})));
  EXPECT_EQ(xi, (std::vector<ComplexVector>{{0.0, -1.0}, {0.0, -1.0}}));
}

TEST(PermuteConfig, FieldsTravelWithPoints) {
  const Configuration c(2, {ComplexVector{0.0, 0.0}, ComplexVector{1.0, 0.0}, ComplexVector{2.0, 0.0}},
                        {Statistics::Fermi, Statistics::Bose, Statistics::Bose});
  const auto p = permute_config(c, Permutation({3, 1, 2}));
  EXPECT_EQ(p.point(1), c.point(0));
  EXPECT_EQ(p.fields(), (std::vector<Statistics>{Statistics::Bose, Statistics::Fermi, Statistics::Bose}));
}

TEST(PermuteConfig, LengthMismatchThrows) {
  EXPECT_THROW(permute_config(reorder_triple(), Permutation({2, 1})), std::invalid_argument);
}

TEST(PermutedUnion, OrderedSpacelikePointsUseIdentity) {
  const auto c = Configuration::from_real(2, {{0, 0}, {0.1, 1}, {0.3, 2.5}});
  const Verdict v = in_permuted_union_s2(c);
  ASSERT_EQ(v.state, State::Inside);
  EXPECT_EQ(*v.certificate->permutation, (std::vector<int>{1, 2, 3}));
}

TEST(PermutedUnion, ReorderExampleFindsOneThreeTwo) {
  const auto c = reorder_triple();
  ASSERT_EQ(in_extended_tube_s2(c).state, State::Outside);
  const Verdict v = in_permuted_union_s2(c);
  ASSERT_EQ(v.state, State::Inside);
  EXPECT_EQ(*v.certificate->permutation, (std::vector<int>{1, 3, 2}));
  EXPECT_TRUE(verify_certificate(c, *v.certificate));

  // Enumeration oracle: (1,3,2) is the lexicographically first success.
  for (const auto& pi : all_permutations(3)) {
    const bool inside = in_extended_tube_s2(permute_config(c, pi)).state == State::Inside;
    if (pi == Permutation({1, 3, 2})) break;
    EXPECT_FALSE(inside);
  }
}

TEST(PermutedUnion, PairwiseTimelikeIsOutside) {
  const auto c = timelike_triple();
  EXPECT_EQ(in_permuted_union_s2(c).state, State::Outside);
  for (const auto& pi : all_permutations(3)) {
    EXPECT_EQ(in_extended_tube_s2(permute_config(c, pi)).state, State::Outside);
  }
}

TEST(PermutedUnion, RequiresS2) {
  const Configuration c(3, {ComplexVector{0.0, 1.0, 0.0}, ComplexVector{0.0, 0.0, 0.0}});
  EXPECT_THROW(in_permuted_union_s2(c), std::invalid_argument);
}

TEST(PermutedUnion, BeyondCutoffNeverOutside) {
  const auto c = Configuration::from_real(2, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  const Verdict v = in_permuted_union_s2(c, kDefaultEpsilon, {.max_enumerate = 3, .guesses = 200, .seed = 1});
  EXPECT_EQ(v.state, State::Unknown);
}

TEST(PermutedUnion, ContainsExtendedTube) {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = wholo::testing::random_complex_config(gen, 2, 2 + trial % 4, 5.0);
    if (in_extended_tube_s2(c).state == State::Inside) {
      const Verdict v = in_permuted_union_s2(c);
      ASSERT_EQ(v.state, State::Inside);
      EXPECT_EQ(*v.certificate->permutation, Permutation::identity(c.size()).one_based());
    }
  }
}

TEST(PermutedUnion, CertificatesReverify) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = wholo::testing::random_real_config(gen, 2, 2 + trial % 4, 5.0);
    const Verdict v = in_permuted_union_s2(c);
    if (v.state == State::Inside) EXPECT_TRUE(verify_certificate(c, *v.certificate));
  }
}

TEST(PermutedUnion, InvariantUnderReordering) {
  std::mt19937_64 gen(43);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + trial % 3;
    const auto c = wholo::testing::random_complex_config(gen, 2, m, 5.0);
    const Verdict base = in_permuted_union_s2(c);
    if (std::abs(base.margin) < 1e-6) continue;
    // Margin-interior under every ordering.
    bool interior = true;
    for (const auto& pi : all_permutations(m)) {
      interior = interior && std::abs(arc_analysis_s2(permute_config(c, pi)).angular_margin) > 1e-6;
    }
    if (!interior) continue;
    ++checked;
    for (const auto& sigma : all_permutations(m)) {
      EXPECT_EQ(in_permuted_union_s2(permute_config(c, sigma)).state, base.state);
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(GuessAndVerify, FindsRareSpacelikeOrdering) {
  // Mutually spacelike real points: only the two monotone orderings in x1 work.
  const auto c = Configuration::from_real(2, {{0, 0}, {0.1, 1}, {0.3, 2.5}, {0.2, 4}});
  int inside = 0;
  for (const auto& pi : all_permutations(4)) inside += in_extended_tube_s2(permute_config(c, pi)).state == State::Inside;
  ASSERT_EQ(inside, 2);
  const Verdict v = guess_and_verify(c, 200, 5);
  ASSERT_EQ(v.state, State::Inside);
  EXPECT_TRUE(verify_certificate(c, *v.certificate));
  EXPECT_EQ(in_permuted_union_s2(c).state, State::Inside);
}

TEST(GuessAndVerify, IdentityGuessOnTubeConfiguration) {
  std::mt19937_64 gen(44);
  const auto c = wholo::testing::random_tube_config(gen, 2, 3, 5.0);
  auto identity_only = [](std::mt19937_64&, int m) {
    std::vector<int> id(static_cast<std::size_t>(m));
    std::iota(id.begin(), id.end(), 1);
    return id;
  };
  const Verdict v = guess_and_verify(c, 1, 0, kDefaultEpsilon, identity_only);
  ASSERT_EQ(v.state, State::Inside);
  EXPECT_EQ(*v.certificate->permutation, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(in_extended_tube_s2(c).state, State::Inside);
}

TEST(GuessAndVerify, NoWellFormedGuessesIsUnknown) {
  auto constant = [](std::mt19937_64&, int m) { return std::vector<int>(static_cast<std::size_t>(m), 1); };
  const Verdict v = guess_and_verify(reorder_triple(), 50, 0, kDefaultEpsilon, constant);
  EXPECT_EQ(v.state, State::Unknown);
  EXPECT_FALSE(v.certificate.has_value());
}

TEST(GuessAndVerify, NeverOutsideAndAgreesWithEnumeration) {
  std::mt19937_64 gen(45);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = wholo::testing::random_real_config(gen, 2, 3 + trial % 2, 5.0);
    const Verdict g = guess_and_verify(c, 30, static_cast<std::uint64_t>(trial));
    EXPECT_NE(g.state, State::Outside);
    if (g.state == State::Inside) EXPECT_EQ(in_permuted_union_s2(c).state, State::Inside);
  }
}

TEST(GuessAndVerify, NonpositiveGuessesThrows) {
  EXPECT_THROW(guess_and_verify(reorder_triple(), 0, 0), std::invalid_argument);
}

TEST(StatisticsSign, Examples) {
  using enum Statistics;
  EXPECT_EQ(statistics_sign({Bose, Bose, Bose}, Permutation({3, 1, 2})), 1);
  EXPECT_EQ(statistics_sign({Fermi, Fermi}, Permutation({2, 1})), -1);
  EXPECT_EQ(statistics_sign({Fermi, Bose, Fermi}, Permutation({3, 2, 1})), -1);
  EXPECT_EQ(wholo::testing::sign_by_adjacent_transpositions({true, false, true}, {3, 2, 1}), -1);
}

TEST(StatisticsSign, LengthMismatchThrows) {
  EXPECT_THROW(statistics_sign({Statistics::Fermi}, Permutation({2, 1})), std::invalid_argument);
}

TEST(StatisticsSign, HomomorphismOnFermions) {
  for (int m = 1; m <= 5; ++m) {
    const std::vector<Statistics> fermi(static_cast<std::size_t>(m), Statistics::Fermi);
    const auto perms = all_permutations(m);
    for (const auto& a : perms) {
      for (const auto& b : perms) {
        EXPECT_EQ(statistics_sign(fermi, a.compose(b)), statistics_sign(fermi, a) * statistics_sign(fermi, b));
      }
    }
  }
}

TEST(StatisticsSign, ParityWhenAllFermi) {
  for (const auto& pi : all_permutations(5)) {
    int inversions = 0;
    for (int a = 1; a <= 5; ++a) {
      for (int b = a + 1; b <= 5; ++b) inversions += pi.image(a) > pi.image(b);
    }
    EXPECT_EQ(statistics_sign(std::vector<Statistics>(5, Statistics::Fermi), pi), inversions % 2 ? -1 : 1);
  }
}

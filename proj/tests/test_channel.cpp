#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "eprlab/channel.hpp"
#include "eprlab/rng.hpp"

using namespace eprlab;

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  Rng a = stream(42, 7);
  Rng b = stream(42, 7);
  Rng c = stream(42, 8);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
  EXPECT_NE(derive_seed(1, "key"), derive_seed(1, "eve"));
}

TEST(Rng, UniformBelowStaysInRangeAndCoversIt) {
  Rng rng(3);
  std::array<int, 7> hits{};
  for (int i = 0; i < 70000; ++i) {
    const auto v = uniform_below(rng, 7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (const int h : hits) EXPECT_NEAR(h, 10000, 4 * std::sqrt(10000 * 6.0 / 7.0));
  EXPECT_THROW(uniform_below(rng, 0), std::invalid_argument);
}

TEST(Rng, SubsetHasExactSize) {
  Rng rng(5);
  const auto mask = choose_subset(1000, 321, rng);
  EXPECT_EQ(std::count(mask.begin(), mask.end(), true), 321);
  EXPECT_THROW(choose_subset(3, 4, rng), std::invalid_argument);
  auto perm = random_permutation(50, rng);
  std::sort(perm.begin(), perm.end());
  for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_EQ(perm[i], i);
}

TEST(PairedRegister, MeasuringATruePairReadsItsLabel) {
  PairedRegister r(4);
  r.entangle(0, 3, kPsiMinus);
  r.entangle(1, 2, kPhiMinus);
  EXPECT_TRUE(r.complete());
  Rng rng(1);
  const auto m = r.measure(3, 0, rng);
  EXPECT_FALSE(m.swapped);
  EXPECT_EQ(m.outcome, kPsiMinus);
  EXPECT_EQ(r.partner(0), 3u);
}

TEST(PairedRegister, CrossPairMeasurementSwapsEntanglement) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    PairedRegister r(4);
    r.entangle(0, 1, kPhiPlus);
    r.entangle(2, 3, kPsiPlus);
    const auto m = r.measure(0, 2, rng);
    EXPECT_TRUE(m.swapped);
    EXPECT_EQ(r.partner(0), 2u);
    EXPECT_EQ(r.partner(1), 3u);
    // parities of the two new labels match the old ones
    EXPECT_EQ(r.label(0).flip ^ r.label(1).flip, 1);
    EXPECT_EQ(r.label(0).phase ^ r.label(1).phase, 0);
    // measuring again is now deterministic
    EXPECT_EQ(r.measure(2, 0, rng).outcome, m.outcome);
  }
}

TEST(PairedRegister, RejectsBadSlots) {
  PairedRegister r(4);
  r.entangle(0, 1, kPhiPlus);
  EXPECT_THROW(r.entangle(1, 2, kPhiPlus), std::logic_error);
  EXPECT_THROW(r.entangle(2, 2, kPhiPlus), std::invalid_argument);
  r.entangle(2, 3, kPhiPlus);
  Rng rng(1);
  EXPECT_THROW(r.measure(1, 1, rng), std::invalid_argument);
  EXPECT_THROW(r.measure(1, 9, rng), std::invalid_argument);
}

TEST(WireBlock, UndisturbedMeasurementInPreparedLayout) {
  Rng rng(2);
  for (unsigned i = 0; i < 16; ++i) {
    for (const Pairing p : kAllPairings) {
      WireBlock w(LabelPair::from_index(i), p);
      EXPECT_EQ(w.measure(p, rng), LabelPair::from_index(i));
    }
  }
}

TEST(WireBlock, WrongLayoutSamplesRegroupingLaw) {
  Rng rng(9);
  std::map<unsigned, int> counts;
  const int n = 40000;
  for (int t = 0; t < n; ++t) {
    WireBlock w({kPhiPlus, kPsiPlus}, Pairing::Sequential);
    ++counts[w.measure(Pairing::Crossed, rng).index()];
  }
  ASSERT_EQ(counts.size(), 4u);
  const double sigma = std::sqrt(n * 0.25 * 0.75);
  for (const auto& support : xor_compatible({kPhiPlus, kPsiPlus})) {
    EXPECT_NEAR(counts[support.index()], n / 4.0, 4 * sigma);
  }
}

TEST(Sample, FollowsExactDistribution) {
  const Distribution d{{LabelPair{kPhiPlus, kPhiPlus}, Exact(3, 4)},
                       {LabelPair{kPsiMinus, kPsiMinus}, Exact(1, 4)}};
  Rng rng(4);
  int first = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) first += sample(d, rng) == LabelPair{kPhiPlus, kPhiPlus};
  EXPECT_NEAR(first, 0.75 * n, 4 * std::sqrt(n * 0.75 * 0.25));
}

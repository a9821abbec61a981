#include <gtest/gtest.h>

#include <cmath>

#include "eprlab/adversary.hpp"
#include "eprlab/protocols.hpp"

using namespace eprlab;

namespace {

Key bits(std::string_view s) {
  Key k;
  for (const char c : s) k.push_back(c == '1' ? 1 : 0);
  return k;
}

}  // namespace

TEST(KeyBits, ReadAndAppendRoundTrip) {
  Key k;
  append_bits(k, 0b1011, 4);
  append_bits(k, 0b01, 2);
  EXPECT_EQ(k, bits("101101"));
  EXPECT_EQ(read_bits4(k, 0), 0b1011u);
}

TEST(Protocol1, NoEveSmallKeys) {
  for (const auto* s : {"00", "0111"}) {
    const Key key = bits(s);
    const auto run = protocol1_run(key, Protocol1Options{9, 0.5});
    EXPECT_EQ(run.alice_key, key) << s;
    EXPECT_EQ(run.bob_key, key) << s;
    EXPECT_EQ(run.detections, 0u);
  }
}

TEST(Protocol1, NoEveThousandBits) {
  Rng rng(17);
  const Key key = random_key(1000, rng);
  const auto run = protocol1_run(key, Protocol1Options{3, 0.5});
  EXPECT_EQ(run.bob_key, key);
  EXPECT_EQ(run.detections, 0u);
  EXPECT_GT(run.compared, 0u);
}

TEST(Protocol1, EncodesWithPauliOnPhiPlus) {
  const auto run = protocol1_run(bits("0111"), Protocol1Options{1, 0.0});
  ASSERT_GE(run.pairs.size(), 2u);
  EXPECT_EQ(run.pairs[0].alice_label, kPhiMinus);
  EXPECT_EQ(run.pairs[1].alice_label, kPsiMinus);
}

TEST(Protocol1, RejectsOddOrEmptyKey) {
  EXPECT_THROW(protocol1_run(bits("011"), {}), std::invalid_argument);
  EXPECT_THROW(protocol1_run(Key{}, {}), std::invalid_argument);
}

TEST(Protocol2, PrepareBlock) {
  const auto a = protocol2_prepare_block(0b0010, Pairing::Sequential);
  EXPECT_EQ(a.alice_labels, (LabelPair{kPhiPlus, kPsiPlus}));
  EXPECT_EQ(a.alice_pairing, Pairing::Sequential);
  EXPECT_EQ(a.wire_order, (std::array<std::uint8_t, 4>{1, 2, 3, 4}));

  const auto b = protocol2_prepare_block(0b0000, Pairing::Crossed);
  EXPECT_EQ(b.alice_labels, (LabelPair{kPhiPlus, kPhiPlus}));
  EXPECT_EQ(b.wire_order, (std::array<std::uint8_t, 4>{1, 3, 2, 4}));
  EXPECT_THROW(protocol2_prepare_block(16, Pairing::Crossed), std::invalid_argument);
}

TEST(Protocol2, LayoutCoinIsFair) {
  Rng rng(2024);
  const int n = 100000;
  int crossed = 0;
  for (int i = 0; i < n; ++i) {
    crossed += protocol2_prepare_block(5, rng).alice_pairing == Pairing::Crossed;
  }
  EXPECT_NEAR(crossed, n / 2.0, 3 * std::sqrt(n * 0.25));
}

TEST(Protocol2, UndisturbedBobReadsAliceLabels) {
  Rng rng(4);
  for (unsigned v = 0; v < 16; ++v) {
    for (const Pairing p : kAllPairings) {
      const auto block = protocol2_prepare_block(v, p);
      auto wire = transmit(block);
      EXPECT_EQ(protocol2_bob_measure(wire, p, rng), block.alice_labels);
    }
  }
}

TEST(Protocol2, WrongLayoutInterceptScramblesBob) {
  // phi+ psi+ sequential, Eve measures crossed and resends
  const auto block = protocol2_prepare_block(0b0010, Pairing::Sequential);
  Rng rng(8);
  std::array<int, 16> hits{};
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    auto wire = transmit(block);
    measure_resend(0, wire, Pairing::Crossed, rng);
    ++hits[protocol2_bob_measure(wire, Pairing::Sequential, rng).index()];
  }
  EXPECT_EQ(hits[(LabelPair{kPsiPlus, kPsiMinus}).index()], 0);
  int wrong = 0;
  for (unsigned i = 0; i < 16; ++i) {
    if (i != block.alice_labels.index()) wrong += hits[i];
  }
  EXPECT_NEAR(wrong, 0.75 * n, 4 * std::sqrt(n * 0.75 * 0.25));
}

TEST(Protocol2, WrongGuessDetectionIsExactlyThreeQuarters) {
  for (unsigned i = 0; i < 16; ++i) {
    const auto labels = LabelPair::from_index(i);
    for (const Pairing p : kAllPairings) {
      Exact wrong{0};
      for (const auto& b : attack_outcome_tree(labels, p)) {
        if (b.eve_guess != p && b.bob_outcome != labels) wrong += b.probability;
      }
      // the wrong-guess branch carries weight 1/2
      EXPECT_EQ(wrong, Exact(3, 8));
    }
  }
}

TEST(Protocol2, NoEveRunAgrees) {
  Rng rng(11);
  const Key key = random_key(4000, rng);
  const auto run = protocol2_run(key, Protocol2Options{5, 0.5});
  EXPECT_EQ(run.alice_key, run.bob_key);
  EXPECT_EQ(run.detections, 0u);
  EXPECT_EQ(run.compared, 500u);
  EXPECT_EQ(run.alice_key.size(), 2000u);
  EXPECT_THROW(protocol2_run(bits("101"), {}), std::invalid_argument);
  EXPECT_THROW(protocol2_run(key, Protocol2Options{5, 0.0}), std::invalid_argument);
}

TEST(Announcements, RequireFullReceipt) {
  std::vector<BlockState> blocks(3, protocol2_prepare_block(1, Pairing::Crossed));
  EXPECT_THROW(announce_pairings(blocks, ReceiptConfirmation{2}), std::logic_error);
  const auto a = announce_pairings(blocks, ReceiptConfirmation{3});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.pairing(2), Pairing::Crossed);

  Rng rng(1);
  const auto seq = make_pop_sequence({kPhiPlus, kPsiMinus, kPhiMinus}, rng);
  EXPECT_THROW(announce_permutation(seq, ReceiptConfirmation{5}), std::logic_error);
  EXPECT_EQ(announce_permutation(seq, ReceiptConfirmation{6}).permutation, seq.permutation);
}

TEST(PopSequence, BobRecoversEveryPair) {
  Rng rng(12);
  const std::vector<BellLabel> labels{kPhiPlus, kPsiMinus, kPhiMinus, kPsiPlus, kPsiPlus};
  const auto seq = make_pop_sequence(labels, rng);
  EXPECT_EQ(seq.n_qubits, 10u);
  auto wire = seq.emit();
  EXPECT_TRUE(wire.complete());
  const auto pm = seq.pair_map();
  for (std::size_t s = 0; s < pm.size(); ++s) EXPECT_EQ(pm[pm[s]], s);
  const auto announced = announce_permutation(seq, ReceiptConfirmation{10});
  EXPECT_EQ(pop_bob_measure(wire, announced, rng), labels);
  EXPECT_THROW(make_pop_sequence({kPhiPlus}, rng), std::invalid_argument);
}

TEST(Bb84, MatchingZBasesAlwaysAgree) {
  Rng rng(6);
  int ones = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto [a, b] = measure_phi_plus(Basis::Z, Basis::Z, rng);
    EXPECT_EQ(a, b);
    ones += a;
  }
  EXPECT_NEAR(ones, 5000, 4 * 50);
}

TEST(Bb84, PhiPlusIsAlsoCorrelatedInX) {
  // H x H leaves phi+ invariant
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const auto [a, b] = measure_phi_plus(Basis::X, Basis::X, rng);
    EXPECT_EQ(a, b);
  }
  int agree = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto [a, b] = measure_phi_plus(Basis::Z, Basis::X, rng);
    agree += a == b;
  }
  EXPECT_NEAR(agree, 5000, 4 * 50);
}

TEST(Bb84, SiftingKeepsHalf) {
  const std::size_t n = 100000;
  const auto r = bb84_epr_baseline(n, 99);
  EXPECT_NEAR(r.kept_fraction(), 0.5, 3 * std::sqrt(0.25 / n));
  EXPECT_EQ(r.alice_sifted, r.bob_sifted);
  EXPECT_EQ(r.compare_errors, 0u);
  EXPECT_GT(r.compared, 0u);
}

TEST(PopProbability, FormulaAndMatching) {
  EXPECT_EQ(pop_correct_pick_probability(4), Exact(1, 3));
  EXPECT_EQ(pop_correct_pick_probability(8), Exact(1, 14));
  EXPECT_EQ(pop_correct_pick_probability(100), Exact(1, 2475));
  EXPECT_EQ(pop_matching_pick_probability(4), Exact(1, 3));
  EXPECT_EQ(pop_matching_pick_probability(8), Exact(1, 7));
  EXPECT_THROW(pop_correct_pick_probability(2), std::invalid_argument);
  EXPECT_THROW(pop_correct_pick_probability(7), std::invalid_argument);
  EXPECT_THROW(validate_pop_size(0), std::invalid_argument);
}

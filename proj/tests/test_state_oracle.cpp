#include <gtest/gtest.h>

#include "eprlab/bell.hpp"
#include "eprlab/state_oracle.hpp"
#include "eprlab/verify.hpp"

using namespace eprlab;
using namespace eprlab::oracle;

namespace {

FourQubitState with_support(std::initializer_list<std::pair<unsigned, int>> entries) {
  FourQubitState s;
  for (const auto& [index, sign] : entries) s.amplitudes[index] = Exact(sign, 2);
  return s;
}

}  // namespace

TEST(BuildPairProduct, SequentialExpansions) {
  EXPECT_EQ(build_pair_product({kPhiPlus, kPhiPlus}, Pairing::Sequential),
            with_support({{0b0000, 1}, {0b0011, 1}, {0b1100, 1}, {0b1111, 1}}));
  EXPECT_EQ(build_pair_product({kPhiPlus, kPsiPlus}, Pairing::Sequential),
            with_support({{0b0001, 1}, {0b0010, 1}, {0b1101, 1}, {0b1110, 1}}));
}

TEST(BuildPairProduct, CrossedExpansion) {
  // phi+ on qubits (1,3) forces q1 = q3; psi+ on (2,4) forces q2 != q4
  EXPECT_EQ(build_pair_product({kPhiPlus, kPsiPlus}, Pairing::Crossed),
            with_support({{0b0001, 1}, {0b0100, 1}, {0b1011, 1}, {0b1110, 1}}));
  // psi- on (1,3): |0_1 1_3> - |1_1 0_3>, phi- on (2,4)
  EXPECT_EQ(build_pair_product({kPsiMinus, kPhiMinus}, Pairing::Crossed),
            with_support({{0b0010, 1}, {0b0111, -1}, {0b1000, -1}, {0b1101, 1}}));
}

TEST(BuildPairProduct, AlwaysFourHalfAmplitudes) {
  for (unsigned i = 0; i < 16; ++i) {
    for (const Pairing p : kAllPairings) {
      const auto s = build_pair_product(LabelPair::from_index(i), p);
      EXPECT_EQ(s.nonzero_count(), 4);
      EXPECT_EQ(s.norm_squared(), Exact(1));
      for (const auto& a : s.amplitudes) {
        EXPECT_TRUE(a == Exact(0) || boost::abs(a) == Exact(1, 2));
      }
    }
  }
}

TEST(BellProductBasis, Orthonormal) {
  for (const Pairing p : kAllPairings) {
    const auto basis = make_basis(p);
    for (unsigned i = 0; i < 16; ++i) {
      for (unsigned j = 0; j < 16; ++j) {
        EXPECT_EQ(inner_product(basis.vectors[i], basis.vectors[j]), i == j ? Exact(1) : Exact(0));
      }
    }
  }
}

TEST(Project, PublishedRegroupingOfPhiPlusPsiPlus) {
  const auto d = project(build_pair_product({kPhiPlus, kPsiPlus}, Pairing::Sequential),
                         make_basis(Pairing::Crossed));
  ASSERT_EQ(d.terms.size(), 4u);
  EXPECT_EQ(d.coefficient_of({kPhiPlus, kPsiPlus}), Exact(1, 2));
  EXPECT_EQ(d.coefficient_of({kPhiMinus, kPsiMinus}), Exact(1, 2));
  EXPECT_EQ(d.coefficient_of({kPsiPlus, kPhiPlus}), Exact(1, 2));
  EXPECT_EQ(d.coefficient_of({kPsiMinus, kPhiMinus}), Exact(1, 2));
  EXPECT_FALSE(d.coefficient_of({kPsiPlus, kPsiMinus}).has_value());
}

TEST(Project, PublishedRegroupingOfCrossedPsiPlusPhiPlus) {
  const auto d = project(build_pair_product({kPsiPlus, kPhiPlus}, Pairing::Crossed),
                         make_basis(Pairing::Sequential));
  EXPECT_EQ(d.coefficient_of({kPhiPlus, kPsiPlus}), Exact(1, 2));
  EXPECT_EQ(d.coefficient_of({kPhiMinus, kPsiMinus}), Exact(-1, 2));
  EXPECT_EQ(d.coefficient_of({kPsiPlus, kPhiPlus}), Exact(1, 2));
  EXPECT_EQ(d.coefficient_of({kPsiMinus, kPhiMinus}), Exact(-1, 2));
}

TEST(Project, SameLayoutGivesSingleTerm) {
  for (unsigned i = 0; i < 16; ++i) {
    const auto labels = LabelPair::from_index(i);
    for (const Pairing p : kAllPairings) {
      const auto d = project(build_pair_product(labels, p), make_basis(p));
      ASSERT_EQ(d.terms.size(), 1u);
      EXPECT_EQ(d.terms[0].labels, labels);
      EXPECT_EQ(d.terms[0].coefficient, Exact(1));
    }
  }
}

TEST(Project, AgreesWithClosedFormEverywhere) {
  for (const Pairing from : kAllPairings) {
    const auto basis = make_basis(other(from));
    for (unsigned i = 0; i < 16; ++i) {
      const auto labels = LabelPair::from_index(i);
      EXPECT_EQ(project(build_pair_product(labels, from), basis),
                swap_decompose(labels, from, other(from)))
          << to_string(labels, from);
    }
  }
}

TEST(Project, CrossPairMeasurementOutcomeIsUniformOverLabels) {
  // tracing out the partner pair leaves the measured pair uniformly random
  for (unsigned i = 0; i < 16; ++i) {
    std::array<Exact, 4> marginal{};
    for (const auto& [labels, p] : outcome_probabilities(
             build_pair_product(LabelPair::from_index(i), Pairing::Sequential),
             make_basis(Pairing::Crossed))) {
      marginal[labels.first.index()] += p;
    }
    for (const auto& m : marginal) EXPECT_EQ(m, Exact(1, 4));
  }
}

TEST(Verification, CleanTablePasses) {
  const auto results = run_verification();
  std::size_t oracle = 0;
  for (const auto& r : results) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
    oracle += r.name.rfind("oracle ", 0) == 0;
  }
  EXPECT_EQ(oracle, 32u);
}

TEST(Verification, SignFlippedEntryIsCaughtAndNamed) {
  RegroupingTable broken = RegroupingTable::standard();
  broken.mutable_entry({kPhiMinus, kPsiPlus}).terms[2].coefficient *= -1;
  const auto results = run_verification(broken);
  std::vector<std::string> failed;
  for (const auto& r : results) {
    if (!r.passed) failed.push_back(r.name);
  }
  // both directions use the entry
  ASSERT_EQ(failed.size(), 2u);
  EXPECT_NE(failed[0].find("|phi->_12 |psi+>_34"), std::string::npos);
  EXPECT_NE(failed[1].find("|phi->_13 |psi+>_24"), std::string::npos);
  std::ostringstream os;
  EXPECT_FALSE(print_verification(os, results));
  EXPECT_NE(os.str().find("30/32 oracle cases pass"), std::string::npos);
}

TEST(Verification, PublishedCaseCaughtWhenBroken) {
  RegroupingTable broken = RegroupingTable::standard();
  broken.mutable_entry({kPhiPlus, kPsiPlus}).terms[0].coefficient *= -1;
  bool published_failed = false;
  for (const auto& r : run_verification(broken)) {
    if (r.name.rfind("published |phi+>_12 |psi+>_34", 0) == 0) published_failed = !r.passed;
  }
  EXPECT_TRUE(published_failed);
}

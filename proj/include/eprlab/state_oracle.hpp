#pragma once

// Brute-force four-qubit state vectors. Nothing here consults the regrouping
// table in bell.hpp; the Bell states are spelled out in the computational
// basis and every decomposition is recovered by inner products.

#include <array>

#include "eprlab/bell.hpp"
#include "eprlab/exact.hpp"

namespace eprlab::oracle {

/// Amplitudes over |q1 q2 q3 q4>, q1 the most significant bit of the index.
struct FourQubitState {
  std::array<Exact, 16> amplitudes{};

  Exact norm_squared() const;
  int nonzero_count() const;

  bool operator==(const FourQubitState&) const = default;
};

/// 16 product vectors of one layout, indexed by LabelPair::index().
struct BellProductBasis {
  Pairing pairing = Pairing::Sequential;
  std::array<FourQubitState, 16> vectors{};
};

/// Two-qubit amplitudes of a Bell state over |00>,|01>,|10>,|11>, scaled by
/// sqrt(2) so they are integers.
std::array<int, 4> scaled_bell_amplitudes(BellLabel label);

FourQubitState build_pair_product(LabelPair labels, Pairing pairing);

BellProductBasis make_basis(Pairing pairing);

Exact inner_product(const FourQubitState& lhs, const FourQubitState& rhs);

/// Coefficients of `state` in `basis`, exact zeros dropped.
Decomposition project(const FourQubitState& state, const BellProductBasis& basis);

/// Squared projections.
Distribution outcome_probabilities(const FourQubitState& state, const BellProductBasis& basis);

}  // namespace eprlab::oracle

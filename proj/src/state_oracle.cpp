#include "eprlab/state_oracle.hpp"

namespace eprlab::oracle {

namespace {

int qubit(unsigned index, int k) { return static_cast<int>((index >> (3 - k)) & 1u); }

}  // namespace

Exact FourQubitState::norm_squared() const {
  Exact sum{0};
  for (const auto& a : amplitudes) sum += a * a;
  return sum;
}

int FourQubitState::nonzero_count() const {
  int n = 0;
  for (const auto& a : amplitudes) n += a != Exact(0);
  return n;
}

std::array<int, 4> scaled_bell_amplitudes(BellLabel label) {
  // phi+ = (|00> + |11>)/sqrt2, phi- = (|00> - |11>)/sqrt2,
  // psi+ = (|01> + |10>)/sqrt2, psi- = (|01> - |10>)/sqrt2
  if (label == kPhiPlus) return {1, 0, 0, 1};
  if (label == kPhiMinus) return {1, 0, 0, -1};
  if (label == kPsiPlus) return {0, 1, 1, 0};
  return {0, 1, -1, 0};
}

FourQubitState build_pair_product(LabelPair labels, Pairing pairing) {
  const auto first = scaled_bell_amplitudes(labels.first);
  const auto second = scaled_bell_amplitudes(labels.second);
  // qubit positions (0-based) of each pair
  const int a0 = 0;
  const int a1 = pairing == Pairing::Sequential ? 1 : 2;
  const int b0 = pairing == Pairing::Sequential ? 2 : 1;
  const int b1 = 3;

  FourQubitState state;
  for (unsigned i = 0; i < 16; ++i) {
    const int x = first[2 * qubit(i, a0) + qubit(i, a1)];
    const int y = second[2 * qubit(i, b0) + qubit(i, b1)];
    // the two 1/sqrt2 factors combine into 1/2
    state.amplitudes[i] = Exact(x * y, 2);
  }
  return state;
}

BellProductBasis make_basis(Pairing pairing) {
  BellProductBasis basis{pairing, {}};
  for (unsigned i = 0; i < 16; ++i) {
    basis.vectors[i] = build_pair_product(LabelPair::from_index(i), pairing);
  }
  return basis;
}

Exact inner_product(const FourQubitState& lhs, const FourQubitState& rhs) {
  Exact sum{0};
  for (unsigned i = 0; i < 16; ++i) sum += lhs.amplitudes[i] * rhs.amplitudes[i];
  return sum;
}

Decomposition project(const FourQubitState& state, const BellProductBasis& basis) {
  Decomposition out{basis.pairing, {}};
  for (unsigned i = 0; i < 16; ++i) {
    const Exact c = inner_product(basis.vectors[i], state);
    if (c != Exact(0)) out.terms.push_back(Term{LabelPair::from_index(i), c});
  }
  return out;
}

Distribution outcome_probabilities(const FourQubitState& state, const BellProductBasis& basis) {
  Distribution dist;
  for (const auto& t : project(state, basis).terms) {
    dist.emplace_back(t.labels, t.coefficient * t.coefficient);
  }
  return dist;
}

}  // namespace eprlab::oracle

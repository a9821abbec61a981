#pragma once

#include <cstddef>
#include <cstdint>

#include <boost/container/small_vector.hpp>

#include "eprlab/bell.hpp"
#include "eprlab/rng.hpp"

namespace eprlab {

/// Qubits on wire slots whose joint state is a product of Bell pairs over a
/// perfect matching of the slots. A Bell measurement on any two slots keeps
/// the register in that form: on a true pair it just reads the label, across
/// two pairs it swaps entanglement onto (picked slots) and (their partners).
/// Labels are orientation-free; the sign a psi- picks up under exchange of
/// its qubits is a global phase.
class PairedRegister {
 public:
  explicit PairedRegister(std::size_t n_slots);

  std::size_t size() const { return partner_.size(); }

  void entangle(std::size_t s, std::size_t t, BellLabel label);

  std::size_t partner(std::size_t s) const { return partner_.at(s); }
  BellLabel label(std::size_t s) const { return label_.at(s); }
  bool complete() const;

  struct Measurement {
    BellLabel outcome;
    bool swapped;  // picks were not partners; entanglement moved
  };

  /// Bell measurement on slots s and t, leaving them as the measured pair.
  Measurement measure(std::size_t s, std::size_t t, Rng& rng);

 private:
  static constexpr std::uint32_t kUnpaired = static_cast<std::uint32_t>(-1);

  // inline storage covers the four-qubit blocks, which are the bulk of use
  boost::container::small_vector<std::uint32_t, 4> partner_;
  boost::container::small_vector<BellLabel, 4> label_;
};

/// Draws one outcome from an exact distribution.
LabelPair sample(const Distribution& dist, Rng& rng);

/// Four qubits in flight for one block. Holds the quantum state only: which
/// layout Alice used is not recoverable from this object except by measuring.
class WireBlock {
 public:
  WireBlock(LabelPair labels, Pairing pairing);

  /// Bell measurement of both pairs of `pairing`, in slot order. The block is
  /// left in the post-measurement state.
  LabelPair measure(Pairing pairing, Rng& rng);

 private:
  PairedRegister qubits_;
};

}  // namespace eprlab

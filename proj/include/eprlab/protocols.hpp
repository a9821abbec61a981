#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eprlab/bell.hpp"
#include "eprlab/channel.hpp"
#include "eprlab/rng.hpp"

namespace eprlab {

/// Key material, one bit per element (0 or 1).
using Key = std::vector<std::uint8_t>;

/// Reads the block of four bits starting at `offset`, MSB first.
unsigned read_bits4(std::span<const std::uint8_t> key, std::size_t offset);
void append_bits(Key& key, unsigned value, int width);
Key random_key(std::size_t n_bits, Rng& rng);

enum class BlockRole : std::uint8_t { Data, Decoy };
std::string_view role_name(BlockRole role);

/// Alice's private record of one four-qubit block.
struct BlockState {
  LabelPair alice_labels;
  Pairing alice_pairing = Pairing::Sequential;
  /// Particle carried by each wire slot, 1-based: particles (1,2) form the
  /// first pair and (3,4) the second.
  std::array<std::uint8_t, 4> wire_order{1, 2, 3, 4};
  BlockRole role = BlockRole::Data;
};

struct EveAction {
  Pairing pairing_guess;
  LabelPair outcome;
};

struct BlockTranscript {
  std::size_t block_index = 0;
  BlockState block;
  std::optional<EveAction> eve;
  LabelPair bob_outcome;
  bool detected = false;
};

/// Anything sitting on the channel between Alice and Bob. It only ever sees
/// the wire block.
class BlockInterceptor {
 public:
  virtual ~BlockInterceptor() = default;
  virtual std::optional<EveAction> intercept(std::size_t block_index, WireBlock& wire) const = 0;
};

// ---------------------------------------------------------------------------
// Classical announcements. Bob can only measure against an announcement, and
// Alice only announces after he has confirmed receipt of every block.

struct ReceiptConfirmation {
  std::size_t units_received = 0;
};

class PairingAnnouncement {
 public:
  Pairing pairing(std::size_t block_index) const { return pairings_.at(block_index); }
  std::size_t size() const { return pairings_.size(); }

 private:
  friend PairingAnnouncement announce_pairings(std::span<const BlockState>,
                                               const ReceiptConfirmation&);
  std::vector<Pairing> pairings_;
};

/// Throws std::logic_error unless the receipt covers every block.
PairingAnnouncement announce_pairings(std::span<const BlockState> blocks,
                                      const ReceiptConfirmation& receipt);

// ---------------------------------------------------------------------------
// One-step protocol: two Bell pairs per four key bits, layout chosen by coin.

BlockState protocol2_prepare_block(unsigned bits4, Pairing pairing_choice);
BlockState protocol2_prepare_block(unsigned bits4, Rng& rng);

WireBlock transmit(const BlockState& block);

LabelPair protocol2_bob_measure(WireBlock& wire, Pairing announced_pairing, Rng& rng);

struct Protocol2Options {
  std::uint64_t seed = 1;
  /// Share of blocks publicly compared (decoys); the rest form the key.
  double compare_fraction = 0.5;
};

struct Protocol2Run {
  std::vector<BlockTranscript> transcripts;
  Key alice_key;  // bits of the Data blocks
  Key bob_key;
  std::size_t compared = 0;
  std::size_t detections = 0;
};

/// Full run over a key whose length is a positive multiple of four.
/// Block i draws its layout coin and Bob's measurement randomness from
/// stream(seed, i), so results do not depend on how blocks are scheduled.
Protocol2Run protocol2_run(std::span<const std::uint8_t> key, const Protocol2Options& options,
                           const BlockInterceptor* eve = nullptr);

// ---------------------------------------------------------------------------
// Memory-based protocol and the general particle-order-permutation sequence.

/// N qubits (N/2 Bell pairs) sent in permuted order. Logical particles 2k and
/// 2k+1 form pair k; permutation[p] is the wire slot of logical particle p.
struct PopSequence {
  std::size_t n_qubits = 0;
  std::vector<BellLabel> pair_labels;
  std::vector<std::size_t> permutation;

  /// Wire slot partner of every slot.
  std::vector<std::size_t> pair_map() const;
  std::size_t slot_of(std::size_t pair, int member) const {
    return permutation.at(2 * pair + static_cast<std::size_t>(member));
  }

  /// The register as it leaves Alice.
  PairedRegister emit() const;
};

/// Throws std::invalid_argument for fewer than two pairs.
PopSequence make_pop_sequence(std::vector<BellLabel> pair_labels, Rng& rng);

struct SlotMeasurement {
  std::size_t slot_a = 0;
  std::size_t slot_b = 0;
  BellLabel outcome;
  /// Ground truth, not visible to Eve: the picks were a prepared pair.
  bool entangled_pick = false;
};

class SequenceInterceptor {
 public:
  virtual ~SequenceInterceptor() = default;
  virtual std::vector<SlotMeasurement> intercept(std::size_t sequence_index,
                                                 PairedRegister& wire) const = 0;
};

struct PermutationAnnouncement {
  std::vector<std::size_t> permutation;
};

/// Throws std::logic_error unless the receipt covers every qubit.
PermutationAnnouncement announce_permutation(const PopSequence& seq,
                                             const ReceiptConfirmation& receipt);

/// Bob's Bell measurement of every prepared pair once the order is known.
std::vector<BellLabel> pop_bob_measure(PairedRegister& wire,
                                       const PermutationAnnouncement& announcement, Rng& rng);

struct PairTranscript {
  std::size_t pair_index = 0;
  BellLabel alice_label;
  BlockRole role = BlockRole::Data;
  BellLabel bob_outcome;
  bool detected = false;
};

struct Protocol1Options {
  std::uint64_t seed = 1;
  /// Decoy pairs added per data pair.
  double decoy_fraction = 0.5;
};

struct Protocol1Run {
  std::vector<PairTranscript> pairs;
  std::vector<SlotMeasurement> interceptions;
  Key alice_key;
  Key bob_key;
  std::size_t compared = 0;
  std::size_t detections = 0;
};

/// Each two key bits become phi+ with the matching Pauli applied; decoy pairs
/// with random labels are appended; the whole sequence is permuted. Bob stores
/// it until the permutation is announced. Throws std::invalid_argument for an
/// empty or odd-length key.
Protocol1Run protocol1_run(std::span<const std::uint8_t> key, const Protocol1Options& options,
                           const SequenceInterceptor* eve = nullptr);

// ---------------------------------------------------------------------------
// BB84-style baseline on shared phi+ pairs.

enum class Basis : std::uint8_t { Z, X };

/// Outcomes of measuring the two halves of phi+ in the given bases.
std::pair<std::uint8_t, std::uint8_t> measure_phi_plus(Basis alice, Basis bob, Rng& rng);

struct Bb84Result {
  std::size_t n_pairs = 0;
  std::size_t kept = 0;
  std::size_t compared = 0;
  std::size_t compare_errors = 0;
  Key alice_sifted;
  Key bob_sifted;

  double kept_fraction() const {
    return n_pairs == 0 ? 0.0 : static_cast<double>(kept) / static_cast<double>(n_pairs);
  }
};

/// Both sides pick X or Z independently per pair; rounds with equal bases are
/// kept and half of the kept rounds (by default) are compared publicly.
Bb84Result bb84_epr_baseline(std::size_t n_pairs, std::uint64_t seed,
                             double compare_fraction = 0.5);

// ---------------------------------------------------------------------------

/// 4/(N(N-1)) for even N >= 4, the stated chance that two picked slots are
/// an entangled pair. Throws std::invalid_argument otherwise.
Exact pop_correct_pick_probability(std::size_t n_qubits);

/// (N/2) / C(N,2) = 1/(N-1): the chance that two uniformly picked slots are
/// partners when every slot belongs to one of N/2 pairs.
Exact pop_matching_pick_probability(std::size_t n_qubits);

void validate_pop_size(std::size_t n_qubits);

}  // namespace eprlab

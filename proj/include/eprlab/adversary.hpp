#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "eprlab/bell.hpp"
#include "eprlab/channel.hpp"
#include "eprlab/protocols.hpp"
#include "eprlab/rng.hpp"

namespace eprlab {

enum class GuessPolicy : std::uint8_t { Uniform };

/// Measure-resend attack settings. Eve attacks m = round(f n) of n blocks,
/// chosen without replacement.
struct AttackConfig {
  double f = 1.0;
  GuessPolicy policy = GuessPolicy::Uniform;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument unless 0 <= f <= 1.
  void validate() const;

  /// {"f": 0.5, "seed": 7, "policy": "uniform"}; missing keys keep defaults.
  static AttackConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct EveRecord {
  std::size_t block_index = 0;
  Pairing pairing_guess = Pairing::Sequential;
  LabelPair outcome;
  /// outcome labels read in slot order, whether or not the guess was right
  unsigned inferred_bits = 0;
};

/// Bell-measures both pairs of `guess` and leaves the collapsed block on the
/// wire for Bob.
EveRecord measure_resend(std::size_t block_index, WireBlock& wire, Pairing guess, Rng& rng);

class MeasureResendAttack final : public BlockInterceptor {
 public:
  MeasureResendAttack(AttackConfig config, std::size_t n_blocks);

  bool targets(std::size_t block_index) const { return targeted_.at(block_index); }
  std::size_t attacked_count() const { return attacked_; }
  const AttackConfig& config() const { return config_; }

  /// Uses stream(config.seed, block_index) for the layout guess and the
  /// measurement, so the attack on one block is independent of all others.
  std::optional<EveAction> intercept(std::size_t block_index, WireBlock& wire) const override;

 private:
  AttackConfig config_;
  std::vector<bool> targeted_;
  std::size_t attacked_ = 0;
};

EveRecord to_eve_record(const BlockTranscript& t);

/// Exact law of Eve's four inferred bits for a block prepared as `initial`,
/// with her layout guess a fair coin. Indexed by the 4-bit value.
std::array<Exact, 16> eve_outcome_distribution(LabelPair initial);

/// Exhaustive two-measurement tree for one block: Eve's guess and outcome,
/// then Bob's outcome in Alice's layout.
struct OutcomeBranch {
  Pairing eve_guess;
  LabelPair eve_outcome;
  LabelPair bob_outcome;
  Exact probability;
};

std::vector<OutcomeBranch> attack_outcome_tree(LabelPair initial, Pairing alice_pairing);

/// P(Bob's outcome differs from Alice's labels) over the tree.
Exact detection_probability(LabelPair initial, Pairing alice_pairing);

/// P(Eve's inferred bits are Alice's bits) over the tree.
Exact eve_success_probability(LabelPair initial, Pairing alice_pairing);

// ---------------------------------------------------------------------------
// Two-slot interception of a permuted sequence.

struct PopInterceptResult {
  BellLabel outcome;
  bool information_event = false;  // picks were a prepared pair
  bool disturbance = false;        // entanglement was swapped
};

/// Bell measurement on two distinct wire slots; the register keeps the
/// post-measurement state for Bob.
PopInterceptResult pop_intercept(PairedRegister& wire, std::size_t slot_a, std::size_t slot_b,
                                 Rng& rng);

/// Attacks a share f of sequences; each attacked sequence gets `picks_per_sequence`
/// Bell measurements on uniformly random slot pairs (disjoint within a sequence).
class PopAttack final : public SequenceInterceptor {
 public:
  PopAttack(AttackConfig config, std::size_t n_sequences, std::size_t picks_per_sequence = 1);

  bool targets(std::size_t sequence_index) const { return targeted_.at(sequence_index); }
  std::size_t attacked_count() const { return attacked_; }

  std::vector<SlotMeasurement> intercept(std::size_t sequence_index,
                                         PairedRegister& wire) const override;

 private:
  AttackConfig config_;
  std::size_t picks_;
  std::vector<bool> targeted_;
  std::size_t attacked_ = 0;
};

}  // namespace eprlab

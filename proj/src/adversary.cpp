#include "eprlab/adversary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eprlab {

namespace {

std::size_t attacked_share(double f, std::size_t n) {
  return static_cast<std::size_t>(std::llround(f * static_cast<double>(n)));
}

}  // namespace

void AttackConfig::validate() const {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw std::invalid_argument("attack fraction f must lie in [0, 1]");
  }
}

AttackConfig AttackConfig::from_json(const nlohmann::json& j) {
  AttackConfig c;
  if (j.contains("f")) c.f = j.at("f").get<double>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("policy")) {
    const auto policy = j.at("policy").get<std::string>();
    if (policy != "uniform" && policy != "UNIFORM") {
      throw std::invalid_argument("unknown pairing guess policy: " + policy);
    }
  }
  c.validate();
  return c;
}

nlohmann::json AttackConfig::to_json() const {
  return {{"f", f}, {"seed", seed}, {"policy", "uniform"}};
}

EveRecord measure_resend(std::size_t block_index, WireBlock& wire, Pairing guess, Rng& rng) {
  EveRecord r;
  r.block_index = block_index;
  r.pairing_guess = guess;
  r.outcome = wire.measure(guess, rng);
  r.inferred_bits = bits_from_labels(r.outcome);
  return r;
}

MeasureResendAttack::MeasureResendAttack(AttackConfig config, std::size_t n_blocks)
    : config_(config) {
  config_.validate();
  attacked_ = attacked_share(config_.f, n_blocks);
  Rng rng(derive_seed(config_.seed, "targets"));
  targeted_ = choose_subset(n_blocks, attacked_, rng);
}

std::optional<EveAction> MeasureResendAttack::intercept(std::size_t block_index,
                                                        WireBlock& wire) const {
  if (!targets(block_index)) return std::nullopt;
  Rng rng = stream(config_.seed, block_index);
  const Pairing guess = coin(rng) ? Pairing::Crossed : Pairing::Sequential;
  const EveRecord r = measure_resend(block_index, wire, guess, rng);
  return EveAction{r.pairing_guess, r.outcome};
}

EveRecord to_eve_record(const BlockTranscript& t) {
  if (!t.eve) {
    throw std::invalid_argument("to_eve_record: block was not attacked");
  }
  EveRecord r;
  r.block_index = t.block_index;
  r.pairing_guess = t.eve->pairing_guess;
  r.outcome = t.eve->outcome;
  r.inferred_bits = bits_from_labels(t.eve->outcome);
  return r;
}

std::vector<OutcomeBranch> attack_outcome_tree(LabelPair initial, Pairing alice_pairing) {
  std::vector<OutcomeBranch> tree;
  const Exact half(1, 2);
  for (const Pairing guess : kAllPairings) {
    for (const auto& [eve, p_eve] : measurement_distribution(initial, alice_pairing, guess)) {
      for (const auto& [bob, p_bob] : measurement_distribution(eve, guess, alice_pairing)) {
        tree.push_back(OutcomeBranch{guess, eve, bob, half * p_eve * p_bob});
      }
    }
  }
  return tree;
}

Exact detection_probability(LabelPair initial, Pairing alice_pairing) {
  Exact p{0};
  for (const auto& b : attack_outcome_tree(initial, alice_pairing)) {
    if (b.bob_outcome != initial) p += b.probability;
  }
  return p;
}

Exact eve_success_probability(LabelPair initial, Pairing alice_pairing) {
  Exact p{0};
  for (const auto& b : attack_outcome_tree(initial, alice_pairing)) {
    if (b.eve_outcome == initial) p += b.probability;
  }
  return p;
}

std::array<Exact, 16> eve_outcome_distribution(LabelPair initial) {
  // Alice's layout does not change the law; use Sequential.
  std::array<Exact, 16> dist{};
  const Exact half(1, 2);
  for (const Pairing guess : kAllPairings) {
    for (const auto& [eve, p] : measurement_distribution(initial, Pairing::Sequential, guess)) {
      dist[bits_from_labels(eve)] += half * p;
    }
  }
  return dist;
}

PopInterceptResult pop_intercept(PairedRegister& wire, std::size_t slot_a, std::size_t slot_b,
                                 Rng& rng) {
  if (slot_a == slot_b) {
    throw std::invalid_argument("pop_intercept: picks must be distinct slots");
  }
  const auto m = wire.measure(slot_a, slot_b, rng);
  return PopInterceptResult{m.outcome, !m.swapped, m.swapped};
}

PopAttack::PopAttack(AttackConfig config, std::size_t n_sequences, std::size_t picks_per_sequence)
    : config_(config), picks_(picks_per_sequence) {
  config_.validate();
  attacked_ = attacked_share(config_.f, n_sequences);
  Rng rng(derive_seed(config_.seed, "targets"));
  targeted_ = choose_subset(n_sequences, attacked_, rng);
}

std::vector<SlotMeasurement> PopAttack::intercept(std::size_t sequence_index,
                                                  PairedRegister& wire) const {
  if (!targets(sequence_index)) return {};
  if (2 * picks_ > wire.size()) {
    throw std::invalid_argument("PopAttack: more picks than the sequence holds");
  }
  Rng rng = stream(config_.seed, sequence_index);
  // disjoint picks: the first 2*picks entries of a random slot order
  const auto order = random_permutation(wire.size(), rng);
  std::vector<SlotMeasurement> out;
  out.reserve(picks_);
  for (std::size_t k = 0; k < picks_; ++k) {
    const std::size_t a = order[2 * k];
    const std::size_t b = order[2 * k + 1];
    const auto r = pop_intercept(wire, a, b, rng);
    out.push_back(SlotMeasurement{a, b, r.outcome, r.information_event});
  }
  return out;
}

}  // namespace eprlab

#include "eprlab/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace eprlab {

namespace {

std::size_t rounded_share(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
}

}  // namespace

unsigned read_bits4(std::span<const std::uint8_t> key, std::size_t offset) {
  unsigned v = 0;
  for (std::size_t k = 0; k < 4; ++k) v = (v << 1) | (key[offset + k] & 1u);
  return v;
}

void append_bits(Key& key, unsigned value, int width) {
  for (int k = width - 1; k >= 0; --k) key.push_back(static_cast<std::uint8_t>((value >> k) & 1u));
}

Key random_key(std::size_t n_bits, Rng& rng) {
  Key key(n_bits);
  for (auto& b : key) b = static_cast<std::uint8_t>(rng() >> 63);
  return key;
}

std::string_view role_name(BlockRole role) { return role == BlockRole::Data ? "data" : "decoy"; }

PairingAnnouncement announce_pairings(std::span<const BlockState> blocks,
                                      const ReceiptConfirmation& receipt) {
  if (receipt.units_received != blocks.size()) {
    throw std::logic_error("announce_pairings: receipt does not cover every block");
  }
  PairingAnnouncement a;
  a.pairings_.reserve(blocks.size());
  for (const auto& b : blocks) a.pairings_.push_back(b.alice_pairing);
  return a;
}

BlockState protocol2_prepare_block(unsigned bits4, Pairing pairing_choice) {
  if (bits4 > 15) {
    throw std::invalid_argument("protocol2_prepare_block: value does not fit in four bits");
  }
  BlockState b;
  b.alice_labels = LabelPair{bell_from_bits(bits4 >> 2), bell_from_bits(bits4 & 3u)};
  b.alice_pairing = pairing_choice;
  // crossed: the second particle of the first pair trades places with the
  // first particle of the second
  b.wire_order = pairing_choice == Pairing::Sequential ? std::array<std::uint8_t, 4>{1, 2, 3, 4}
                                                       : std::array<std::uint8_t, 4>{1, 3, 2, 4};
  return b;
}

BlockState protocol2_prepare_block(unsigned bits4, Rng& rng) {
  return protocol2_prepare_block(bits4, coin(rng) ? Pairing::Crossed : Pairing::Sequential);
}

WireBlock transmit(const BlockState& block) {
  return WireBlock(block.alice_labels, block.alice_pairing);
}

LabelPair protocol2_bob_measure(WireBlock& wire, Pairing announced_pairing, Rng& rng) {
  return wire.measure(announced_pairing, rng);
}

Protocol2Run protocol2_run(std::span<const std::uint8_t> key, const Protocol2Options& options,
                           const BlockInterceptor* eve) {
  if (key.empty() || key.size() % 4 != 0) {
    throw std::invalid_argument("protocol2_run: key length must be a positive multiple of 4");
  }
  if (!(options.compare_fraction > 0.0 && options.compare_fraction <= 1.0)) {
    throw std::invalid_argument("protocol2_run: compare_fraction must lie in (0, 1]");
  }
  const std::size_t n = key.size() / 4;

  Rng compare_rng(derive_seed(options.seed, "compare"));
  const auto compared = choose_subset(n, rounded_share(options.compare_fraction, n), compare_rng);

  // phase 1: preparation and transmission
  std::vector<Rng> block_rngs;
  std::vector<BlockState> blocks;
  std::vector<WireBlock> wires;
  std::vector<std::optional<EveAction>> eve_actions(n);
  block_rngs.reserve(n);
  blocks.reserve(n);
  wires.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    block_rngs.push_back(stream(options.seed, i));
    blocks.push_back(protocol2_prepare_block(read_bits4(key, 4 * i), block_rngs.back()));
    blocks.back().role = compared[i] ? BlockRole::Decoy : BlockRole::Data;
    wires.push_back(transmit(blocks.back()));
    if (eve != nullptr) {
      eve_actions[i] = eve->intercept(i, wires.back());
    }
  }
  const ReceiptConfirmation receipt{wires.size()};

  // phase 2: layouts announced, Bob measures, decoys compared
  const PairingAnnouncement announcement = announce_pairings(blocks, receipt);
  Protocol2Run run;
  run.transcripts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BlockTranscript t;
    t.block_index = i;
    t.block = blocks[i];
    t.eve = eve_actions[i];
    t.bob_outcome = protocol2_bob_measure(wires[i], announcement.pairing(i), block_rngs[i]);
    if (t.block.role == BlockRole::Decoy) {
      ++run.compared;
      t.detected = t.bob_outcome != t.block.alice_labels;
      run.detections += t.detected;
    } else {
      append_bits(run.alice_key, bits_from_labels(t.block.alice_labels), 4);
      append_bits(run.bob_key, bits_from_labels(t.bob_outcome), 4);
    }
    run.transcripts.push_back(t);
  }
  return run;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> PopSequence::pair_map() const {
  std::vector<std::size_t> map(n_qubits);
  for (std::size_t k = 0; k < pair_labels.size(); ++k) {
    map[slot_of(k, 0)] = slot_of(k, 1);
    map[slot_of(k, 1)] = slot_of(k, 0);
  }
  return map;
}

PairedRegister PopSequence::emit() const {
  PairedRegister wire(n_qubits);
  for (std::size_t k = 0; k < pair_labels.size(); ++k) {
    wire.entangle(slot_of(k, 0), slot_of(k, 1), pair_labels[k]);
  }
  return wire;
}

PopSequence make_pop_sequence(std::vector<BellLabel> pair_labels, Rng& rng) {
  if (pair_labels.size() < 2) {
    throw std::invalid_argument("make_pop_sequence: need at least two pairs");
  }
  PopSequence seq;
  seq.n_qubits = 2 * pair_labels.size();
  seq.pair_labels = std::move(pair_labels);
  seq.permutation = random_permutation(seq.n_qubits, rng);
  return seq;
}

PermutationAnnouncement announce_permutation(const PopSequence& seq,
                                             const ReceiptConfirmation& receipt) {
  if (receipt.units_received != seq.n_qubits) {
    throw std::logic_error("announce_permutation: receipt does not cover every qubit");
  }
  return PermutationAnnouncement{seq.permutation};
}

std::vector<BellLabel> pop_bob_measure(PairedRegister& wire,
                                       const PermutationAnnouncement& announcement, Rng& rng) {
  const auto& perm = announcement.permutation;
  std::vector<BellLabel> out;
  out.reserve(perm.size() / 2);
  for (std::size_t k = 0; 2 * k + 1 < perm.size(); ++k) {
    out.push_back(wire.measure(perm[2 * k], perm[2 * k + 1], rng).outcome);
  }
  return out;
}

Protocol1Run protocol1_run(std::span<const std::uint8_t> key, const Protocol1Options& options,
                           const SequenceInterceptor* eve) {
  if (key.empty() || key.size() % 2 != 0) {
    throw std::invalid_argument("protocol1_run: key length must be positive and even");
  }
  if (!(options.decoy_fraction >= 0.0)) {
    throw std::invalid_argument("protocol1_run: decoy_fraction must be non-negative");
  }
  const std::size_t n_data = key.size() / 2;
  const std::size_t n_decoy = rounded_share(options.decoy_fraction, n_data);

  Rng rng(derive_seed(options.seed, "protocol1"));
  std::vector<BellLabel> labels;
  labels.reserve(n_data + n_decoy);
  for (std::size_t k = 0; k < n_data; ++k) {
    const unsigned bits = (unsigned{key[2 * k]} & 1u) << 1 | (key[2 * k + 1] & 1u);
    labels.push_back(pauli_encode(pauli_for_bits(bits), kPhiPlus));
  }
  for (std::size_t k = 0; k < n_decoy; ++k) {
    labels.push_back(BellLabel::from_index(static_cast<unsigned>(uniform_below(rng, 4))));
  }
  // a lone pair cannot be hidden by reordering
  if (labels.size() < 2) {
    labels.push_back(BellLabel::from_index(static_cast<unsigned>(uniform_below(rng, 4))));
  }
  const std::size_t n_pairs = labels.size();

  const PopSequence seq = make_pop_sequence(std::move(labels), rng);
  PairedRegister wire = seq.emit();

  Protocol1Run run;
  if (eve != nullptr) {
    run.interceptions = eve->intercept(0, wire);
  }
  const ReceiptConfirmation receipt{wire.size()};
  const auto announcement = announce_permutation(seq, receipt);
  const auto bob = pop_bob_measure(wire, announcement, rng);

  run.pairs.reserve(n_pairs);
  for (std::size_t k = 0; k < n_pairs; ++k) {
    PairTranscript t;
    t.pair_index = k;
    t.alice_label = seq.pair_labels[k];
    t.role = k < n_data ? BlockRole::Data : BlockRole::Decoy;
    t.bob_outcome = bob[k];
    if (t.role == BlockRole::Decoy) {
      ++run.compared;
      t.detected = t.bob_outcome != t.alice_label;
      run.detections += t.detected;
    } else {
      append_bits(run.alice_key, bits_from_bell(t.alice_label), 2);
      append_bits(run.bob_key, bits_from_bell(t.bob_outcome), 2);
    }
    run.pairs.push_back(t);
  }
  return run;
}

// ---------------------------------------------------------------------------

std::pair<std::uint8_t, std::uint8_t> measure_phi_plus(Basis alice, Basis bob, Rng& rng) {
  // phi+ = (|00>+|11>)/sqrt2 = (|++>+|-->)/sqrt2: equal bases give equal
  // uniform bits, Z against X gives independent uniform bits
  const auto a = static_cast<std::uint8_t>(coin(rng));
  if (alice == bob) return {a, a};
  return {a, static_cast<std::uint8_t>(coin(rng))};
}

Bb84Result bb84_epr_baseline(std::size_t n_pairs, std::uint64_t seed, double compare_fraction) {
  if (n_pairs == 0) {
    throw std::invalid_argument("bb84_epr_baseline: need at least one pair");
  }
  if (!(compare_fraction >= 0.0 && compare_fraction <= 1.0)) {
    throw std::invalid_argument("bb84_epr_baseline: compare_fraction must lie in [0, 1]");
  }
  Bb84Result r;
  r.n_pairs = n_pairs;
  Key alice_kept, bob_kept;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    Rng rng = stream(seed, i);
    const Basis a = coin(rng) ? Basis::X : Basis::Z;
    const Basis b = coin(rng) ? Basis::X : Basis::Z;
    const auto [x, y] = measure_phi_plus(a, b, rng);
    if (a == b) {
      alice_kept.push_back(x);
      bob_kept.push_back(y);
    }
  }
  r.kept = alice_kept.size();
  Rng compare_rng(derive_seed(seed, "compare"));
  const auto compared = choose_subset(r.kept, rounded_share(compare_fraction, r.kept), compare_rng);
  for (std::size_t i = 0; i < r.kept; ++i) {
    if (compared[i]) {
      ++r.compared;
      r.compare_errors += alice_kept[i] != bob_kept[i];
    } else {
      r.alice_sifted.push_back(alice_kept[i]);
      r.bob_sifted.push_back(bob_kept[i]);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

void validate_pop_size(std::size_t n_qubits) {
  if (n_qubits < 4 || n_qubits % 2 != 0) {
    throw std::invalid_argument("sequence length must be even and at least 4");
  }
}

Exact pop_correct_pick_probability(std::size_t n_qubits) {
  validate_pop_size(n_qubits);
  const auto n = static_cast<std::int64_t>(n_qubits);
  return Exact(4, n * (n - 1));
}

Exact pop_matching_pick_probability(std::size_t n_qubits) {
  validate_pop_size(n_qubits);
  return Exact(1, static_cast<std::int64_t>(n_qubits) - 1);
}

}  // namespace eprlab

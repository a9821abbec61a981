#include "eprlab/channel.hpp"

#include <stdexcept>

namespace eprlab {

PairedRegister::PairedRegister(std::size_t n_slots)
    : partner_(n_slots, kUnpaired), label_(n_slots, kPhiPlus) {
  if (n_slots >= kUnpaired) {
    throw std::invalid_argument("PairedRegister: too many slots");
  }
}

void PairedRegister::entangle(std::size_t s, std::size_t t, BellLabel label) {
  if (s == t || s >= size() || t >= size()) {
    throw std::invalid_argument("PairedRegister::entangle: bad slots");
  }
  if (partner_[s] != kUnpaired || partner_[t] != kUnpaired) {
    throw std::logic_error("PairedRegister::entangle: slot already paired");
  }
  partner_[s] = static_cast<std::uint32_t>(t);
  partner_[t] = static_cast<std::uint32_t>(s);
  label_[s] = label_[t] = label;
}

bool PairedRegister::complete() const {
  for (const auto p : partner_) {
    if (p == kUnpaired) return false;
  }
  return true;
}

PairedRegister::Measurement PairedRegister::measure(std::size_t s, std::size_t t, Rng& rng) {
  if (s == t || s >= size() || t >= size()) {
    throw std::invalid_argument("PairedRegister::measure: picks must be two distinct slots");
  }
  if (partner_[s] == kUnpaired || partner_[t] == kUnpaired) {
    throw std::logic_error("PairedRegister::measure: unpaired slot");
  }
  if (partner_[s] == t) {
    return {label_[s], false};
  }
  // qubits 1..4 = s, partner(s), t, partner(t): the register holds the
  // Sequential layout and the measurement asks for the Crossed one.
  const std::size_t s2 = partner_[s];
  const std::size_t t2 = partner_[t];
  const auto dist = measurement_distribution(LabelPair{label_[s], label_[t]},
                                             Pairing::Sequential, Pairing::Crossed);
  const LabelPair out = sample(dist, rng);
  partner_[s] = static_cast<std::uint32_t>(t);
  partner_[t] = static_cast<std::uint32_t>(s);
  partner_[s2] = static_cast<std::uint32_t>(t2);
  partner_[t2] = static_cast<std::uint32_t>(s2);
  label_[s] = label_[t] = out.first;
  label_[s2] = label_[t2] = out.second;
  return {out.first, true};
}

LabelPair sample(const Distribution& dist, Rng& rng) {
  if (dist.empty()) {
    throw std::invalid_argument("sample: empty distribution");
  }
  const double u = uniform01(rng);
  double acc = 0.0;
  for (const auto& [labels, p] : dist) {
    acc += to_double(p);
    if (u < acc) return labels;
  }
  return dist.back().first;
}

WireBlock::WireBlock(LabelPair labels, Pairing pairing) : qubits_(4) {
  if (pairing == Pairing::Sequential) {
    qubits_.entangle(0, 1, labels.first);
    qubits_.entangle(2, 3, labels.second);
  } else {
    qubits_.entangle(0, 2, labels.first);
    qubits_.entangle(1, 3, labels.second);
  }
}

LabelPair WireBlock::measure(Pairing pairing, Rng& rng) {
  const bool seq = pairing == Pairing::Sequential;
  const BellLabel first = qubits_.measure(0, seq ? 1 : 2, rng).outcome;
  const BellLabel second = qubits_.measure(seq ? 2 : 1, 3, rng).outcome;
  return LabelPair{first, second};
}

}  // namespace eprlab

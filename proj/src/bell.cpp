#include "eprlab/bell.hpp"

#include <algorithm>
#include <stdexcept>

namespace eprlab {

namespace {

constexpr std::array<std::string_view, 4> kLabelNames{"phi+", "phi-", "psi+", "psi-"};

Decomposition closed_form_entry(LabelPair initial) {
  const BellLabel a = initial.first;
  const BellLabel b = initial.second;
  Decomposition out{Pairing::Crossed, {}};
  for (unsigned i = 0; i < 16; ++i) {
    const auto [c, d] = LabelPair::from_index(i);
    if ((c.flip ^ d.flip) != (a.flip ^ b.flip) || (c.phase ^ d.phase) != (a.phase ^ b.phase)) {
      continue;
    }
    const unsigned parity = (b.phase & c.flip) ^ (d.phase & a.flip);
    out.terms.push_back(Term{LabelPair{c, d}, Exact(parity ? -1 : 1, 2)});
  }
  return out;
}

}  // namespace

std::string_view label_name(BellLabel label) { return kLabelNames[label.index()]; }

std::optional<BellLabel> parse_label(std::string_view name) {
  for (unsigned i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == name) {
      return BellLabel::from_index(i);
    }
  }
  return std::nullopt;
}

std::string_view pairing_name(Pairing p) {
  return p == Pairing::Sequential ? "seq" : "crossed";
}

std::string_view pairing_layout(Pairing p) {
  return p == Pairing::Sequential ? "{(1,2),(3,4)}" : "{(1,3),(2,4)}";
}

std::optional<Pairing> parse_pairing(std::string_view name) {
  if (name == "seq" || name == "sequential") return Pairing::Sequential;
  if (name == "crossed") return Pairing::Crossed;
  return std::nullopt;
}

std::string to_string(LabelPair labels) {
  return std::string(label_name(labels.first)) + " " + std::string(label_name(labels.second));
}

std::string to_string(LabelPair labels, Pairing pairing) {
  const bool seq = pairing == Pairing::Sequential;
  return "|" + std::string(label_name(labels.first)) + (seq ? ">_12 |" : ">_13 |") +
         std::string(label_name(labels.second)) + (seq ? ">_34" : ">_24");
}

Exact Decomposition::norm_squared() const {
  Exact sum{0};
  for (const auto& t : terms) {
    sum += t.coefficient * t.coefficient;
  }
  return sum;
}

std::optional<Exact> Decomposition::coefficient_of(LabelPair labels) const {
  for (const auto& t : terms) {
    if (t.labels == labels) return t.coefficient;
  }
  return std::nullopt;
}

Exact probability_of(const Distribution& dist, LabelPair labels) {
  for (const auto& [l, p] : dist) {
    if (l == labels) return p;
  }
  return Exact{0};
}

BellLabel bell_from_bits(unsigned bits) {
  if (bits > 3) {
    throw std::invalid_argument("bell_from_bits: value does not fit in two bits");
  }
  return BellLabel::from_index(bits);
}

unsigned bits_from_bell(BellLabel label) { return label.index(); }

unsigned bits_from_labels(LabelPair labels) { return labels.index(); }

LabelPair labels_from_bits(unsigned bits4) {
  if (bits4 > 15) {
    throw std::invalid_argument("labels_from_bits: value does not fit in four bits");
  }
  return LabelPair::from_index(bits4);
}

BellLabel pauli_encode(Pauli op, BellLabel state) {
  switch (op) {
    case Pauli::I:
      return state;
    case Pauli::Z:
      return BellLabel{state.flip, static_cast<std::uint8_t>(state.phase ^ 1u)};
    case Pauli::X:
      return BellLabel{static_cast<std::uint8_t>(state.flip ^ 1u), state.phase};
    case Pauli::iY:
      return BellLabel{static_cast<std::uint8_t>(state.flip ^ 1u),
                       static_cast<std::uint8_t>(state.phase ^ 1u)};
  }
  return state;
}

Pauli pauli_for_bits(unsigned bits) {
  static constexpr std::array<Pauli, 4> kOps{Pauli::I, Pauli::Z, Pauli::X, Pauli::iY};
  if (bits > 3) {
    throw std::invalid_argument("pauli_for_bits: value does not fit in two bits");
  }
  return kOps[bits];
}

const RegroupingTable& RegroupingTable::standard() {
  static const RegroupingTable table = [] {
    RegroupingTable t;
    for (unsigned i = 0; i < 16; ++i) {
      t.entries_[i] = closed_form_entry(LabelPair::from_index(i));
    }
    return t;
  }();
  return table;
}

Decomposition swap_decompose(LabelPair initial, Pairing from, Pairing to) {
  return swap_decompose(RegroupingTable::standard(), initial, from, to);
}

Decomposition swap_decompose(const RegroupingTable& table, LabelPair initial, Pairing from,
                             Pairing to) {
  if (from == to) {
    return Decomposition{to, {Term{initial, Exact{1}}}};
  }
  Decomposition out = table.entry(initial);
  out.pairing = to;
  return out;
}

Distribution measurement_distribution(LabelPair initial, Pairing prepared_in,
                                      Pairing measured_in) {
  const Decomposition d = swap_decompose(initial, prepared_in, measured_in);
  Distribution dist;
  dist.reserve(d.terms.size());
  for (const auto& t : d.terms) {
    dist.emplace_back(t.labels, t.coefficient * t.coefficient);
  }
  return dist;
}

std::array<LabelPair, 4> xor_compatible(LabelPair initial) {
  std::array<LabelPair, 4> out{};
  for (unsigned x = 0; x < 4; ++x) {
    const auto shift = BellLabel::from_index(x);
    const auto apply = [&](BellLabel l) {
      return BellLabel{static_cast<std::uint8_t>(l.flip ^ shift.flip),
                       static_cast<std::uint8_t>(l.phase ^ shift.phase)};
    };
    out[x] = LabelPair{apply(initial.first), apply(initial.second)};
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace eprlab

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eprlab/exact.hpp"

namespace eprlab {

/// One of the four Bell states, stored as its two parity bits.
///
///   flip  = 0 for the phi family (|00>,|11> support), 1 for psi (|01>,|10>)
///   phase = 0 for "+", 1 for "-"
///
/// With this encoding the label's index (flip, phase) is exactly the 2-bit
/// key value it carries: 00 -> phi+, 01 -> phi-, 10 -> psi+, 11 -> psi-.
struct BellLabel {
  std::uint8_t flip = 0;
  std::uint8_t phase = 0;

  constexpr unsigned index() const { return (unsigned{flip} << 1) | phase; }
  static constexpr BellLabel from_index(unsigned i) {
    return BellLabel{static_cast<std::uint8_t>((i >> 1) & 1u), static_cast<std::uint8_t>(i & 1u)};
  }

  constexpr auto operator<=>(const BellLabel&) const = default;
};

inline constexpr BellLabel kPhiPlus{0, 0};
inline constexpr BellLabel kPhiMinus{0, 1};
inline constexpr BellLabel kPsiPlus{1, 0};
inline constexpr BellLabel kPsiMinus{1, 1};
inline constexpr std::array<BellLabel, 4> kAllLabels{kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus};

/// ASCII names used on the command line and in every machine-readable output.
std::string_view label_name(BellLabel label);
std::optional<BellLabel> parse_label(std::string_view name);

/// How four qubits 1..4 are grouped into two Bell pairs. The third grouping
/// {(1,4),(2,3)} is deliberately not representable.
enum class Pairing : std::uint8_t {
  Sequential,  // {(1,2),(3,4)}
  Crossed,     // {(1,3),(2,4)}
};

inline constexpr std::array<Pairing, 2> kAllPairings{Pairing::Sequential, Pairing::Crossed};

constexpr Pairing other(Pairing p) {
  return p == Pairing::Sequential ? Pairing::Crossed : Pairing::Sequential;
}

/// "seq" / "crossed".
std::string_view pairing_name(Pairing p);
/// "{(1,2),(3,4)}" / "{(1,3),(2,4)}" with 1-based qubit numbers.
std::string_view pairing_layout(Pairing p);
std::optional<Pairing> parse_pairing(std::string_view name);

/// Ordered labels of the first and second pair of a layout.
struct LabelPair {
  BellLabel first;
  BellLabel second;

  constexpr unsigned index() const { return first.index() * 4 + second.index(); }
  static constexpr LabelPair from_index(unsigned i) {
    return LabelPair{BellLabel::from_index((i >> 2) & 3u), BellLabel::from_index(i & 3u)};
  }

  constexpr auto operator<=>(const LabelPair&) const = default;
};

/// "phi+ psi-" style rendering. With a pairing, qubit subscripts are added,
/// e.g. "|phi+>_13 |psi+>_24".
std::string to_string(LabelPair labels);
std::string to_string(LabelPair labels, Pairing pairing);

struct PairProduct {
  LabelPair labels;
  Pairing pairing = Pairing::Sequential;
  int sign = +1;

  bool operator==(const PairProduct&) const = default;
};

struct Term {
  LabelPair labels;
  Exact coefficient;

  bool operator==(const Term&) const = default;
};

/// A state written in one layout's product basis. Terms are kept sorted by
/// label index; coefficients are nonzero.
struct Decomposition {
  Pairing pairing = Pairing::Sequential;
  std::vector<Term> terms;

  Exact norm_squared() const;
  std::optional<Exact> coefficient_of(LabelPair labels) const;

  bool operator==(const Decomposition&) const = default;
};

/// Probability map over outcome label pairs, sorted by label index.
using Distribution = std::vector<std::pair<LabelPair, Exact>>;

Exact probability_of(const Distribution& dist, LabelPair labels);

// ---------------------------------------------------------------------------
// Encoding

/// bits in [0, 3]: 00 -> phi+, 01 -> phi-, 10 -> psi+, 11 -> psi-.
/// Throws std::invalid_argument for anything wider than two bits.
BellLabel bell_from_bits(unsigned bits);
unsigned bits_from_bell(BellLabel label);

/// Four key bits (MSB first) carried by a pair of labels, and back.
unsigned bits_from_labels(LabelPair labels);
LabelPair labels_from_bits(unsigned bits4);

enum class Pauli : std::uint8_t { I, Z, X, iY };

/// Applies the Pauli to the second qubit of the pair. Z toggles the phase bit,
/// X the flip bit and iY both; the global phase picked up by iY is dropped.
BellLabel pauli_encode(Pauli op, BellLabel state);

/// The operator that takes phi+ to bell_from_bits(bits).
Pauli pauli_for_bits(unsigned bits);

// ---------------------------------------------------------------------------
// Regrouping

/// The 16 four-term decompositions of a Sequential product in the Crossed
/// basis. The same coefficients serve Crossed -> Sequential, since swapping
/// qubits 2 and 3 exchanges the two layouts and the change of basis is real
/// and symmetric.
class RegroupingTable {
 public:
  /// Closed form:
  ///   <c_13 d_24 | a_12 b_34> = 1/2 (-1)^(b.phase*c.flip + d.phase*a.flip)
  /// when c^d == a^b componentwise, zero otherwise.
  static const RegroupingTable& standard();

  const Decomposition& entry(LabelPair initial) const { return entries_[initial.index()]; }
  Decomposition& mutable_entry(LabelPair initial) { return entries_[initial.index()]; }

 private:
  std::array<Decomposition, 16> entries_;
};

/// Rewrites a_from b_from in the `to` layout. Same layout gives the single
/// term with coefficient +1; otherwise four terms of magnitude 1/2.
Decomposition swap_decompose(LabelPair initial, Pairing from, Pairing to);
Decomposition swap_decompose(const RegroupingTable& table, LabelPair initial, Pairing from,
                             Pairing to);

/// Born-rule probabilities of a Bell-pair measurement in `measured_in` on a
/// state prepared as `initial` in `prepared_in`.
Distribution measurement_distribution(LabelPair initial, Pairing prepared_in, Pairing measured_in);

/// Outcome labels reachable from `initial` by one regrouping: the four label
/// pairs whose flip and phase parities match.
std::array<LabelPair, 4> xor_compatible(LabelPair initial);

}  // namespace eprlab

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "eprlab/bell.hpp"

namespace eprlab {

enum class ProtocolKind : std::uint8_t { P1, P2, Bb84Epr, Pop };

std::string_view protocol_name(ProtocolKind p);  // "p1", "p2", "bb84", "pop"
std::optional<ProtocolKind> parse_protocol(std::string_view name);

struct SweepSpec {
  enum class Param : std::uint8_t { F, N };
  Param param = Param::F;
  std::vector<double> values;
};

/// One Monte Carlo campaign.
///
/// n_blocks counts four-qubit blocks for P2, Bell pairs of the single
/// permuted sequence for P1, phi+ pairs for BB84 and N-qubit sequences for
/// POP. compare_fraction is the share of blocks (P2, POP) or kept rounds
/// (BB84) that are compared publicly; for P1 it is the number of decoy pairs
/// per data pair.
struct CampaignConfig {
  ProtocolKind protocol = ProtocolKind::P2;
  std::size_t n_blocks = 100000;
  double f = 1.0;
  std::uint64_t seed = 1;
  double compare_fraction = 0.5;
  std::size_t n_qubits = 4;  // POP sequence length
  std::optional<SweepSpec> sweep;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;

  static CampaignConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Binomial proportion with a 95% normal-approximation interval.
struct Estimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double value = 0.0;
  double half_width = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::optional<double> analytic;

  static Estimate from_counts(std::uint64_t successes, std::uint64_t trials,
                              std::optional<double> analytic = std::nullopt);

  /// Standard error at the analytic value, sqrt(p(1-p)/n).
  double analytic_sigma() const;
  /// |value - analytic| <= k * analytic_sigma(); exact equality when sigma is 0.
  bool within_sigmas(double k) const;
  bool analytic_within_ci() const;
  /// "WITHIN_CI" / "OUTSIDE_CI" / "NO_TARGET"
  std::string_view verdict() const;
};

/// Counts over (Alice's 4-bit block, Eve's 4-bit inference); Eve column 16
/// holds blocks she did not measure.
struct JointHistogram {
  static constexpr unsigned kNoOutcome = 16;
  std::array<std::array<std::uint64_t, 17>, 16> counts{};

  void add(unsigned alice_bits, unsigned eve_bits) { ++counts.at(alice_bits).at(eve_bits); }
  std::uint64_t total() const;
};

struct MutualInformation {
  double raw_bits_per_block = 0.0;  // plug-in I(A:E) over 4-bit blocks
  double per_bit = 0.0;             // raw / 4, the scale of 5f/8
};

/// Plug-in estimate. Throws std::invalid_argument on an empty histogram.
MutualInformation estimate_mutual_information(const JointHistogram& histogram);

/// Eve's outcome classified by its label shift relative to Alice's labels:
/// index 0 is the correct block, 1..3 the three parity-compatible wrong ones.
struct OutcomeHistogram {
  std::array<std::uint64_t, 4> by_shift{};
  std::uint64_t incompatible = 0;

  void add(LabelPair alice, LabelPair eve);
  std::uint64_t total() const;
  /// Pearson statistic against {5/8, 1/8, 1/8, 1/8}.
  double chi_square() const;
};

/// 99th percentile of chi-square with 3 degrees of freedom.
double chi_square_critical_1pct();

/// Limit of the plug-in per-bit estimate for measure-resend at fraction f:
/// f (4 - H(5/8,1/8,1/8,1/8)) / 4.
double plugin_eve_info_per_bit(double f);

struct AttackReport {
  CampaignConfig config;

  std::size_t blocks = 0;
  std::size_t attacked = 0;
  std::size_t compared = 0;
  std::size_t compared_attacked = 0;
  std::size_t detection_events = 0;
  std::size_t key_bits = 0;
  std::size_t key_mismatches = 0;

  Estimate detection_rate;  // detected / compared attacked
  Estimate eve_accuracy;    // P2: correct 4-bit inference; POP/P1: entangled pick
  Estimate qber;            // erroneous / compared

  OutcomeHistogram eve_outcomes;
  double chi_square = 0.0;
  double chi_square_critical = 0.0;

  MutualInformation i_ae_empirical;
  std::optional<double> i_ae_analytic;
  std::optional<double> i_ae_plugin_limit;

  std::optional<double> pop_formula_probability;   // 4/(N(N-1))
  std::optional<double> pop_matching_probability;  // 1/(N-1)

  double claimed_detection = 15.0 / 16.0;
  bool claimed_refuted() const;
};

AttackReport run_campaign(const CampaignConfig& config);

nlohmann::ordered_json to_json(const AttackReport& report);

struct SweepRow {
  double param = 0.0;
  AttackReport report;
};

/// One campaign per grid value (run concurrently; results are independent of
/// scheduling). Throws std::invalid_argument for a missing or empty grid.
std::vector<SweepRow> sweep(const CampaignConfig& config);

/// Header: param,detection_rate,ci_lo,ci_hi,eve_acc,i_ae_emp,i_ae_analytic,qber
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace eprlab

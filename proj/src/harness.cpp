#include "eprlab/harness.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "eprlab/adversary.hpp"
#include "eprlab/analytics.hpp"
#include "eprlab/protocols.hpp"
#include "eprlab/rng.hpp"

namespace eprlab {

namespace {

constexpr double kInfoMatchTolerance = 0.01;

std::size_t count_mismatches(const Key& a, const Key& b) {
  std::size_t n = a.size() == b.size() ? 0 : std::max(a.size(), b.size());
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) n += a[i] != b[i];
  return n;
}

unsigned shift_index(BellLabel from, BellLabel to) {
  return BellLabel{static_cast<std::uint8_t>(from.flip ^ to.flip),
                   static_cast<std::uint8_t>(from.phase ^ to.phase)}
      .index();
}

void run_protocol2(const CampaignConfig& cfg, AttackReport& r) {
  Rng key_rng(derive_seed(cfg.seed, "key"));
  const Key key = random_key(4 * cfg.n_blocks, key_rng);
  const MeasureResendAttack eve(
      AttackConfig{cfg.f, GuessPolicy::Uniform, derive_seed(cfg.seed, "eve")}, cfg.n_blocks);
  const Protocol2Run run = protocol2_run(
      key, Protocol2Options{derive_seed(cfg.seed, "protocol"), cfg.compare_fraction}, &eve);

  JointHistogram joint;
  std::uint64_t eve_correct = 0;
  std::uint64_t detected_attacked = 0;
  std::uint64_t errors = 0;
  for (const auto& t : run.transcripts) {
    const unsigned alice_bits = bits_from_labels(t.block.alice_labels);
    const bool decoy = t.block.role == BlockRole::Decoy;
    if (t.eve) {
      ++r.attacked;
      eve_correct += t.eve->outcome == t.block.alice_labels;
      r.eve_outcomes.add(t.block.alice_labels, t.eve->outcome);
      joint.add(alice_bits, bits_from_labels(t.eve->outcome));
      if (decoy) {
        ++r.compared_attacked;
        detected_attacked += t.detected;
      }
    } else {
      joint.add(alice_bits, JointHistogram::kNoOutcome);
    }
    if (decoy) {
      ++r.compared;
      errors += t.detected;
    }
  }
  r.detection_events = run.detections;
  r.key_bits = run.alice_key.size();
  r.key_mismatches = count_mismatches(run.alice_key, run.bob_key);

  r.detection_rate = Estimate::from_counts(detected_attacked, r.compared_attacked, 3.0 / 8.0);
  r.eve_accuracy = Estimate::from_counts(eve_correct, r.attacked, 5.0 / 8.0);
  r.qber = Estimate::from_counts(errors, r.compared, analytics::attack_error_rate(cfg.f));
  if (r.attacked > 0) {
    r.chi_square = r.eve_outcomes.chi_square();
  }
  r.i_ae_empirical = estimate_mutual_information(joint);
  r.i_ae_analytic = analytics::eve_info(cfg.f);
  r.i_ae_plugin_limit = plugin_eve_info_per_bit(cfg.f);
}

void run_pop(const CampaignConfig& cfg, AttackReport& r) {
  const std::size_t n_pairs = cfg.n_qubits / 2;
  const PopAttack eve(AttackConfig{cfg.f, GuessPolicy::Uniform, derive_seed(cfg.seed, "eve")},
                      cfg.n_blocks);
  Rng compare_rng(derive_seed(cfg.seed, "compare"));
  const auto compared = choose_subset(
      cfg.n_blocks,
      static_cast<std::size_t>(std::llround(cfg.compare_fraction * static_cast<double>(cfg.n_blocks))),
      compare_rng);

  const std::uint64_t pop_seed = derive_seed(cfg.seed, "pop");
  std::uint64_t info_events = 0;
  std::uint64_t detected_attacked = 0;
  std::uint64_t errors = 0;
  Key alice_key, bob_key;
  for (std::size_t s = 0; s < cfg.n_blocks; ++s) {
    Rng rng = stream(pop_seed, s);
    std::vector<BellLabel> labels(n_pairs);
    for (auto& l : labels) l = BellLabel::from_index(static_cast<unsigned>(uniform_below(rng, 4)));
    const PopSequence seq = make_pop_sequence(labels, rng);
    PairedRegister wire = seq.emit();
    const auto picks = eve.intercept(s, wire);
    const auto announcement = announce_permutation(seq, ReceiptConfirmation{wire.size()});
    const auto bob = pop_bob_measure(wire, announcement, rng);

    bool mismatch = false;
    for (std::size_t k = 0; k < n_pairs; ++k) mismatch |= bob[k] != seq.pair_labels[k];
    if (!picks.empty()) {
      ++r.attacked;
      info_events += picks.front().entangled_pick;
    }
    if (compared[s]) {
      ++r.compared;
      errors += mismatch;
      if (!picks.empty()) {
        ++r.compared_attacked;
        detected_attacked += mismatch;
      }
    } else {
      for (std::size_t k = 0; k < n_pairs; ++k) {
        append_bits(alice_key, bits_from_bell(seq.pair_labels[k]), 2);
        append_bits(bob_key, bits_from_bell(bob[k]), 2);
      }
    }
  }
  r.detection_events = errors;
  r.key_bits = alice_key.size();
  r.key_mismatches = count_mismatches(alice_key, bob_key);

  const double formula = to_double(pop_correct_pick_probability(cfg.n_qubits));
  const double matching = to_double(pop_matching_pick_probability(cfg.n_qubits));
  r.pop_formula_probability = formula;
  r.pop_matching_probability = matching;
  // a cross-pair pick swaps two pairs; Bob then reads both right with 1/4
  r.detection_rate =
      Estimate::from_counts(detected_attacked, r.compared_attacked, (1.0 - matching) * 0.75);
  r.eve_accuracy = Estimate::from_counts(info_events, r.attacked, formula);
  r.qber = Estimate::from_counts(errors, r.compared);
  r.i_ae_empirical.per_bit = r.eve_accuracy.value * cfg.f * 1.25;
  r.i_ae_empirical.raw_bits_per_block = 0.0;
  r.i_ae_analytic = analytics::pop_eve_info(cfg.f, cfg.n_qubits);
}

void run_protocol1(const CampaignConfig& cfg, AttackReport& r) {
  Rng key_rng(derive_seed(cfg.seed, "key"));
  const Key key = random_key(2 * cfg.n_blocks, key_rng);
  const std::size_t n_decoys = static_cast<std::size_t>(
      std::llround(cfg.compare_fraction * static_cast<double>(cfg.n_blocks)));
  const std::size_t total_pairs = std::max<std::size_t>(cfg.n_blocks + n_decoys, 2);
  const auto picks = static_cast<std::size_t>(std::llround(cfg.f * static_cast<double>(total_pairs)));
  const PopAttack eve(
      AttackConfig{picks > 0 ? 1.0 : 0.0, GuessPolicy::Uniform, derive_seed(cfg.seed, "eve")}, 1,
      picks);
  const Protocol1Run run = protocol1_run(
      key, Protocol1Options{derive_seed(cfg.seed, "protocol"), cfg.compare_fraction}, &eve);

  std::uint64_t entangled = 0;
  for (const auto& m : run.interceptions) entangled += m.entangled_pick;
  r.attacked = run.interceptions.size();
  r.compared = run.compared;
  r.compared_attacked = run.interceptions.empty() ? 0 : run.compared;
  r.detection_events = run.detections;
  r.key_bits = run.alice_key.size();
  r.key_mismatches = count_mismatches(run.alice_key, run.bob_key);
  r.detection_rate = Estimate::from_counts(run.interceptions.empty() ? 0 : run.detections,
                                           r.compared_attacked);
  r.eve_accuracy = Estimate::from_counts(entangled, r.attacked);
  r.qber = Estimate::from_counts(run.detections, run.compared);
}

void run_bb84(const CampaignConfig& cfg, AttackReport& r) {
  const Bb84Result res =
      bb84_epr_baseline(cfg.n_blocks, derive_seed(cfg.seed, "bb84"), cfg.compare_fraction);
  r.compared = res.compared;
  r.detection_events = res.compare_errors;
  r.key_bits = res.alice_sifted.size();
  r.key_mismatches = count_mismatches(res.alice_sifted, res.bob_sifted);
  r.qber = Estimate::from_counts(res.compare_errors, res.compared, 0.0);
  r.eve_accuracy = Estimate::from_counts(0, 0);
  r.detection_rate = Estimate::from_counts(0, 0);
}

nlohmann::ordered_json estimate_json(const Estimate& e) {
  nlohmann::ordered_json j{{"value", e.value},     {"successes", e.successes},
                           {"trials", e.trials},   {"ci_lo", e.ci_lo},
                           {"ci_hi", e.ci_hi},     {"half_width", e.half_width}};
  if (e.analytic) {
    j["analytic"] = *e.analytic;
    j["analytic_sigma"] = e.analytic_sigma();
  } else {
    j["analytic"] = nullptr;
  }
  j["verdict"] = e.verdict();
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string_view protocol_name(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::P1: return "p1";
    case ProtocolKind::P2: return "p2";
    case ProtocolKind::Bb84Epr: return "bb84";
    case ProtocolKind::Pop: return "pop";
  }
  return "p2";
}

std::optional<ProtocolKind> parse_protocol(std::string_view name) {
  if (name == "p1" || name == "P1") return ProtocolKind::P1;
  if (name == "p2" || name == "P2") return ProtocolKind::P2;
  if (name == "bb84" || name == "BB84EPR") return ProtocolKind::Bb84Epr;
  if (name == "pop" || name == "POP") return ProtocolKind::Pop;
  return std::nullopt;
}

void CampaignConfig::validate() const {
  if (n_blocks < 1) throw std::invalid_argument("n_blocks must be at least 1");
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("f must lie in [0, 1]");
  if (!(compare_fraction > 0.0 && compare_fraction <= 1.0)) {
    throw std::invalid_argument("compare_fraction must lie in (0, 1]");
  }
  if (protocol == ProtocolKind::Pop) validate_pop_size(n_qubits);
  if (protocol == ProtocolKind::Bb84Epr && f != 0.0) {
    throw std::invalid_argument("the bb84 baseline has no adversary model; use f = 0");
  }
  if (sweep) {
    for (const double v : sweep->values) {
      if (sweep->param == SweepSpec::Param::F && !(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("sweep: f values must lie in [0, 1]");
      }
      if (sweep->param == SweepSpec::Param::N) {
        if (protocol != ProtocolKind::Pop) {
          throw std::invalid_argument("sweep: an N grid needs protocol pop");
        }
        if (v != std::floor(v) || v < 4) throw std::invalid_argument("sweep: bad N value");
        validate_pop_size(static_cast<std::size_t>(v));
      }
    }
  }
}

CampaignConfig CampaignConfig::from_json(const nlohmann::json& j) {
  CampaignConfig c;
  if (j.contains("protocol")) {
    const auto name = j.at("protocol").get<std::string>();
    const auto p = parse_protocol(name);
    if (!p) throw std::invalid_argument("unknown protocol: " + name);
    c.protocol = *p;
  }
  if (j.contains("n_blocks")) c.n_blocks = j.at("n_blocks").get<std::size_t>();
  if (j.contains("f")) c.f = j.at("f").get<double>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("compare_fraction")) c.compare_fraction = j.at("compare_fraction").get<double>();
  if (j.contains("n_qubits")) c.n_qubits = j.at("n_qubits").get<std::size_t>();
  if (j.contains("sweep") && !j.at("sweep").is_null()) {
    const auto& s = j.at("sweep");
    SweepSpec spec;
    const auto param = s.value("param", std::string("f"));
    if (param == "f") {
      spec.param = SweepSpec::Param::F;
    } else if (param == "N" || param == "n") {
      spec.param = SweepSpec::Param::N;
    } else {
      throw std::invalid_argument("sweep: unknown parameter " + param);
    }
    spec.values = s.at("values").get<std::vector<double>>();
    c.sweep = spec;
  }
  c.validate();
  return c;
}

nlohmann::json CampaignConfig::to_json() const {
  nlohmann::json j{{"protocol", protocol_name(protocol)},
                   {"n_blocks", n_blocks},
                   {"f", f},
                   {"seed", seed},
                   {"compare_fraction", compare_fraction},
                   {"n_qubits", n_qubits}};
  if (sweep) {
    j["sweep"] = {{"param", sweep->param == SweepSpec::Param::F ? "f" : "N"},
                  {"values", sweep->values}};
  }
  return j;
}

Estimate Estimate::from_counts(std::uint64_t successes, std::uint64_t trials,
                               std::optional<double> analytic) {
  Estimate e;
  e.successes = successes;
  e.trials = trials;
  e.analytic = analytic;
  if (trials == 0) return e;
  const auto n = static_cast<double>(trials);
  e.value = static_cast<double>(successes) / n;
  e.half_width = kZ95 * std::sqrt(e.value * (1.0 - e.value) / n);
  e.ci_lo = std::max(0.0, e.value - e.half_width);
  e.ci_hi = std::min(1.0, e.value + e.half_width);
  return e;
}

double Estimate::analytic_sigma() const {
  if (!analytic || trials == 0) return 0.0;
  const double p = *analytic;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

bool Estimate::within_sigmas(double k) const {
  if (!analytic) return false;
  return std::abs(value - *analytic) <= k * analytic_sigma();
}

bool Estimate::analytic_within_ci() const {
  return analytic && *analytic >= ci_lo && *analytic <= ci_hi;
}

std::string_view Estimate::verdict() const {
  if (!analytic) return "NO_TARGET";
  return analytic_within_ci() ? "WITHIN_CI" : "OUTSIDE_CI";
}

std::uint64_t JointHistogram::total() const {
  std::uint64_t n = 0;
  for (const auto& row : counts)
    for (const auto c : row) n += c;
  return n;
}

MutualInformation estimate_mutual_information(const JointHistogram& histogram) {
  const std::uint64_t total = histogram.total();
  if (total == 0) {
    throw std::invalid_argument("estimate_mutual_information: empty histogram");
  }
  const auto n = static_cast<double>(total);
  std::array<double, 16> pa{};
  std::array<double, 17> pe{};
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned e = 0; e < 17; ++e) {
      const auto c = static_cast<double>(histogram.counts[a][e]);
      pa[a] += c / n;
      pe[e] += c / n;
    }
  }
  double info = 0.0;
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned e = 0; e < 17; ++e) {
      const auto c = histogram.counts[a][e];
      if (c == 0) continue;
      const double p = static_cast<double>(c) / n;
      info += p * std::log2(p / (pa[a] * pe[e]));
    }
  }
  return MutualInformation{info, info / 4.0};
}

void OutcomeHistogram::add(LabelPair alice, LabelPair eve) {
  const unsigned s1 = shift_index(alice.first, eve.first);
  const unsigned s2 = shift_index(alice.second, eve.second);
  if (s1 == s2) {
    ++by_shift[s1];
  } else {
    ++incompatible;
  }
}

std::uint64_t OutcomeHistogram::total() const {
  return by_shift[0] + by_shift[1] + by_shift[2] + by_shift[3] + incompatible;
}

double OutcomeHistogram::chi_square() const {
  static constexpr std::array<double, 4> kExpected{5.0 / 8, 1.0 / 8, 1.0 / 8, 1.0 / 8};
  const auto n = static_cast<double>(total());
  if (n == 0) return 0.0;
  double stat = 0.0;
  for (unsigned k = 0; k < 4; ++k) {
    const double expected = n * kExpected[k];
    const double d = static_cast<double>(by_shift[k]) - expected;
    stat += d * d / expected;
  }
  // incompatible outcomes have expected count zero; any occurrence is fatal
  if (incompatible > 0) return std::numeric_limits<double>::infinity();
  return stat;
}

double chi_square_critical_1pct() {
  return boost::math::quantile(boost::math::chi_squared(3.0), 0.99);
}

double plugin_eve_info_per_bit(double f) {
  return f * (4.0 - analytics::eve_ignorance_bits()) / 4.0;
}

bool AttackReport::claimed_refuted() const {
  return detection_rate.trials > 0 &&
         (claimed_detection < detection_rate.ci_lo || claimed_detection > detection_rate.ci_hi);
}

AttackReport run_campaign(const CampaignConfig& config) {
  config.validate();
  AttackReport r;
  r.config = config;
  r.blocks = config.n_blocks;
  r.chi_square_critical = chi_square_critical_1pct();
  switch (config.protocol) {
    case ProtocolKind::P2: run_protocol2(config, r); break;
    case ProtocolKind::Pop: run_pop(config, r); break;
    case ProtocolKind::P1: run_protocol1(config, r); break;
    case ProtocolKind::Bb84Epr: run_bb84(config, r); break;
  }
  return r;
}

nlohmann::ordered_json to_json(const AttackReport& r) {
  nlohmann::ordered_json j;
  j["config"] = r.config.to_json();
  j["counts"] = {{"blocks", r.blocks},
                 {"attacked", r.attacked},
                 {"compared", r.compared},
                 {"compared_attacked", r.compared_attacked},
                 {"detection_events", r.detection_events},
                 {"key_bits", r.key_bits},
                 {"key_mismatches", r.key_mismatches}};
  j["detection_rate"] = estimate_json(r.detection_rate);
  j["eve_bit_accuracy"] = estimate_json(r.eve_accuracy);
  j["empirical_qber"] = estimate_json(r.qber);
  j["eve_outcome_histogram"] = {{"correct", r.eve_outcomes.by_shift[0]},
                                {"phase_shifted", r.eve_outcomes.by_shift[1]},
                                {"flip_shifted", r.eve_outcomes.by_shift[2]},
                                {"both_shifted", r.eve_outcomes.by_shift[3]},
                                {"incompatible", r.eve_outcomes.incompatible}};
  const bool chi_defined = r.eve_outcomes.total() > 0;
  j["chi_square"] = {{"statistic", chi_defined && std::isfinite(r.chi_square)
                                       ? nlohmann::ordered_json(r.chi_square)
                                       : nlohmann::ordered_json(nullptr)},
                     {"critical_1pct", r.chi_square_critical},
                     {"pass", chi_defined && r.chi_square < r.chi_square_critical}};
  nlohmann::ordered_json iae{{"raw_bits_per_block", r.i_ae_empirical.raw_bits_per_block},
                             {"per_bit", r.i_ae_empirical.per_bit}};
  iae["analytic"] = r.i_ae_analytic ? nlohmann::ordered_json(*r.i_ae_analytic)
                                    : nlohmann::ordered_json(nullptr);
  iae["plugin_limit"] = r.i_ae_plugin_limit ? nlohmann::ordered_json(*r.i_ae_plugin_limit)
                                            : nlohmann::ordered_json(nullptr);
  if (r.config.protocol == ProtocolKind::Pop) {
    iae["per_bit_definition"] = "pick_rate * f * 5/4";
  } else {
    iae["per_bit_definition"] = "raw_bits_per_block / 4";
  }
  const double attacked_share =
      r.blocks == 0 ? 0.0 : static_cast<double>(r.attacked) / static_cast<double>(r.blocks);
  const double success_times_f = r.eve_accuracy.value * attacked_share;
  iae["success_rate_times_f"] = success_times_f;
  nlohmann::ordered_json matches = nlohmann::ordered_json::array();
  if (r.i_ae_analytic) {
    const double target = *r.i_ae_analytic;
    if (std::abs(r.i_ae_empirical.raw_bits_per_block - target) <= kInfoMatchTolerance) {
      matches.push_back("raw_bits_per_block");
    }
    if (std::abs(r.i_ae_empirical.per_bit - target) <= kInfoMatchTolerance) {
      matches.push_back("per_bit");
    }
    if (std::abs(success_times_f - target) <= kInfoMatchTolerance) {
      matches.push_back("success_rate_times_f");
    }
  }
  iae["within_0.01_of_analytic"] = matches;
  j["i_ae"] = iae;
  if (r.pop_formula_probability) {
    j["pop"] = {{"n_qubits", r.config.n_qubits},
                {"pick_probability_formula", *r.pop_formula_probability},
                {"pick_probability_matching", *r.pop_matching_probability},
                {"pick_rate", r.eve_accuracy.value},
                {"formula_within_4_sigma", r.eve_accuracy.within_sigmas(4.0)}};
  }
  j["claimed_comparison"] = {{"claimed_detection", r.claimed_detection},
                             {"computed_detection", r.detection_rate.value},
                             {"status", r.claimed_refuted() ? "REFUTED" : "NOT_REFUTED"}};
  return j;
}

std::vector<SweepRow> sweep(const CampaignConfig& config) {
  if (!config.sweep || config.sweep->values.empty()) {
    throw std::invalid_argument("sweep: empty grid");
  }
  config.validate();
  std::vector<std::future<AttackReport>> jobs;
  for (const double v : config.sweep->values) {
    CampaignConfig point = config;
    point.sweep.reset();
    if (config.sweep->param == SweepSpec::Param::F) {
      point.f = v;
    } else {
      point.n_qubits = static_cast<std::size_t>(v);
    }
    jobs.push_back(std::async(std::launch::async, [point] { return run_campaign(point); }));
  }
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    rows.push_back(SweepRow{config.sweep->values[i], jobs[i].get()});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,detection_rate,ci_lo,ci_hi,eve_acc,i_ae_emp,i_ae_analytic,qber\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out += format_double(row.param) + "," + format_double(r.detection_rate.value) + "," +
           format_double(r.detection_rate.ci_lo) + "," + format_double(r.detection_rate.ci_hi) +
           "," + format_double(r.eve_accuracy.value) + "," +
           format_double(r.i_ae_empirical.per_bit) + "," +
           (r.i_ae_analytic ? format_double(*r.i_ae_analytic) : std::string()) + "," +
           format_double(r.qber.value) + "\n";
  }
  return out;
}

}  // namespace eprlab

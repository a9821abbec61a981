#include "eprlab/report.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include "eprlab/analytics.hpp"
#include "eprlab/protocols.hpp"

namespace eprlab {

namespace {

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pct(double v) { return fmt(100.0 * v, 2) + "%"; }

double number_or(const nlohmann::json& j, const char* key, double fallback) {
  return j.contains(key) && j.at(key).is_number() ? j.at(key).get<double>() : fallback;
}

}  // namespace

std::string render_markdown_report(const nlohmann::json& campaign) {
  namespace an = eprlab::analytics;
  std::ostringstream md;
  const auto& cfg = campaign.at("config");
  const auto& det = campaign.at("detection_rate");
  const auto& acc = campaign.at("eve_bit_accuracy");

  md << "# Measure-resend analysis of the one-step EPR scheme\n\n";
  md << "Campaign: protocol `" << cfg.at("protocol").get<std::string>() << "`, "
     << cfg.at("n_blocks").get<std::uint64_t>() << " blocks, f = " << fmt(cfg.at("f").get<double>(), 4)
     << ", seed " << cfg.at("seed").get<std::uint64_t>() << ".\n\n";

  md << "## Detection probability per attacked block\n\n";
  md << "| quantity | value | 95% CI | status |\n|---|---|---|---|\n";
  const double lo = number_or(det, "ci_lo", 0.0);
  const double hi = number_or(det, "ci_hi", 0.0);
  const double value = number_or(det, "value", 0.0);
  const bool has_trials = det.at("trials").get<std::uint64_t>() > 0;
  md << "| measured | " << fmt(value) << " | [" << fmt(lo) << ", " << fmt(hi) << "] | n = "
     << det.at("trials").get<std::uint64_t>() << " |\n";
  md << "| analytic 1/2 x 3/4 = 3/8 | " << fmt(3.0 / 8.0) << " | | "
     << (has_trials && 3.0 / 8.0 >= lo && 3.0 / 8.0 <= hi ? "WITHIN_CI" : "OUTSIDE_CI") << " |\n";
  md << "| claimed 15/16 | " << fmt(an::kLiClaimedDetection) << " | | "
     << campaign.at("claimed_comparison").at("status").get<std::string>() << " |\n\n";
  if (has_trials) {
    md << "15/16 = " << pct(an::kLiClaimedDetection) << " is far above the measured "
       << pct(value) << "; an attacked block is detected with probability 3/8, not 15/16.\n\n";
  }

  md << "## Eve's information\n\n";
  md << "| quantity | value |\n|---|---|\n";
  md << "| P(Eve's 4 bits correct), analytic 1/2 (1 + 1/4) | " << fmt(5.0 / 8.0) << " |\n";
  md << "| P(Eve's 4 bits correct), measured | " << fmt(number_or(acc, "value", 0.0)) << " [" << fmt(number_or(acc, "ci_lo", 0.0))
     << ", " << fmt(number_or(acc, "ci_hi", 0.0)) << "] |\n";
  md << "| Eve's residual entropy H(5/8,1/8,1/8,1/8) | " << fmt(an::eve_ignorance_bits(), 5)
     << " bits |\n";
  const auto& iae = campaign.at("i_ae");
  md << "| I(A:E) analytic 5f/8 | " << fmt(number_or(iae, "analytic", 0.0)) << " |\n";
  md << "| I(A:E) plug-in, per bit | " << fmt(number_or(iae, "per_bit", 0.0)) << " |\n\n";

  const auto threshold = an::security_threshold();
  md << "## Security threshold\n\n";
  md << "| quantity | value |\n|---|---|\n";
  md << "| f* where 1 - H(3f/8) = 5f/8 | " << fmt(threshold.f_star) << " (" << pct(threshold.f_star)
     << ") |\n";
  md << "| e_max = 3/8 f* | " << fmt(threshold.e_max) << " (" << pct(threshold.e_max) << ") |\n";
  md << "| literature value | 18.52% |\n";
  md << "| originally claimed | " << pct(an::kLiClaimedEmax) << " |\n\n";

  md << "## Tolerable error rates for comparison\n\n";
  md << "| scheme | e_max | source |\n|---|---|---|\n";
  for (const auto& row : an::reference_constants()) {
    md << "| " << row.key << " | " << pct(row.e_max) << " | " << row.note << " |\n";
  }
  md << "\n";

  md << "## Particle-order permutation scaling\n\n";
  md << "| N | 4/(N(N-1)) | 1/(N-1) (all slots paired) | I(A:E) at f = 1 |\n|---|---|---|---|\n";
  for (const std::size_t n : std::array<std::size_t, 7>{4, 8, 16, 32, 64, 100, 1000}) {
    md << "| " << n << " | " << fmt(to_double(pop_correct_pick_probability(n))) << " | "
       << fmt(to_double(pop_matching_pick_probability(n))) << " | "
       << fmt(an::pop_eve_info(1.0, n)) << " |\n";
  }
  if (campaign.contains("pop")) {
    const auto& pop = campaign.at("pop");
    md << "\nMeasured pick rate at N = " << pop.at("n_qubits").get<std::uint64_t>() << ": "
       << fmt(pop.at("pick_rate").get<double>()) << ".\n";
  }
  return md.str();
}

}  // namespace eprlab

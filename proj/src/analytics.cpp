#include "eprlab/analytics.hpp"

#include <cmath>
#include <stdexcept>

#include "eprlab/protocols.hpp"

namespace eprlab::analytics {

namespace {

void require_fraction(double f, const char* what) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw std::domain_error(std::string(what) + ": argument must lie in [0, 1]");
  }
}

}  // namespace

double binary_entropy(double u) {
  require_fraction(u, "binary_entropy");
  if (u == 0.0 || u == 1.0) return 0.0;
  return -u * std::log2(u) - (1.0 - u) * std::log2(1.0 - u);
}

double shannon_entropy(const std::vector<double>& probabilities) {
  double h = 0.0;
  for (const double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double eve_info(double f) {
  require_fraction(f, "eve_info");
  return 5.0 * f / 8.0;
}

Exact eve_info(const Exact& f) {
  if (f < 0 || f > 1) {
    throw std::domain_error("eve_info: argument must lie in [0, 1]");
  }
  return Exact(5, 8) * f;
}

double ab_info(double f) {
  require_fraction(f, "ab_info");
  return 1.0 - binary_entropy(attack_error_rate(f));
}

double attack_error_rate(double f) {
  require_fraction(f, "attack_error_rate");
  return 3.0 * f / 8.0;
}

double eve_ignorance_bits() { return shannon_entropy({5.0 / 8, 1.0 / 8, 1.0 / 8, 1.0 / 8}); }

double margin(double f) { return ab_info(f) - eve_info(f); }

Threshold security_threshold() {
  double lo = kThresholdLow;
  double hi = kThresholdHigh;
  double m_lo = margin(lo);
  if (!(m_lo > 0.0) || !(margin(hi) < 0.0)) {
    throw std::runtime_error("security_threshold: no sign change in the bracket");
  }
  while (hi - lo > kThresholdTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double m = margin(mid);
    if ((m > 0.0) == (m_lo > 0.0)) {
      lo = mid;
      m_lo = m;
    } else {
      hi = mid;
    }
  }
  const double f_star = 0.5 * (lo + hi);
  return Threshold{f_star, 3.0 * f_star / 8.0};
}

double pop_eve_info(double f, std::size_t n_qubits) {
  validate_pop_size(n_qubits);
  require_fraction(f, "pop_eve_info");
  const auto n = static_cast<double>(n_qubits);
  return 5.0 * f / (n * (n - 1.0));
}

Exact pop_eve_info(const Exact& f, std::size_t n_qubits) {
  if (f < 0 || f > 1) {
    throw std::domain_error("pop_eve_info: argument must lie in [0, 1]");
  }
  // picking probability times f times the 5/4 bits per correct pick
  return pop_correct_pick_probability(n_qubits) * f * Exact(5, 4);
}

std::vector<CurvePoint> security_curve(std::size_t points) {
  if (points < 2) {
    throw std::invalid_argument("security_curve: need at least two points");
  }
  std::vector<CurvePoint> curve;
  curve.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(points - 1);
    const double iab = ab_info(f);
    const double iae = eve_info(f);
    curve.push_back(CurvePoint{f, iab, iae, iab - iae});
  }
  return curve;
}

std::vector<std::pair<double, double>> scan_sign_changes(std::size_t points) {
  std::vector<std::pair<double, double>> brackets;
  const auto curve = security_curve(points);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if ((curve[i - 1].margin > 0.0) != (curve[i].margin > 0.0)) {
      brackets.emplace_back(curve[i - 1].f, curve[i].f);
    }
  }
  return brackets;
}

std::vector<ReferenceRow> reference_constants() {
  return {
      {"BB84_arbitrary", kBb84ArbitraryAttack, "BB84, arbitrary attack (cited)"},
      {"GV_measure_resend", kGvMeasureResend, "Goldenberg-Vaidman, measure-resend (cited)"},
      {"Li_claimed", kLiClaimedEmax, "one-step EPR scheme, originally claimed (cited)"},
      {"this_work_measure_resend", security_threshold().e_max,
       "one-step EPR scheme, measure-resend, computed"},
  };
}

}  // namespace eprlab::analytics

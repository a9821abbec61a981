#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eprlab/exact.hpp"

namespace eprlab::analytics {

/// Shannon binary entropy in bits, H(0) = H(1) = 0.
/// Throws std::domain_error outside [0, 1].
double binary_entropy(double u);

/// Entropy in bits of a discrete distribution; zero masses contribute 0.
double shannon_entropy(const std::vector<double>& probabilities);

/// Eve's information for attack fraction f under measure-resend: 5f/8.
double eve_info(double f);
Exact eve_info(const Exact& f);

/// Alice-Bob information 1 - H(3f/8).
double ab_info(double f);

/// Block error rate caused by the attack: 3f/8.
double attack_error_rate(double f);

/// Entropy of {5/8, 1/8, 1/8, 1/8}, Eve's remaining uncertainty about an
/// attacked four-bit block.
double eve_ignorance_bits();

struct Threshold {
  double f_star = 0.0;
  double e_max = 0.0;  // (3/8) f_star, a fraction
};

inline constexpr double kThresholdLow = 1e-6;
inline constexpr double kThresholdHigh = 1.0 - 1e-6;
inline constexpr double kThresholdTolerance = 1e-9;

/// Bisection for ab_info(f) = eve_info(f) on [1e-6, 1 - 1e-6].
/// Throws std::runtime_error if the bracket holds no sign change.
Threshold security_threshold();

/// ab_info(f) - eve_info(f).
double margin(double f);

/// 5f/(N(N-1)) for even N >= 4.
double pop_eve_info(double f, std::size_t n_qubits);
Exact pop_eve_info(const Exact& f, std::size_t n_qubits);

struct CurvePoint {
  double f;
  double i_ab;
  double i_ae;
  double margin;
};

/// Evenly spaced curve over [0, 1] with `points` >= 2 samples.
std::vector<CurvePoint> security_curve(std::size_t points);

/// Sign changes of margin() between consecutive grid samples.
std::vector<std::pair<double, double>> scan_sign_changes(std::size_t points);

struct ReferenceRow {
  std::string key;
  double e_max;
  std::string note;
};

/// Tolerable error rates quoted for comparison; only the last row is computed.
std::vector<ReferenceRow> reference_constants();

inline constexpr double kBb84ArbitraryAttack = 0.11;
inline constexpr double kGvMeasureResend = 0.26;
inline constexpr double kLiClaimedEmax = 0.11;
inline constexpr double kLiClaimedDetection = 15.0 / 16.0;

}  // namespace eprlab::analytics

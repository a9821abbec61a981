#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "eprlab/bell.hpp"

namespace eprlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Regrouping table against the brute-force oracle for all 16 label pairs in
/// both directions, the four published regroupings of phi+/psi+ term by term,
/// and the two outcomes that must never occur.
std::vector<CheckResult> run_verification(
    const RegroupingTable& table = RegroupingTable::standard());

/// One line per check plus a summary; returns true when everything passed.
bool print_verification(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace eprlab

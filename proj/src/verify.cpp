#include "eprlab/verify.hpp"

#include <array>
#include <sstream>

#include "eprlab/state_oracle.hpp"

namespace eprlab {

namespace {

struct PublishedRegrouping {
  LabelPair initial;
  Pairing from;
  std::array<int, 4> signs;  // over phi+psi+, phi-psi-, psi+phi+, psi-phi-
};

// The four regroupings written out in the literature for the phi+/psi+ case.
constexpr std::array<PublishedRegrouping, 4> kPublished{{
    {{kPhiPlus, kPsiPlus}, Pairing::Sequential, {+1, +1, +1, +1}},
    {{kPhiMinus, kPsiMinus}, Pairing::Crossed, {+1, +1, -1, -1}},
    {{kPsiPlus, kPhiPlus}, Pairing::Crossed, {+1, -1, +1, -1}},
    {{kPsiMinus, kPhiMinus}, Pairing::Crossed, {+1, -1, -1, +1}},
}};

constexpr std::array<LabelPair, 4> kPublishedTerms{{
    {kPhiPlus, kPsiPlus}, {kPhiMinus, kPsiMinus}, {kPsiPlus, kPhiPlus}, {kPsiMinus, kPhiMinus}}};

std::string describe(const Decomposition& d) {
  std::ostringstream os;
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    if (i) os << " ";
    os << (d.terms[i].coefficient > Exact(0) ? "+" : "") << to_string(d.terms[i].coefficient) << "*"
       << to_string(d.terms[i].labels, d.pairing);
  }
  return os.str();
}

}  // namespace

std::vector<CheckResult> run_verification(const RegroupingTable& table) {
  std::vector<CheckResult> results;
  const std::array<oracle::BellProductBasis, 2> bases{oracle::make_basis(Pairing::Sequential),
                                                      oracle::make_basis(Pairing::Crossed)};

  for (const Pairing from : kAllPairings) {
    const Pairing to = other(from);
    for (unsigned i = 0; i < 16; ++i) {
      const LabelPair initial = LabelPair::from_index(i);
      const Decomposition algebra = swap_decompose(table, initial, from, to);
      const Decomposition brute = oracle::project(oracle::build_pair_product(initial, from),
                                                  bases[static_cast<int>(to)]);
      CheckResult r;
      r.name = "oracle " + to_string(initial, from) + " -> " + std::string(pairing_name(to));
      r.passed = algebra == brute;
      r.detail = r.passed ? describe(algebra)
                          : "table: " + describe(algebra) + " | oracle: " + describe(brute);
      results.push_back(std::move(r));
    }
  }

  for (const auto& eq : kPublished) {
    const Decomposition d = swap_decompose(table, eq.initial, eq.from, other(eq.from));
    bool ok = d.terms.size() == 4;
    for (std::size_t k = 0; ok && k < 4; ++k) {
      const auto c = d.coefficient_of(kPublishedTerms[k]);
      ok = c && *c == Exact(eq.signs[k], 2);
    }
    results.push_back({"published " + to_string(eq.initial, eq.from), ok, describe(d)});
  }

  // Eve measuring crossed pairs of phi+_12 psi+_34 never sees psi+_13 psi-_24
  {
    const LabelPair initial{kPhiPlus, kPsiPlus};
    const LabelPair forbidden{kPsiPlus, kPsiMinus};
    const Decomposition d = swap_decompose(table, initial, Pairing::Sequential, Pairing::Crossed);
    const bool ok = !d.coefficient_of(forbidden).has_value();
    results.push_back({"never " + to_string(forbidden, Pairing::Crossed) + " from " +
                           to_string(initial, Pairing::Sequential),
                       ok, ok ? "probability 0" : "reachable"});
  }
  // after any crossed outcome, Bob's sequential measurement never gives psi+_12 phi-_34
  {
    const LabelPair initial{kPhiPlus, kPsiPlus};
    const LabelPair forbidden{kPsiPlus, kPhiMinus};
    Exact p{0};
    const Decomposition first = swap_decompose(table, initial, Pairing::Sequential, Pairing::Crossed);
    for (const auto& eve : first.terms) {
      const Decomposition second =
          swap_decompose(table, eve.labels, Pairing::Crossed, Pairing::Sequential);
      if (const auto c = second.coefficient_of(forbidden)) {
        p += eve.coefficient * eve.coefficient * *c * *c;
      }
    }
    results.push_back({"never " + to_string(forbidden, Pairing::Sequential) +
                           " after a crossed measurement of " +
                           to_string(initial, Pairing::Sequential),
                       p == Exact(0), "probability " + to_string(p)});
  }
  return results;
}

bool print_verification(std::ostream& out, const std::vector<CheckResult>& results) {
  std::size_t passed = 0;
  std::size_t oracle_total = 0;
  std::size_t oracle_passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  " << r.detail << '\n';
    passed += r.passed;
    if (r.name.rfind("oracle ", 0) == 0) {
      ++oracle_total;
      oracle_passed += r.passed;
    }
  }
  out << oracle_passed << "/" << oracle_total << " oracle cases pass; " << passed << "/"
      << results.size() << " checks pass\n";
  return passed == results.size();
}

}  // namespace eprlab

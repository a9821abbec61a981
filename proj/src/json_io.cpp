#include "eprlab/json_io.hpp"

namespace eprlab {

namespace {

nlohmann::ordered_json qubit_pairs(Pairing p) {
  if (p == Pairing::Sequential) return {{1, 2}, {3, 4}};
  return {{1, 3}, {2, 4}};
}

}  // namespace

nlohmann::ordered_json to_json(LabelPair labels) {
  return nlohmann::ordered_json::array({label_name(labels.first), label_name(labels.second)});
}

nlohmann::ordered_json to_json(const BlockTranscript& t) {
  nlohmann::ordered_json j;
  j["block_index"] = t.block_index;
  j["alice_labels"] = to_json(t.block.alice_labels);
  j["alice_pairing"] = pairing_name(t.block.alice_pairing);
  j["role"] = role_name(t.block.role);
  if (t.eve) {
    j["eve_action"] = {{"kind", "measured"}, {"pairing_guess", pairing_name(t.eve->pairing_guess)}};
    j["eve_outcome"] = to_json(t.eve->outcome);
  } else {
    j["eve_action"] = {{"kind", "none"}};
    j["eve_outcome"] = nullptr;
  }
  j["bob_outcome"] = to_json(t.bob_outcome);
  j["detected"] = t.detected;
  return j;
}

void write_jsonl(std::ostream& out, std::span<const BlockTranscript> transcripts) {
  for (const auto& t : transcripts) out << to_json(t).dump() << '\n';
}

nlohmann::ordered_json to_json(LabelPair initial, Pairing from, const Decomposition& d) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : d.terms) {
    terms.push_back({{"labels", to_json(t.labels)},
                     {"qubits", qubit_pairs(d.pairing)},
                     {"coefficient", to_string(t.coefficient)}});
  }
  return {{"initial", to_json(initial)},
          {"initial_qubits", qubit_pairs(from)},
          {"from", pairing_name(from)},
          {"to", pairing_name(d.pairing)},
          {"terms", terms}};
}

}  // namespace eprlab

#pragma once

#include <ostream>
#include <span>

#include <nlohmann/json.hpp>

#include "eprlab/bell.hpp"
#include "eprlab/protocols.hpp"

namespace eprlab {

nlohmann::ordered_json to_json(LabelPair labels);

/// One line of a transcript file. Keys, in order: block_index, alice_labels,
/// alice_pairing, role, eve_action, eve_outcome, bob_outcome, detected.
nlohmann::ordered_json to_json(const BlockTranscript& t);

void write_jsonl(std::ostream& out, std::span<const BlockTranscript> transcripts);

/// {"initial": [...], "from": "seq", "to": "crossed", "terms": [{"labels": [...],
/// "qubits": [[1,3],[2,4]], "coefficient": "1/2"}, ...]}
nlohmann::ordered_json to_json(LabelPair initial, Pairing from, const Decomposition& d);

}  // namespace eprlab

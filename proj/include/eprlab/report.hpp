#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace eprlab {

/// Markdown comparison document built from a campaign's report.json: the
/// measured and claimed detection probabilities, Eve's accuracy and residual
/// entropy, the security threshold, reference tolerable error rates and the
/// permuted-sequence scaling table. Output depends only on the input.
std::string render_markdown_report(const nlohmann::json& campaign);

}  // namespace eprlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fdcolor/graph.hpp"
#include "fdcolor/pipeline.hpp"
#include "fdcolor/verifier.hpp"

namespace fdcolor {

using Document = nlohmann::ordered_json;

// Symbols are written 1-based; `color` is the flattened index.
Document coloring_document(const Graph& g, const std::string& graph_descriptor,
                           std::uint64_t seed, const ColoringPlan& plan,
                           const ColorAssignment& colors);

Document report_document(const DependenceReport& report,
                         std::optional<std::size_t> smallest_passing = std::nullopt);

// Two-space indented text with a trailing newline.
std::string render(const Document& doc);

}  // namespace fdcolor

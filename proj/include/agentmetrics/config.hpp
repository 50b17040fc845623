#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "agentmetrics/simulator.hpp"

// JSON configuration files. Comments (// and /* */) are accepted so shipped
// configs can annotate their numbers. Unknown keys are rejected to catch
// typos. Money values are decimal strings ("0.00002") so they stay exact.
namespace agentmetrics {

SimConfig parse_config(std::string_view text, const std::string& source = "<config>");
SimConfig load_config(const std::filesystem::path& path);
/// Pretty-printed JSON that parse_config reads back to an equal config.
std::string dump_config(const SimConfig& config);

/// Accepts either a bare cost-model object or a full config with a
/// "cost_model" member.
CostModel parse_cost_model(std::string_view text, const std::string& source = "<cost model>");
CostModel load_cost_model(const std::filesystem::path& path);

}  // namespace agentmetrics

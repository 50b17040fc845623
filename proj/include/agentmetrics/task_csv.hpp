#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "agentmetrics/model.hpp"

namespace agentmetrics {

/// Column order of data_task_level.csv. The trailing `tool_outcomes` column
/// spells each tool event as one letter (O optimal, M misuse, I ignored
/// better tool, N no tool needed) so the file round-trips losslessly; readers
/// accept files without it and rebuild a canonical event list from
/// tool_opps/tool_score_sum.
const std::vector<std::string>& task_csv_header();

void write_task_csv(std::ostream& out, std::span<const TaskRecord> records);
void write_task_csv_file(const std::filesystem::path& path, std::span<const TaskRecord> records);

/// Parses and validates every row. Schema or invariant violations throw
/// SchemaError naming the row (1-based, header excluded) and column.
std::vector<TaskRecord> read_task_csv(std::istream& in, const std::string& source = "<stream>");
std::vector<TaskRecord> read_task_csv_file(const std::filesystem::path& path);

/// Canonical event list with `opportunities` entries whose scores sum to
/// `score_sum`: as many optimal uses as possible, then one ignored-better-tool
/// for a half point, then misuses, padded with no-tool-needed.
std::vector<ToolEvent> canonical_tool_events(std::int64_t opportunities, double score_sum);

}  // namespace agentmetrics

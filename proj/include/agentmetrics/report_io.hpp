#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agentmetrics/model.hpp"

// CSV files for aggregate results. Percent, seconds, scores and dollar
// columns carry 2 decimals; ratios and proportions carry 4. Empty fields
// mean "absent". Importing a file and exporting it again reproduces it
// byte for byte.
namespace agentmetrics::report {

inline constexpr const char* kTaskLevelFile = "data_task_level.csv";
inline constexpr const char* kAggregateFile = "data_aggregate_metrics.csv";
inline constexpr const char* kOverallFile = "data_overall_metrics.csv";
inline constexpr const char* kAdaptabilityFile = "data_adaptability.csv";
inline constexpr const char* kBusinessFile = "data_business_impact.csv";

struct BusinessRow {
    AgentId agent;
    DomainId domain;
    KpiUnit kpi_unit = KpiUnit::Dollars;
    double kpi_value = 0.0;
    Money kpi_conversion;
    Money kpi_monetary;
    Money op_cost;
    std::optional<double> bie;
    std::optional<double> roi;

    bool operator==(const BusinessRow&) const = default;
};

/// Business rows for each cell; domains not configured use dollars at 1:1.
std::vector<BusinessRow> business_rows(std::span<const MetricCell> cells,
                                       std::span<const std::pair<DomainId, DomainConfig>> domains);

const std::vector<std::string>& aggregate_header();
const std::vector<std::string>& overall_header();
const std::vector<std::string>& adaptability_header();
const std::vector<std::string>& business_header();

void write_aggregate_csv(std::ostream& out, std::span<const MetricCell> cells);
void write_overall_csv(std::ostream& out, std::span<const OverallRow> rows);
void write_adaptability_csv(std::ostream& out, std::span<const AdaptabilityCell> cells);
void write_business_csv(std::ostream& out, std::span<const BusinessRow> rows);

/// Readers throw SchemaError naming source, row and column.
std::vector<MetricCell> read_aggregate_csv(std::istream& in, const std::string& source = "<aggregate>");
std::vector<OverallRow> read_overall_csv(std::istream& in, const std::string& source = "<overall>");
std::vector<AdaptabilityCell> read_adaptability_csv(std::istream& in, const std::string& source = "<adaptability>");
std::vector<BusinessRow> read_business_csv(std::istream& in, const std::string& source = "<business>");

/// The value a cell has after an export/import round trip.
MetricCell at_declared_precision(const MetricCell& cell);

/// Writes `contents` to `path`, creating parent directories. IoError naming
/// the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

struct Datasets {
    std::vector<TaskRecord> records;
    std::vector<MetricCell> cells;
    std::vector<OverallRow> overall;
    std::vector<AdaptabilityCell> adaptability;
    std::vector<BusinessRow> business;
};

/// Writes the five data files into `dir`. Empty sections are skipped.
void export_datasets(const std::filesystem::path& dir, const Datasets& data);

std::vector<MetricCell> read_aggregate_file(const std::filesystem::path& path);
std::vector<OverallRow> read_overall_file(const std::filesystem::path& path);
std::vector<AdaptabilityCell> read_adaptability_file(const std::filesystem::path& path);
std::vector<BusinessRow> read_business_file(const std::filesystem::path& path);

}  // namespace agentmetrics::report

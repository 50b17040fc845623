#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "agentmetrics/analysis.hpp"
#include "agentmetrics/model.hpp"
#include "agentmetrics/report_io.hpp"

// Fixed-width plain-text renderings for reports and golden-file tests.
namespace agentmetrics::report {

/// Columns padded to their widest cell; the first column left-aligned,
/// the rest right-aligned. Lines end in '\n' with no trailing spaces.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// Agent-level summary: GCR, AIx, DTT, CES, MTR, TDI (norm), OAS, CRS, CQI.
std::string overall_table(std::span<const OverallRow> rows);
/// Per-domain GCR, AIx, DTT and OAS for every cell.
std::string domain_table(std::span<const MetricCell> cells);
/// Zero-shot and few-shot GCR, AD and AR per cell.
std::string adaptability_table(std::span<const AdaptabilityCell> cells);
/// KPI value, monetary value, operational cost and BIE per cell.
std::string business_table(std::span<const BusinessRow> rows);

std::string stat_report_text(const analysis::StatReport& report);

/// Machine-readable sections of a statistics report.
void write_anova_csv(std::ostream& out, const analysis::StatReport& report);
void write_tukey_csv(std::ostream& out, const analysis::StatReport& report);
void write_effects_csv(std::ostream& out, const analysis::StatReport& report);
void write_correlation_csv(std::ostream& out, const analysis::StatReport& report);
void write_intervals_csv(std::ostream& out, const analysis::StatReport& report);

}  // namespace agentmetrics::report

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agentmetrics::csv {

using Row = std::vector<std::string>;

/// Header plus rows; `source` is used in error messages.
struct Table {
    std::string source;
    Row header;
    std::vector<Row> rows;

    /// Column index or nullopt when the header lacks the column.
    std::optional<std::size_t> find(std::string_view column) const;
    /// Column index; throws SchemaError naming the column when absent.
    std::size_t require(std::string_view column) const;
};

/// RFC 4180 reader (quoted fields, doubled quotes, CRLF tolerated).
Table read(std::istream& in, std::string source);
Table read_file(const std::filesystem::path& path);

void write_row(std::ostream& out, const Row& row);
std::string escape(std::string_view field);

/// Shortest text that parses back to the identical double.
std::string format_exact(double value);
/// Fixed decimals, correctly rounded from the binary value.
std::string format_fixed(double value, int places);
std::string format_optional(const std::optional<double>& value, int places);

double parse_double(std::string_view text, std::string_view context);
std::optional<double> parse_optional_double(std::string_view text, std::string_view context);
std::int64_t parse_int(std::string_view text, std::string_view context);
bool parse_bool(std::string_view text, std::string_view context);

}  // namespace agentmetrics::csv

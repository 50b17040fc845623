#include "agentmetrics/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "agentmetrics/error.hpp"

namespace agentmetrics::csv {

std::optional<std::size_t> Table::find(std::string_view column) const {
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
}

std::size_t Table::require(std::string_view column) const {
    if (auto idx = find(column)) return *idx;
    fail(ErrorKind::SchemaError, source + ": missing column '" + std::string(column) + "'");
}

Table read(std::istream& in, std::string source) {
    Table table;
    table.source = std::move(source);
    std::vector<Row> rows;
    Row row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    char c = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        // A lone empty field is a blank line.
        if (!(row.size() == 1 && row.front().empty())) rows.push_back(std::move(row));
        row.clear();
    };
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_row();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get(c);
            end_row();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) fail(ErrorKind::SchemaError, table.source + ": unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) end_row();
    if (rows.empty()) fail(ErrorKind::SchemaError, table.source + ": empty file (no header)");
    table.header = std::move(rows.front());
    table.rows.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].size() != table.header.size()) {
            fail(ErrorKind::SchemaError, table.source + ": row " + std::to_string(i + 1) + " has " +
                                             std::to_string(table.rows[i].size()) + " fields, header has " +
                                             std::to_string(table.header.size()));
        }
    }
    return table;
}

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
    return read(in, path.string());
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << escape(row[i]);
    }
    out << '\n';
}

std::string format_exact(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) fail(ErrorKind::InvalidInput, "cannot format number");
    return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int places) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.*f", places, value);
    std::string out(buf.data(), static_cast<std::size_t>(std::max(n, 0)));
    // Avoid "-0.00" for values that round to zero.
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::string format_optional(const std::optional<double>& value, int places) {
    return value ? format_fixed(*value, places) : std::string();
}

double parse_double(std::string_view text, std::string_view context) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(value)) {
        fail(ErrorKind::SchemaError, std::string(context) + ": expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

std::optional<double> parse_optional_double(std::string_view text, std::string_view context) {
    if (text.empty()) return std::nullopt;
    return parse_double(text, context);
}

std::int64_t parse_int(std::string_view text, std::string_view context) {
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty()) {
        fail(ErrorKind::SchemaError, std::string(context) + ": expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(std::string_view text, std::string_view context) {
    if (text == "1" || text == "true" || text == "True" || text == "TRUE") return true;
    if (text == "0" || text == "false" || text == "False" || text == "FALSE") return false;
    fail(ErrorKind::SchemaError, std::string(context) + ": expected a boolean, got '" + std::string(text) + "'");
}

}  // namespace agentmetrics::csv

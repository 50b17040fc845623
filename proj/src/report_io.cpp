#include "agentmetrics/report_io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "agentmetrics/csv.hpp"
#include "agentmetrics/error.hpp"
#include "agentmetrics/metrics.hpp"
#include "agentmetrics/task_csv.hpp"

namespace agentmetrics::report {

namespace {

constexpr int kPct = 2;    // percents, seconds, scores, dollars
constexpr int kRatio = 4;  // ratios and proportions

template <class T>
struct Column {
    std::string name;
    std::function<std::string(const T&)> get;
    std::function<void(T&, std::string_view, const std::string&)> set;
};

template <class T>
Column<T> number(const char* name, double T::*field, int places) {
    return {name, [=](const T& t) { return csv::format_fixed(t.*field, places); },
            [=](T& t, std::string_view v, const std::string& ctx) { t.*field = csv::parse_double(v, ctx); }};
}

template <class T>
Column<T> optional(const char* name, std::optional<double> T::*field, int places) {
    return {name, [=](const T& t) { return csv::format_optional(t.*field, places); },
            [=](T& t, std::string_view v, const std::string& ctx) { t.*field = csv::parse_optional_double(v, ctx); }};
}

template <class T>
Column<T> integer(const char* name, std::int64_t T::*field) {
    return {name, [=](const T& t) { return std::to_string(t.*field); },
            [=](T& t, std::string_view v, const std::string& ctx) { t.*field = csv::parse_int(v, ctx); }};
}

template <class T>
Column<T> money(const char* name, Money T::*field) {
    return {name, [=](const T& t) { return (t.*field).to_fixed(2); },
            [=](T& t, std::string_view v, const std::string& ctx) {
                try {
                    t.*field = Money::parse(v);
                } catch (const Error&) {
                    fail(ErrorKind::SchemaError, ctx + ": expected a dollar amount, got '" + std::string(v) + "'");
                }
            }};
}

template <class T>
Column<T> agent(AgentId T::*field) {
    return {"agent", [=](const T& t) { return (t.*field).str(); },
            [=](T& t, std::string_view v, const std::string& ctx) {
                if (v.empty()) fail(ErrorKind::SchemaError, ctx + ": empty agent");
                t.*field = parse_agent(v);
            }};
}

template <class T>
Column<T> domain(DomainId T::*field) {
    return {"domain", [=](const T& t) { return (t.*field).str(); },
            [=](T& t, std::string_view v, const std::string& ctx) {
                if (v.empty()) fail(ErrorKind::SchemaError, ctx + ": empty domain");
                t.*field = parse_domain(v);
            }};
}

const std::vector<Column<MetricCell>>& cell_columns() {
    using C = MetricCell;
    static const std::vector<Column<C>> cols = {
        agent(&C::agent),
        domain(&C::domain),
        integer("n_tasks", &C::n_tasks),
        integer("n_success", &C::n_success),
        number("gcr", &C::gcr, kPct),
        number("aix", &C::aix, kRatio),
        number("aix_weighted", &C::aix_weighted, kRatio),
        number("dtt_mean", &C::dtt_mean, kPct),
        number("dtt_median", &C::dtt_median, kPct),
        number("dtt_p95", &C::dtt_p95, kPct),
        optional("dtt_efficiency", &C::dtt_efficiency, kRatio),
        optional("ces", &C::ces, kPct),
        optional("ces_efficiency", &C::ces_efficiency, kRatio),
        optional("mtr", &C::mtr, kPct),
        optional("tdi_raw", &C::tdi_raw, kRatio),
        optional("tdi_norm", &C::tdi_norm, kRatio),
        optional("oas", &C::oas, kPct),
        optional("oas_weighted", &C::oas_weighted, kPct),
        optional("crs", &C::crs, kPct),
        optional("cqi", &C::cqi, kPct),
        number("kpi_value", &C::kpi_value, kRatio),
        money("kpi_monetary", &C::kpi_monetary),
        money("op_cost", &C::op_cost),
        optional("bie", &C::bie, kPct),
        optional("roi", &C::roi, kPct),
    };
    return cols;
}

const std::vector<Column<OverallRow>>& overall_columns() {
    using C = OverallRow;
    static const std::vector<Column<C>> cols = {
        agent(&C::agent),
        integer("n_tasks", &C::n_tasks),
        number("gcr", &C::gcr, kPct),
        number("aix", &C::aix, kRatio),
        number("aix_weighted", &C::aix_weighted, kRatio),
        number("dtt_mean", &C::dtt_mean, kPct),
        number("dtt_median", &C::dtt_median, kPct),
        number("dtt_p95", &C::dtt_p95, kPct),
        optional("ces", &C::ces, kPct),
        optional("mtr", &C::mtr, kPct),
        optional("tdi_raw", &C::tdi_raw, kRatio),
        optional("tdi_norm", &C::tdi_norm, kRatio),
        optional("oas", &C::oas, kPct),
        optional("oas_weighted", &C::oas_weighted, kPct),
        optional("crs", &C::crs, kPct),
        optional("cqi", &C::cqi, kPct),
        number("kpi_monetary", &C::kpi_monetary, kPct),
        number("op_cost", &C::op_cost, kPct),
        optional("bie", &C::bie, kPct),
        optional("roi", &C::roi, kPct),
    };
    return cols;
}

const std::vector<Column<AdaptabilityCell>>& adaptability_columns() {
    using C = AdaptabilityCell;
    static const std::vector<Column<C>> cols = {
        agent(&C::agent),
        domain(&C::domain),
        number("gcr_zero_shot", &C::gcr_zero_shot, kRatio),
        number("gcr_few_shot", &C::gcr_few_shot, kRatio),
        number("ad", &C::ad, kRatio),
        optional("ar", &C::ar, kPct),
    };
    return cols;
}

const std::vector<Column<BusinessRow>>& business_columns() {
    using C = BusinessRow;
    static const std::vector<Column<C>> cols = {
        agent(&C::agent),
        domain(&C::domain),
        {"kpi_unit", [](const C& t) { return std::string(to_string(t.kpi_unit)); },
         [](C& t, std::string_view v, const std::string& ctx) {
             const auto unit = parse_kpi_unit(v);
             if (!unit) fail(ErrorKind::SchemaError, ctx + ": unknown KPI unit '" + std::string(v) + "'");
             t.kpi_unit = *unit;
         }},
        number("kpi_value", &C::kpi_value, kRatio),
        {"kpi_conversion", [](const C& t) { return t.kpi_conversion.to_decimal_string(); },
         [](C& t, std::string_view v, const std::string& ctx) {
             try {
                 t.kpi_conversion = Money::parse(v);
             } catch (const Error&) {
                 fail(ErrorKind::SchemaError, ctx + ": expected a dollar amount, got '" + std::string(v) + "'");
             }
         }},
        money("kpi_monetary", &C::kpi_monetary),
        money("op_cost", &C::op_cost),
        optional("bie", &C::bie, kPct),
        optional("roi", &C::roi, kPct),
    };
    return cols;
}

template <class T>
std::vector<std::string> header_of(const std::vector<Column<T>>& cols) {
    std::vector<std::string> h;
    for (const auto& c : cols) h.push_back(c.name);
    return h;
}

template <class T>
void write_rows(std::ostream& out, const std::vector<Column<T>>& cols, std::span<const T> rows) {
    csv::write_row(out, header_of(cols));
    csv::Row row;
    for (const auto& r : rows) {
        row.clear();
        for (const auto& c : cols) row.push_back(c.get(r));
        csv::write_row(out, row);
    }
}

template <class T>
std::vector<T> read_rows(std::istream& in, const std::string& source, const std::vector<Column<T>>& cols) {
    const csv::Table table = csv::read(in, source);
    std::vector<std::size_t> idx;
    for (const auto& c : cols) idx.push_back(table.require(c.name));
    std::vector<T> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        T value{};
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const std::string ctx = source + ": row " + std::to_string(r + 1) + ", column '" + cols[k].name + "'";
            cols[k].set(value, table.rows[r][idx[k]], ctx);
        }
        out.push_back(std::move(value));
    }
    return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, path.string() + ": cannot open for reading");
    return in;
}

}  // namespace

std::vector<BusinessRow> business_rows(std::span<const MetricCell> cells,
                                       std::span<const std::pair<DomainId, DomainConfig>> domains) {
    std::vector<BusinessRow> out;
    for (const auto& c : cells) {
        const auto it =
            std::find_if(domains.begin(), domains.end(), [&](const auto& d) { return d.first == c.domain; });
        BusinessRow b;
        b.agent = c.agent;
        b.domain = c.domain;
        if (it != domains.end()) {
            b.kpi_unit = it->second.kpi_unit;
            b.kpi_conversion = it->second.kpi_conversion;
        } else {
            b.kpi_unit = KpiUnit::Dollars;
            b.kpi_conversion = Money::parse("1");
        }
        b.kpi_value = c.kpi_value;
        b.kpi_monetary = c.kpi_monetary;
        b.op_cost = c.op_cost;
        b.bie = c.bie;
        b.roi = c.roi;
        out.push_back(b);
    }
    return out;
}

const std::vector<std::string>& aggregate_header() {
    static const auto h = header_of(cell_columns());
    return h;
}
const std::vector<std::string>& overall_header() {
    static const auto h = header_of(overall_columns());
    return h;
}
const std::vector<std::string>& adaptability_header() {
    static const auto h = header_of(adaptability_columns());
    return h;
}
const std::vector<std::string>& business_header() {
    static const auto h = header_of(business_columns());
    return h;
}

void write_aggregate_csv(std::ostream& out, std::span<const MetricCell> cells) { write_rows(out, cell_columns(), cells); }
void write_overall_csv(std::ostream& out, std::span<const OverallRow> rows) { write_rows(out, overall_columns(), rows); }
void write_adaptability_csv(std::ostream& out, std::span<const AdaptabilityCell> cells) {
    write_rows(out, adaptability_columns(), cells);
}
void write_business_csv(std::ostream& out, std::span<const BusinessRow> rows) {
    write_rows(out, business_columns(), rows);
}

std::vector<MetricCell> read_aggregate_csv(std::istream& in, const std::string& source) {
    return read_rows(in, source, cell_columns());
}
std::vector<OverallRow> read_overall_csv(std::istream& in, const std::string& source) {
    return read_rows(in, source, overall_columns());
}
std::vector<AdaptabilityCell> read_adaptability_csv(std::istream& in, const std::string& source) {
    return read_rows(in, source, adaptability_columns());
}
std::vector<BusinessRow> read_business_csv(std::istream& in, const std::string& source) {
    return read_rows(in, source, business_columns());
}

MetricCell at_declared_precision(const MetricCell& cell) {
    std::stringstream ss;
    write_aggregate_csv(ss, std::span<const MetricCell>(&cell, 1));
    return read_aggregate_csv(ss).front();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorKind::IoError, path.parent_path().string() + ": cannot create directory: " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::IoError, path.string() + ": cannot open for writing");
    out << contents;
    out.flush();
    if (!out) fail(ErrorKind::IoError, path.string() + ": write failed");
}

std::string read_text_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void export_datasets(const std::filesystem::path& dir, const Datasets& data) {
    auto emit = [&](const char* name, auto writer, const auto& rows) {
        if (rows.empty()) return;
        std::ostringstream ss;
        writer(ss, std::span(rows));
        write_text_file(dir / name, ss.str());
    };
    emit(kTaskLevelFile, [](std::ostream& o, std::span<const TaskRecord> r) { write_task_csv(o, r); }, data.records);
    emit(kAggregateFile, [](std::ostream& o, std::span<const MetricCell> r) { write_aggregate_csv(o, r); }, data.cells);
    emit(kOverallFile, [](std::ostream& o, std::span<const OverallRow> r) { write_overall_csv(o, r); }, data.overall);
    emit(kAdaptabilityFile, [](std::ostream& o, std::span<const AdaptabilityCell> r) { write_adaptability_csv(o, r); },
         data.adaptability);
    emit(kBusinessFile, [](std::ostream& o, std::span<const BusinessRow> r) { write_business_csv(o, r); },
         data.business);
}

std::vector<MetricCell> read_aggregate_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_aggregate_csv(in, path.string());
}
std::vector<OverallRow> read_overall_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_overall_csv(in, path.string());
}
std::vector<AdaptabilityCell> read_adaptability_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_adaptability_csv(in, path.string());
}
std::vector<BusinessRow> read_business_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_business_csv(in, path.string());
}

}  // namespace agentmetrics::report

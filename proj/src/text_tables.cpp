#include "agentmetrics/text_tables.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "agentmetrics/csv.hpp"

namespace agentmetrics::report {

namespace {

using csv::format_fixed;
using csv::format_optional;

std::string opt(const std::optional<double>& v, int places) {
    return v ? format_fixed(*v, places) : std::string("-");
}

std::string format_p(double p) {
    if (p < 0.0001) return "<0.0001";
    return format_fixed(p, 4);
}

}  // namespace

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < width.size(); ++i) {
            const std::string cell = i < cells.size() ? cells[i] : std::string();
            const std::string pad(width[i] - cell.size(), ' ');
            if (i) s += "  ";
            s += i == 0 ? cell + pad : pad + cell;
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (std::size_t w : width) total += w;
    out << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << '\n';
    for (const auto& r : rows) line(r);
    return out.str();
}

std::string overall_table(std::span<const OverallRow> rows) {
    std::vector<std::vector<std::string>> body;
    for (const auto& r : rows) {
        body.push_back({display_name(r.agent), format_fixed(r.gcr, 2), format_fixed(r.aix, 4),
                        format_fixed(r.dtt_mean, 2), opt(r.ces, 2), opt(r.mtr, 2), opt(r.tdi_norm, 4), opt(r.oas, 2),
                        opt(r.crs, 2), opt(r.cqi, 2)});
    }
    return render_table({"Agent", "GCR (%)", "AIx", "DTT (s)", "CES", "MTR (%)", "TDI (norm)", "OAS", "CRS (%)", "CQI"},
                        body);
}

std::string domain_table(std::span<const MetricCell> cells) {
    std::vector<std::vector<std::string>> body;
    for (const auto& c : cells) {
        body.push_back({display_name(c.agent), display_name(c.domain), format_fixed(c.gcr, 2), format_fixed(c.aix, 4),
                        format_fixed(c.dtt_mean, 2), opt(c.oas, 2)});
    }
    return render_table({"Agent", "Domain", "GCR (%)", "AIx", "DTT (s)", "OAS"}, body);
}

std::string adaptability_table(std::span<const AdaptabilityCell> cells) {
    std::vector<std::vector<std::string>> body;
    for (const auto& c : cells) {
        body.push_back({display_name(c.agent), display_name(c.domain), format_fixed(c.gcr_zero_shot, 2),
                        format_fixed(c.gcr_few_shot, 2), format_fixed(c.ad, 2), opt(c.ar, 2)});
    }
    return render_table({"Agent", "Domain", "Zero-shot GCR", "Few-shot GCR", "AD", "AR (%)"}, body);
}

std::string business_table(std::span<const BusinessRow> rows) {
    std::vector<std::vector<std::string>> body;
    for (const auto& b : rows) {
        body.push_back({display_name(b.agent), display_name(b.domain), std::string(to_string(b.kpi_unit)),
                        format_fixed(b.kpi_value, 2), b.kpi_monetary.to_fixed(2), b.op_cost.to_fixed(2),
                        opt(b.bie, 2), opt(b.roi, 2)});
    }
    return render_table({"Agent", "Domain", "KPI unit", "KPI value", "Monetary ($)", "Op. cost ($)", "BIE", "ROI (%)"},
                        body);
}

std::string stat_report_text(const analysis::StatReport& r) {
    std::ostringstream out;
    out << "Statistical analysis of " << r.metric << " by agent (sample unit: " << analysis::to_string(r.grouping)
        << ")\n\n";

    std::vector<std::vector<std::string>> groups;
    for (const auto& g : r.groups) {
        double sum = 0.0;
        for (double v : g.values) sum += v;
        groups.push_back({g.label, std::to_string(g.values.size()),
                          format_fixed(g.values.empty() ? 0.0 : sum / static_cast<double>(g.values.size()), 4)});
    }
    out << render_table({"Group", "n", "Mean"}, groups) << '\n';

    const auto& a = r.anova;
    out << "One-way ANOVA\n";
    out << render_table({"Source", "SS", "df", "MS", "F", "p"},
                        {{"Between", format_fixed(a.ss_between, 4), std::to_string(a.df_between),
                          format_fixed(a.ms_between, 4), format_fixed(a.f_stat, 4), format_p(a.p_value)},
                         {"Within", format_fixed(a.ss_within, 4), std::to_string(a.df_within),
                          format_fixed(a.ms_within, 4), "", ""},
                         {"Total", format_fixed(a.ss_total, 4), std::to_string(a.df_between + a.df_within), "", "",
                          ""}})
        << '\n';

    std::vector<std::vector<std::string>> tukey;
    for (const auto& p : r.tukey) {
        tukey.push_back({p.group_a + " - " + p.group_b, format_fixed(p.mean_diff, 4), format_fixed(p.q_stat, 4),
                         format_p(p.p_value), p.significant ? "yes" : "no"});
    }
    out << "Tukey HSD\n" << render_table({"Pair", "Mean diff", "q", "p", "Significant"}, tukey) << '\n';

    std::vector<std::vector<std::string>> effects;
    for (const auto& e : r.effects) {
        effects.push_back({e.group_a + " vs " + e.group_b, format_fixed(e.effect.d, 4),
                           std::string(stats::to_string(e.effect.magnitude))});
    }
    out << "Effect sizes (Cohen's d)\n" << render_table({"Comparison", "d", "Magnitude"}, effects) << '\n';

    if (!r.correlations.names.empty()) {
        std::vector<std::string> header = {""};
        header.insert(header.end(), r.correlations.names.begin(), r.correlations.names.end());
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < r.correlations.names.size(); ++i) {
            std::vector<std::string> row = {r.correlations.names[i]};
            for (double v : r.correlations.r[i]) row.push_back(format_fixed(v, 4));
            rows.push_back(std::move(row));
        }
        out << "Pearson correlations\n" << render_table(header, rows) << '\n';
    }

    std::vector<std::vector<std::string>> ci;
    for (const auto& w : r.gcr_intervals) {
        ci.push_back({w.label, std::to_string(w.successes), std::to_string(w.n),
                      format_fixed(static_cast<double>(w.successes) / static_cast<double>(w.n), 4),
                      format_fixed(w.interval.lo, 4), format_fixed(w.interval.hi, 4)});
    }
    out << "GCR 95% Wilson intervals\n" << render_table({"Agent", "Successes", "n", "Rate", "Lower", "Upper"}, ci);
    return out.str();
}

void write_anova_csv(std::ostream& out, const analysis::StatReport& r) {
    const auto& a = r.anova;
    csv::write_row(out, {"grouping", "metric", "ss_between", "ss_within", "ss_total", "df_between", "df_within",
                         "ms_between", "ms_within", "f_stat", "p_value"});
    csv::write_row(out, {std::string(analysis::to_string(r.grouping)), r.metric, csv::format_exact(a.ss_between),
                         csv::format_exact(a.ss_within), csv::format_exact(a.ss_total), std::to_string(a.df_between),
                         std::to_string(a.df_within), csv::format_exact(a.ms_between),
                         csv::format_exact(a.ms_within), csv::format_exact(a.f_stat), csv::format_exact(a.p_value)});
}

void write_tukey_csv(std::ostream& out, const analysis::StatReport& r) {
    csv::write_row(out, {"group_a", "group_b", "mean_diff", "q_stat", "p_value", "significant"});
    for (const auto& p : r.tukey) {
        csv::write_row(out, {p.group_a, p.group_b, csv::format_exact(p.mean_diff), csv::format_exact(p.q_stat),
                             csv::format_exact(p.p_value), p.significant ? "1" : "0"});
    }
}

void write_effects_csv(std::ostream& out, const analysis::StatReport& r) {
    csv::write_row(out, {"group_a", "group_b", "d", "magnitude"});
    for (const auto& e : r.effects) {
        csv::write_row(out, {e.group_a, e.group_b, csv::format_exact(e.effect.d),
                             std::string(stats::to_string(e.effect.magnitude))});
    }
}

void write_correlation_csv(std::ostream& out, const analysis::StatReport& r) {
    std::vector<std::string> header = {"metric"};
    header.insert(header.end(), r.correlations.names.begin(), r.correlations.names.end());
    csv::write_row(out, header);
    for (std::size_t i = 0; i < r.correlations.names.size(); ++i) {
        std::vector<std::string> row = {r.correlations.names[i]};
        for (double v : r.correlations.r[i]) row.push_back(csv::format_exact(v));
        csv::write_row(out, row);
    }
}

void write_intervals_csv(std::ostream& out, const analysis::StatReport& r) {
    csv::write_row(out, {"agent", "successes", "n", "rate", "wilson_lo", "wilson_hi"});
    for (const auto& w : r.gcr_intervals) {
        csv::write_row(out, {w.label, std::to_string(w.successes), std::to_string(w.n),
                             csv::format_exact(static_cast<double>(w.successes) / static_cast<double>(w.n)),
                             csv::format_exact(w.interval.lo), csv::format_exact(w.interval.hi)});
    }
}

}  // namespace agentmetrics::report

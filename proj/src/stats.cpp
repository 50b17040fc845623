#include "agentmetrics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "agentmetrics/error.hpp"
#include "agentmetrics/special_functions.hpp"

namespace agentmetrics::stats {

namespace {

[[noreturn]] void invalid(const std::string& what) { fail(ErrorKind::InvalidInput, what); }

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double centered_ss(std::span<const double> v, double center) {
    double s = 0.0;
    for (double x : v) s += (x - center) * (x - center);
    return s;
}

void require_finite(std::span<const double> v, const std::string& what) {
    for (double x : v) {
        if (!std::isfinite(x)) invalid(what + " contains a non-finite value");
    }
}

}  // namespace

AnovaTable one_way_anova(std::span<const std::vector<double>> groups) {
    if (groups.size() < 2) invalid("ANOVA needs at least two groups");
    std::size_t n = 0;
    double grand = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].size() < 2) invalid("ANOVA group " + std::to_string(g) + " needs at least two observations");
        require_finite(groups[g], "ANOVA group " + std::to_string(g));
        n += groups[g].size();
        for (double x : groups[g]) grand += x;
    }
    grand /= static_cast<double>(n);

    AnovaTable t;
    for (const auto& g : groups) {
        const double m = mean_of(g);
        t.ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        t.ss_within += centered_ss(g, m);
    }
    for (const auto& g : groups) t.ss_total += centered_ss(g, grand);
    t.df_between = static_cast<std::int64_t>(groups.size()) - 1;
    t.df_within = static_cast<std::int64_t>(n - groups.size());
    t.ms_between = t.ss_between / static_cast<double>(t.df_between);
    t.ms_within = t.ss_within / static_cast<double>(t.df_within);
    if (t.ss_within == 0.0 && t.ss_between == 0.0) {
        fail(ErrorKind::DegenerateData, "ANOVA with no variance within or between groups");
    }
    if (t.ss_within == 0.0) {
        t.f_stat = std::numeric_limits<double>::infinity();
        t.p_value = 0.0;
    } else {
        t.f_stat = t.ms_between / t.ms_within;
        t.p_value = special::f_sf(t.f_stat, static_cast<double>(t.df_between), static_cast<double>(t.df_within));
    }
    return t;
}

AnovaTable one_way_anova(std::span<const Sample> groups) {
    std::vector<std::vector<double>> values;
    values.reserve(groups.size());
    for (const auto& g : groups) values.push_back(g.values);
    return one_way_anova(values);
}

std::vector<TukeyPair> tukey_hsd(std::span<const Sample> groups, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) invalid("alpha must lie in (0, 1)");
    const AnovaTable anova = one_way_anova(groups);
    const int k = static_cast<int>(groups.size());
    const auto df = static_cast<double>(anova.df_within);
    std::vector<double> means;
    for (const auto& g : groups) means.push_back(mean_of(g.values));

    std::vector<TukeyPair> out;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            TukeyPair p;
            p.group_a = groups[i].label;
            p.group_b = groups[j].label;
            p.mean_diff = means[i] - means[j];
            const double se = std::sqrt(anova.ms_within / 2.0 *
                                        (1.0 / static_cast<double>(groups[i].values.size()) +
                                         1.0 / static_cast<double>(groups[j].values.size())));
            if (se == 0.0) {
                p.q_stat = p.mean_diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
                p.p_value = p.mean_diff == 0.0 ? 1.0 : 0.0;
            } else {
                p.q_stat = std::fabs(p.mean_diff) / se;
                p.p_value = std::clamp(special::studentized_range_sf(p.q_stat, k, df), 0.0, 1.0);
            }
            p.significant = p.p_value < alpha;
            out.push_back(p);
        }
    }
    return out;
}

std::string_view to_string(Magnitude m) {
    switch (m) {
        case Magnitude::Negligible: return "negligible";
        case Magnitude::Small: return "small";
        case Magnitude::Medium: return "medium";
        case Magnitude::Large: return "large";
    }
    return "?";
}

Magnitude magnitude_for(double d) {
    const double a = std::fabs(d);
    if (a < 0.2) return Magnitude::Negligible;
    if (a < 0.5) return Magnitude::Small;
    if (a < 0.8) return Magnitude::Medium;
    return Magnitude::Large;
}

EffectSize cohens_d(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) invalid("Cohen's d needs at least two observations per sample");
    require_finite(a, "Cohen's d sample");
    require_finite(b, "Cohen's d sample");
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    const double pooled_var = (centered_ss(a, ma) + centered_ss(b, mb)) / static_cast<double>(a.size() + b.size() - 2);
    if (pooled_var == 0.0) fail(ErrorKind::DegenerateData, "Cohen's d with zero pooled standard deviation");
    EffectSize e;
    e.d = (ma - mb) / std::sqrt(pooled_var);
    e.magnitude = magnitude_for(e.d);
    return e;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) invalid("correlation columns differ in length");
    if (x.size() < 3) invalid("correlation needs at least three observations");
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) fail(ErrorKind::DegenerateData, "correlation with a zero-variance column");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix pearson_matrix(std::span<const Column> columns) {
    if (columns.size() < 2) invalid("correlation matrix needs at least two columns");
    const std::size_t n = columns.front().values.size();
    if (n < 3) invalid("correlation matrix needs at least three rows");
    for (const auto& c : columns) {
        if (c.values.size() != n) invalid("column '" + c.name + "' differs in length");
        require_finite(c.values, "column '" + c.name + "'");
        const double m = mean_of(c.values);
        if (centered_ss(c.values, m) == 0.0) {
            fail(ErrorKind::DegenerateData, "column '" + c.name + "' has zero variance");
        }
    }
    CorrelationMatrix out;
    const std::size_t k = columns.size();
    out.r.assign(k, std::vector<double>(k, 1.0));
    for (const auto& c : columns) out.names.push_back(c.name);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            out.r[i][j] = pearson(columns[i].values, columns[j].values);
            out.r[j][i] = out.r[i][j];
        }
    }
    return out;
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n, double z) {
    if (n < 1) invalid("Wilson interval needs n >= 1");
    if (successes < 0 || successes > n) invalid("successes must lie in [0, n]");
    if (!(z > 0.0)) invalid("z must be positive");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    WilsonInterval w;
    w.lo = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, p);
    w.hi = successes == n ? 1.0 : std::clamp(center + half, p, 1.0);
    return w;
}

ChiSquareResult chi_square_independence(const std::vector<std::vector<std::int64_t>>& table) {
    const std::size_t r = table.size();
    if (r < 2) invalid("chi-square needs at least two rows");
    const std::size_t c = table.front().size();
    if (c < 2) invalid("chi-square needs at least two columns");
    std::vector<double> row_sum(r, 0.0);
    std::vector<double> col_sum(c, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        if (table[i].size() != c) invalid("chi-square table rows differ in length");
        for (std::size_t j = 0; j < c; ++j) {
            if (table[i][j] < 0) invalid("chi-square counts must be non-negative");
            const auto v = static_cast<double>(table[i][j]);
            row_sum[i] += v;
            col_sum[j] += v;
            total += v;
        }
    }
    ChiSquareResult out;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const double expected = row_sum[i] * col_sum[j] / (total > 0.0 ? total : 1.0);
            if (!(expected > 0.0)) {
                invalid("zero expected count at row " + std::to_string(i) + ", column " + std::to_string(j));
            }
            const double diff = static_cast<double>(table[i][j]) - expected;
            out.chi2 += diff * diff / expected;
        }
    }
    out.df = static_cast<std::int64_t>((r - 1) * (c - 1));
    out.p_value = special::chi2_sf(out.chi2, static_cast<double>(out.df));
    return out;
}

double fleiss_kappa(const std::vector<std::vector<std::int64_t>>& counts) {
    const std::size_t items = counts.size();
    if (items < 2) invalid("Fleiss' kappa needs at least two items");
    const std::size_t cats = counts.front().size();
    if (cats < 1) invalid("Fleiss' kappa needs at least one category");
    std::int64_t raters = -1;
    std::vector<double> category_total(cats, 0.0);
    double agreement_sum = 0.0;
    for (std::size_t i = 0; i < items; ++i) {
        if (counts[i].size() != cats) invalid("Fleiss' kappa rows differ in category count");
        std::int64_t row = 0;
        double pairs = 0.0;
        for (std::size_t j = 0; j < cats; ++j) {
            const std::int64_t v = counts[i][j];
            if (v < 0) invalid("Fleiss' kappa counts must be non-negative");
            row += v;
            category_total[j] += static_cast<double>(v);
            pairs += static_cast<double>(v) * static_cast<double>(v - 1);
        }
        if (raters < 0) raters = row;
        if (row != raters) invalid("item " + std::to_string(i) + " has a different rater count");
        if (raters < 2) invalid("Fleiss' kappa needs at least two raters per item");
        agreement_sum += pairs / (static_cast<double>(raters) * static_cast<double>(raters - 1));
    }
    const double n_items = static_cast<double>(items);
    const double p_bar = agreement_sum / n_items;
    double p_e = 0.0;
    for (double t : category_total) {
        const double pj = t / (n_items * static_cast<double>(raters));
        p_e += pj * pj;
    }
    if (p_bar == 1.0) return 1.0;
    return (p_bar - p_e) / (1.0 - p_e);
}

double fleiss_kappa_from_ratings(const std::vector<std::vector<int>>& ratings) {
    std::map<int, std::size_t> index;
    for (const auto& item : ratings) {
        for (int v : item) index.emplace(v, 0);
    }
    std::size_t next = 0;
    for (auto& [code, idx] : index) idx = next++;
    std::vector<std::vector<std::int64_t>> counts;
    for (const auto& item : ratings) {
        std::vector<std::int64_t> row(index.size(), 0);
        for (int v : item) ++row[index.at(v)];
        counts.push_back(std::move(row));
    }
    if (index.empty()) invalid("Fleiss' kappa needs ratings");
    return fleiss_kappa(counts);
}

double krippendorff_alpha(const std::vector<std::vector<std::optional<double>>>& scores) {
    double observed = 0.0;  // sum over units of within-unit squared differences / (m_u - 1)
    std::vector<double> pairable;
    std::size_t pairable_units = 0;
    std::vector<double> unit;
    for (const auto& item : scores) {
        unit.clear();
        for (const auto& v : item) {
            if (!v) continue;
            if (!std::isfinite(*v)) invalid("Krippendorff's alpha values must be finite");
            unit.push_back(*v);
        }
        if (unit.size() < 2) continue;
        ++pairable_units;
        const double m = static_cast<double>(unit.size());
        // Sum over ordered pairs i != j of (v_i - v_j)^2 equals 2 m times
        // the centered sum of squares.
        observed += 2.0 * m * centered_ss(unit, mean_of(unit)) / (m - 1.0);
        pairable.insert(pairable.end(), unit.begin(), unit.end());
    }
    if (pairable_units < 2) invalid("Krippendorff's alpha needs at least two items with two ratings");
    const double n = static_cast<double>(pairable.size());
    const double expected_pairs = 2.0 * n * centered_ss(pairable, mean_of(pairable));
    if (!(expected_pairs > 0.0)) fail(ErrorKind::DegenerateData, "Krippendorff's alpha with no expected disagreement");
    const double d_o = observed / n;
    const double d_e = expected_pairs / (n * (n - 1.0));
    return 1.0 - d_o / d_e;
}

}  // namespace agentmetrics::stats

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Hypothesis tests, effect sizes, agreement statistics and intervals.
// Precondition failures throw InvalidInput; degenerate data (no variance
// where the statistic needs it) throws DegenerateData.
namespace agentmetrics::stats {

struct Sample {
    std::string label;
    std::vector<double> values;
};

struct AnovaTable {
    double ss_between = 0.0;
    double ss_within = 0.0;
    double ss_total = 0.0;
    std::int64_t df_between = 0;
    std::int64_t df_within = 0;
    double ms_between = 0.0;
    double ms_within = 0.0;
    double f_stat = 0.0;
    double p_value = 1.0;
};

/// At least two groups of at least two observations each.
AnovaTable one_way_anova(std::span<const std::vector<double>> groups);
AnovaTable one_way_anova(std::span<const Sample> groups);

struct TukeyPair {
    std::string group_a;
    std::string group_b;
    double mean_diff = 0.0;  // mean_a - mean_b
    double q_stat = 0.0;
    double p_value = 1.0;
    bool significant = false;
};

/// All k(k-1)/2 pairs in input order, Tukey-Kramer standard errors.
std::vector<TukeyPair> tukey_hsd(std::span<const Sample> groups, double alpha = 0.05);

enum class Magnitude { Negligible, Small, Medium, Large };
std::string_view to_string(Magnitude m);
Magnitude magnitude_for(double d);

struct EffectSize {
    double d = 0.0;
    Magnitude magnitude = Magnitude::Negligible;
};

/// (mean_a - mean_b) / pooled SD.
EffectSize cohens_d(std::span<const double> a, std::span<const double> b);

/// Pearson r of two equal-length columns (length >= 3, nonzero variance).
double pearson(std::span<const double> x, std::span<const double> y);

struct Column {
    std::string name;
    std::vector<double> values;
};

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> r;  // symmetric, unit diagonal
};

/// DegenerateData naming the first zero-variance column.
CorrelationMatrix pearson_matrix(std::span<const Column> columns);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n, double z = 1.96);

struct ChiSquareResult {
    double chi2 = 0.0;
    std::int64_t df = 0;
    double p_value = 1.0;
};

/// Pearson chi-square test of independence on an r x c table (r, c >= 2).
ChiSquareResult chi_square_independence(const std::vector<std::vector<std::int64_t>>& table);

/// Fleiss' kappa from an items x categories count table; every row must sum
/// to the same rater count (>= 2). Returns 1.0 when every item is unanimous.
double fleiss_kappa(const std::vector<std::vector<std::int64_t>>& counts);
/// Same statistic from raw items x raters category codes (any integers).
double fleiss_kappa_from_ratings(const std::vector<std::vector<int>>& ratings);

/// Krippendorff's alpha with the interval metric on items x raters values;
/// nullopt marks a missing rating. Items with fewer than two ratings are
/// not pairable and are ignored.
double krippendorff_alpha(const std::vector<std::vector<std::optional<double>>>& scores);

}  // namespace agentmetrics::stats

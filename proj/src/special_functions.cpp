#include "agentmetrics/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "agentmetrics/error.hpp"

namespace agentmetrics::special {

namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    return h;
}

double gamma_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void require(bool ok, const char* what) {
    if (!ok) fail(ErrorKind::InvalidInput, what);
}

// 16-point Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration.
struct GaussLegendre {
    static constexpr int kN = 16;
    std::array<double, kN> x{};
    std::array<double, kN> w{};

    GaussLegendre() {
        for (int i = 0; i < kN; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (kN + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = 0.0;
                for (int j = 1; j <= kN; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
                }
                dp = kN * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / dp;
                z -= dz;
                if (std::fabs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre& rule() {
    static const GaussLegendre gl;
    return gl;
}

template <class F>
double integrate(F&& f, double lo, double hi, int panels) {
    const auto& gl = rule();
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        double part = 0.0;
        for (int i = 0; i < GaussLegendre::kN; ++i) part += gl.w[i] * f(mid + 0.5 * width * gl.x[i]);
        total += 0.5 * width * part;
    }
    return total;
}

// Distribution of the range of k standard normals: P(R <= w).
double normal_range_cdf(double w, int k) {
    if (w <= 0.0) return 0.0;
    constexpr double kLo = -8.5;
    constexpr double kHi = 8.5;
    const double inner = integrate(
        [&](double z) {
            const double band = normal_cdf(z + w) - normal_cdf(z);
            return std::exp(-0.5 * z * z) * std::pow(band, k - 1);
        },
        kLo, kHi, 16);
    const double v = k * inner / std::sqrt(2.0 * M_PI);
    return std::fmin(1.0, std::fmax(0.0, v));
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    require(a > 0.0 && b > 0.0, "incomplete beta needs a, b > 0");
    require(x >= 0.0 && x <= 1.0, "incomplete beta needs x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double gamma_p(double a, double x) {
    require(a > 0.0 && x >= 0.0, "incomplete gamma needs a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_series(a, x);
    return 1.0 - gamma_continued_fraction(a, x);
}

double gamma_q(double a, double x) {
    require(a > 0.0 && x >= 0.0, "incomplete gamma needs a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_series(a, x);
    return gamma_continued_fraction(a, x);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double f_sf(double f, double d1, double d2) {
    require(d1 > 0.0 && d2 > 0.0, "F distribution needs positive degrees of freedom");
    if (std::isnan(f)) return std::numeric_limits<double>::quiet_NaN();
    if (f <= 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    return incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

double chi2_sf(double x, double df) {
    require(df > 0.0, "chi-square needs positive degrees of freedom");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return gamma_q(df / 2.0, x / 2.0);
}

double t_two_sided(double t, double df) {
    require(df > 0.0, "t distribution needs positive degrees of freedom");
    if (std::isinf(t)) return 0.0;
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double studentized_range_cdf(double q, int k, double df) {
    require(k >= 2, "studentized range needs k >= 2");
    if (!(q > 0.0)) return 0.0;
    if (std::isinf(q)) return 1.0;
    if (df <= 0.0 || df > 25000.0) return normal_range_cdf(q, k);
    // s = sqrt(chi2_df / df) has density c s^(df-1) exp(-df s^2 / 2).
    const double log_c = 0.5 * df * std::log(df) - std::lgamma(0.5 * df) - (0.5 * df - 1.0) * std::log(2.0);
    const double spread = std::sqrt(0.5 / df);
    const double lo = std::fmax(0.0, 1.0 - 12.0 * spread);
    const double hi = 1.0 + 14.0 * spread;
    const double v = integrate(
        [&](double s) {
            if (s <= 0.0) return 0.0;
            const double dens = std::exp(log_c + (df - 1.0) * std::log(s) - 0.5 * df * s * s);
            return dens * normal_range_cdf(q * s, k);
        },
        lo, hi, 16);
    return std::fmin(1.0, std::fmax(0.0, v));
}

double studentized_range_sf(double q, int k, double df) { return 1.0 - studentized_range_cdf(q, k, df); }

double studentized_range_quantile(double p, int k, double df) {
    require(p > 0.0 && p < 1.0, "quantile needs p in (0, 1)");
    double lo = 0.0;
    double hi = 4.0;
    while (studentized_range_cdf(hi, k, df) < p) {
        lo = hi;
        hi *= 2.0;
        require(hi < 1e6, "studentized range quantile did not bracket");
    }
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (studentized_range_cdf(mid, k, df) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace agentmetrics::special

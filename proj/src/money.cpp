#include "agentmetrics/money.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "agentmetrics/error.hpp"

namespace agentmetrics {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptySlice: return "EmptySlice";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NoSuccesses: return "NoSuccesses";
        case ErrorKind::DegenerateBaseline: return "DegenerateBaseline";
        case ErrorKind::DivideByZero: return "DivideByZero";
        case ErrorKind::CalibrationError: return "CalibrationError";
        case ErrorKind::DegenerateData: return "DegenerateData";
        case ErrorKind::IncompleteGrid: return "IncompleteGrid";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::int64_t checked_add(std::int64_t a, std::int64_t b, std::string_view what) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) fail(ErrorKind::InvalidInput, std::string(what) + " overflows");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, std::string_view what) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::InvalidInput, std::string(what) + " overflows");
    return out;
}

}  // namespace

Money Money::from_dollars(double dollars) {
    const double nanos = std::round(dollars * static_cast<double>(kNanosPerDollar));
    if (!std::isfinite(nanos) || std::fabs(nanos) >= static_cast<double>(kMax)) {
        fail(ErrorKind::InvalidInput, "dollar amount out of range");
    }
    return Money(static_cast<std::int64_t>(nanos));
}

Money Money::parse(std::string_view text) {
    const std::string original(text);
    if (text.empty()) fail(ErrorKind::InvalidInput, "empty money literal");
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::int64_t whole = 0;
    std::int64_t frac = 0;
    int frac_digits = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (seen_point) fail(ErrorKind::InvalidInput, "bad money literal '" + original + "'");
            seen_point = true;
            continue;
        }
        if (c == ',' && !seen_point) continue;  // thousands separator
        if (c < '0' || c > '9') fail(ErrorKind::InvalidInput, "bad money literal '" + original + "'");
        seen_digit = true;
        const int digit = c - '0';
        if (!seen_point) {
            whole = checked_add(checked_mul(whole, 10, original), digit, original);
        } else if (frac_digits < 9) {
            frac = frac * 10 + digit;
            ++frac_digits;
        } else if (digit != 0) {
            fail(ErrorKind::InvalidInput, "money literal '" + original + "' finer than a nanodollar");
        }
    }
    if (!seen_digit) fail(ErrorKind::InvalidInput, "bad money literal '" + original + "'");
    for (int i = frac_digits; i < 9; ++i) frac *= 10;
    std::int64_t nanos = checked_add(checked_mul(whole, kNanosPerDollar, original), frac, original);
    return Money(negative ? -nanos : nanos);
}

std::string Money::to_decimal_string() const {
    std::string out = to_fixed(9);
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return out;
}

std::string Money::to_fixed(int places) const {
    if (places < 0 || places > 9) fail(ErrorKind::InvalidInput, "decimal places must be 0..9");
    std::int64_t unit = 1;
    for (int i = places; i < 9; ++i) unit *= 10;
    const bool negative = nanos_ < 0;
    // Work in unsigned magnitude so INT64_MIN does not overflow.
    const std::uint64_t magnitude =
        negative ? static_cast<std::uint64_t>(-(nanos_ + 1)) + 1 : static_cast<std::uint64_t>(nanos_);
    const std::uint64_t u = static_cast<std::uint64_t>(unit);
    std::uint64_t units = magnitude / u;
    if ((magnitude % u) * 2 >= u) ++units;
    std::uint64_t scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    const std::uint64_t whole = units / scale;
    const std::uint64_t frac = units % scale;

    std::string out = negative && units != 0 ? "-" : "";
    out += std::to_string(whole);
    if (places > 0) {
        std::string digits = std::to_string(frac);
        out += '.';
        out.append(static_cast<std::size_t>(places) - digits.size(), '0');
        out += digits;
    }
    return out;
}

Money Money::times(std::int64_t count) const { return Money(checked_mul(nanos_, count, "money product")); }

Money Money::scaled(double factor) const {
    // long double keeps integer nanodollar values exact well past 2^53.
    const long double product = static_cast<long double>(nanos_) * static_cast<long double>(factor);
    const long double rounded = std::round(product);
    if (!std::isfinite(static_cast<double>(rounded)) || std::fabs(rounded) >= static_cast<long double>(kMax)) {
        fail(ErrorKind::InvalidInput, "scaled money out of range");
    }
    return Money(static_cast<std::int64_t>(rounded));
}

}  // namespace agentmetrics

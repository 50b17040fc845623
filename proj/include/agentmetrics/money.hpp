#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace agentmetrics {

/// Fixed-point dollar amount stored as an integer count of nanodollars.
///
/// Prices such as $0.00002 per token are exact at this resolution, so cost
/// sums do not depend on accumulation order. Display rounds half away from
/// zero to whole cents.
class Money {
public:
    static constexpr std::int64_t kNanosPerDollar = 1'000'000'000;

    constexpr Money() = default;

    static constexpr Money from_nanos(std::int64_t nanos) { return Money(nanos); }
    static Money from_dollars(double dollars);
    /// Parses a decimal literal ("0.00002", "-12.5", "1e3" is rejected).
    static Money parse(std::string_view text);

    constexpr std::int64_t nanos() const { return nanos_; }
    double dollars() const { return static_cast<double>(nanos_) / kNanosPerDollar; }

    /// Exact decimal representation with trailing zeros trimmed ("0.00002").
    std::string to_decimal_string() const;
    /// Rounded to `places` decimals (0..9), half away from zero.
    std::string to_fixed(int places = 2) const;

    Money times(std::int64_t count) const;
    /// Multiplies by a real factor and rounds to the nearest nanodollar.
    Money scaled(double factor) const;

    constexpr Money operator+(Money other) const { return Money(nanos_ + other.nanos_); }
    constexpr Money operator-(Money other) const { return Money(nanos_ - other.nanos_); }
    constexpr Money& operator+=(Money other) {
        nanos_ += other.nanos_;
        return *this;
    }
    constexpr auto operator<=>(const Money&) const = default;

private:
    constexpr explicit Money(std::int64_t nanos) : nanos_(nanos) {}
    std::int64_t nanos_ = 0;
};

}  // namespace agentmetrics

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "agentmetrics/error.hpp"
#include "agentmetrics/money.hpp"

using agentmetrics::Error;
using agentmetrics::ErrorKind;
using agentmetrics::Money;

TEST_CASE("money parses decimal literals exactly") {
    CHECK(Money::parse("0.00002").nanos() == 20'000);
    CHECK(Money::parse("5").nanos() == 5'000'000'000);
    CHECK(Money::parse("-12.5").nanos() == -12'500'000'000);
    CHECK(Money::parse("12,240").nanos() == 12'240'000'000'000);
    CHECK(Money::parse("0.000000001").nanos() == 1);
    CHECK(Money::parse("1.0000000000").nanos() == 1'000'000'000);
}

TEST_CASE("money rejects malformed literals") {
    for (const char* bad : {"", "-", "1e3", "1.2.3", "abc", "0.0000000001", "99999999999999999999"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Money::parse(bad), Error);
    }
}

TEST_CASE("money formatting rounds half away from zero") {
    CHECK(Money::parse("392.405").to_fixed(2) == "392.41");
    CHECK(Money::parse("-392.405").to_fixed(2) == "-392.41");
    CHECK(Money::parse("0.004").to_fixed(2) == "0.00");
    CHECK(Money::parse("-0.004").to_fixed(2) == "0.00");
    CHECK(Money::parse("57").to_fixed(0) == "57");
    CHECK(Money::parse("0.00002").to_decimal_string() == "0.00002");
    CHECK(Money::parse("14400").to_decimal_string() == "14400");
    CHECK_THROWS_AS(Money::parse("1").to_fixed(10), Error);
}

TEST_CASE("money arithmetic is exact in nanodollars") {
    const Money token = Money::parse("0.00002");
    CHECK(token.times(100'000) == Money::parse("2"));
    CHECK((token.times(1'000'000) + Money::parse("5").times(10)).to_fixed(2) == "70.00");
    CHECK(Money::parse("1000").scaled(14.4) == Money::parse("14400"));
    CHECK(Money::from_dollars(0.1).nanos() == 100'000'000);
    CHECK_THROWS_AS(Money::parse("9000000000").times(10), Error);
}

TEST_CASE("money sums do not depend on order") {
    std::mt19937_64 g(7);
    std::uniform_int_distribution<std::int64_t> d(-5'000'000'000LL, 5'000'000'000LL);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Money> v;
        for (int i = 0; i < 20; ++i) v.push_back(Money::from_nanos(d(g)));
        Money forward;
        for (const auto& m : v) forward += m;
        std::shuffle(v.begin(), v.end(), g);
        Money shuffled;
        for (const auto& m : v) shuffled += m;
        REQUIRE(forward == shuffled);
        REQUIRE(Money::parse(forward.to_decimal_string()) == forward);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "agentmetrics/error.hpp"
#include "agentmetrics/metrics.hpp"
#include "test_support.hpp"

using namespace agentmetrics;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<TaskRecord> outcomes(int successes, int total) {
    std::vector<TaskRecord> out;
    for (int i = 0; i < total; ++i) out.push_back(testing::basic_record("t" + std::to_string(i), i < successes));
    return out;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an agentmetrics::Error");
    return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("gcr") {
    CHECK(metrics::gcr(outcomes(84, 100)) == 84.0);
    CHECK(metrics::gcr(outcomes(7, 7)) == 100.0);
    CHECK(metrics::gcr(outcomes(0, 9)) == 0.0);
    CHECK(kind_of([] { metrics::gcr({}); }) == ErrorKind::EmptySlice);
}

TEST_CASE("aix") {
    CHECK(metrics::aix(50, 5) == 0.9);
    CHECK(metrics::aix(12, 0) == 1.0);
    CHECK(metrics::aix(12, 12) == 0.0);
    CHECK(kind_of([] { metrics::aix(0, 0); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { metrics::aix(3, 4); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { metrics::aix(3, -1); }) == ErrorKind::InvalidInput);
}

TEST_CASE("complexity-weighted aix") {
    auto a = testing::basic_record("a");
    a.total_steps = 3;
    auto b = testing::basic_record("b");
    b.total_steps = 20;
    b.interventions.clarification = 10;
    const std::vector<TaskRecord> v = {a, b};
    CHECK_THAT(metrics::aix_weighted(v, ComplexityWeights{}), WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(metrics::aix_weighted(v, ComplexityWeights{1.0, 1.0, 1.0}), WithinAbs(0.75, 1e-12));
}

TEST_CASE("dtt") {
    auto r = testing::basic_record();
    r.t_start = 1000.0;
    r.t_end = 1000.0 + 45 * 60;
    CHECK(metrics::dtt(r) == 2700.0);
    r.t_end = r.t_start;
    CHECK(metrics::dtt(r) == 0.0);
    r.t_end = r.t_start + 300.0;
    r.human_wait = 60.0;
    CHECK(metrics::dtt(r) == 240.0);
    r.human_wait = 400.0;
    CHECK(kind_of([&] { metrics::dtt(r); }) == ErrorKind::InvalidInput);
}

TEST_CASE("dtt summary") {
    std::vector<TaskRecord> v;
    for (double d : {300.0, 100.0, 200.0}) {
        auto r = testing::basic_record();
        r.t_end = d;
        v.push_back(r);
    }
    auto s = metrics::dtt_summary(v);
    CHECK(s.median == 200.0);
    CHECK(s.mean == 200.0);
    CHECK(s.p95 == 300.0);
    CHECK_FALSE(s.efficiency.has_value());
    CHECK(metrics::dtt_summary(v, 400.0).efficiency == 2.0);
    CHECK(kind_of([&] { metrics::dtt_summary(v, 0.0); }) == ErrorKind::InvalidInput);

    const std::vector<TaskRecord> one(v.begin(), v.begin() + 1);
    s = metrics::dtt_summary(one);
    CHECK((s.mean == 300.0 && s.median == 300.0 && s.p95 == 300.0));

    // Nearest rank: the 95th of 100 sorted values.
    std::vector<TaskRecord> hundred;
    for (int i = 1; i <= 100; ++i) {
        auto r = testing::basic_record();
        r.t_end = i;
        hundred.push_back(r);
    }
    CHECK(metrics::dtt_summary(hundred).p95 == 95.0);
}

TEST_CASE("ces") {
    CostModel cost;
    cost.token_equivalent = 100.0;
    auto v = outcomes(10, 10);
    v[0].tokens = 2000;
    v[0].api_calls = 20;
    CHECK(metrics::ces(v, cost) == 400.0);

    CHECK(metrics::ces(outcomes(3, 3), cost) == 0.0);

    cost.token_equivalent = 1000.0;
    auto one = outcomes(1, 1);
    one[0].tokens = 500;
    one[0].api_calls = 2;
    CHECK(metrics::ces(one, cost) == 2500.0);

    auto failed = outcomes(1, 2);
    failed[1].tokens = 1'000'000;  // failed tasks cost nothing in CES
    CHECK(metrics::ces(failed, cost) == 0.0);
    CHECK(kind_of([&] { metrics::ces(outcomes(0, 4), cost); }) == ErrorKind::NoSuccesses);
    CHECK(metrics::efficiency_ratio(4000.0, 2000.0) == 2.0);
}

TEST_CASE("tdi") {
    std::vector<ToolEvent> ev(6, ToolEvent{ToolOutcome::OptimalUse});
    ev.resize(10, ToolEvent{ToolOutcome::NoToolNeeded});
    CHECK(metrics::tdi(std::span<const ToolEvent>(ev)) == 0.6);
    CHECK(metrics::tdi(std::vector<ToolEvent>(4, ToolEvent{ToolOutcome::OptimalUse})) == 1.0);
    CHECK(metrics::tdi(std::vector<ToolEvent>(4, ToolEvent{ToolOutcome::Misuse})) == -1.0);
    CHECK(kind_of([] { metrics::tdi(std::span<const ToolEvent>()); }) == ErrorKind::EmptySlice);
    CHECK_FALSE(metrics::tdi(outcomes(2, 3)).has_value());

    CHECK(metrics::tdi_normalize(-1.0) == 0.0);
    CHECK(metrics::tdi_normalize(1.0) == 1.0);
    CHECK(metrics::tdi_normalize(0.0) == 0.5);
    CHECK_THAT(metrics::tdi_normalize(0.3798), WithinAbs(0.6899, 1e-12));
    CHECK(kind_of([] { metrics::tdi_normalize(1.5); }) == ErrorKind::InvalidInput);
}

TEST_CASE("oas") {
    const std::vector<double> scores = {9, 8, 9, 7, 8};
    CHECK_THAT(metrics::oas(scores), WithinAbs(8.2, 1e-12));
    CHECK(metrics::oas(std::vector<double>{6, 6, 6}) == 6.0);
    CHECK(metrics::oas(std::vector<double>{1, 10}) == 5.5);
    CHECK(kind_of([] { metrics::oas(std::vector<double>{0.5}); }) == ErrorKind::InvalidInput);

    CHECK_THAT(metrics::rater_weighted_score({8, 9, 7, 6}), WithinAbs(7.9, 1e-12));
    RaterPanel tens;
    for (auto& r : tens.raters) r = {10, 10, 10, 10};
    CHECK_THAT(metrics::oas_weighted(tens), WithinAbs(10.0, 1e-12));
    RaterPanel split = tens;
    split.raters[1] = {1, 1, 1, 1};
    split.raters[2] = {1, 1, 1, 1};
    CHECK_THAT(metrics::oas_weighted(split), WithinAbs(4.0, 1e-12));
}

TEST_CASE("cqi") {
    std::vector<CollabScores> sessions;
    for (int s : {4, 5, 3}) sessions.push_back({s, s, s, s, s});
    CHECK(metrics::cqi(sessions) == 4.0);
    CHECK(metrics::cqi(std::vector<CollabScores>{{5, 5, 5, 5, 5}}) == 5.0);
    CHECK(metrics::cqi(std::vector<CollabScores>{{1, 2, 3, 4, 5}}) == 3.0);
    CHECK(kind_of([] { metrics::cqi(std::vector<CollabScores>{{0, 2, 3, 4, 5}}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("mtr") {
    std::vector<TaskRecord> v;
    for (int i = 0; i < 40; ++i) {
        auto r = testing::basic_record("m" + std::to_string(i), true);
        r.chain.is_multistep = true;
        if (i < 30) {
            r.chain.had_initial_error = true;
            r.chain.error_type = ErrorType::ToolApiError;
            r.chain.self_recovered = true;
        }
        v.push_back(r);
    }
    v.push_back(testing::basic_record("single"));  // single-step: outside the denominator
    CHECK(metrics::mtr(v) == 75.0);
    for (auto& r : v) {
        r.chain.had_initial_error = false;
        r.chain.self_recovered = false;
    }
    CHECK(metrics::mtr(v) == 0.0);
    CHECK(kind_of([] { metrics::mtr(outcomes(1, 2)); }) == ErrorKind::EmptySlice);
}

TEST_CASE("crs") {
    std::vector<TaskRecord> v;
    for (int i = 0; i < 50; ++i) {
        auto r = testing::basic_record();
        r.chain.chain_len = 3 + i % 10;
        r.chain.chain_success = i < 42;
        v.push_back(r);
    }
    CHECK(metrics::crs(v) == 84.0);
    for (auto& r : v) r.chain.chain_success = true;
    CHECK(metrics::crs(v) == 100.0);
    for (auto& r : v) r.chain.chain_len = 2;
    CHECK(kind_of([&] { metrics::crs(v); }) == ErrorKind::EmptySlice);
}

TEST_CASE("adaptability") {
    CHECK_THAT(metrics::adaptability_delta(0.60, 0.85), WithinAbs(0.25, 1e-12));
    const auto a = metrics::adaptability(0.62, 0.84);
    CHECK_THAT(a.ad, WithinAbs(0.22, 1e-12));
    CHECK_THAT(a.ar, WithinAbs(35.48, 0.005));
    const auto same = metrics::adaptability(0.7, 0.7);
    CHECK((same.ad == 0.0 && same.ar == 0.0));
    CHECK(kind_of([] { metrics::adaptability(0.0, 0.5); }) == ErrorKind::DegenerateBaseline);
    CHECK(kind_of([] { metrics::adaptability_delta(1.2, 0.5); }) == ErrorKind::InvalidInput);
}

TEST_CASE("operational cost") {
    const CostModel cost;
    CHECK(metrics::operational_cost(outcomes(1, 3), cost) == Money{});
    auto v = outcomes(1, 1);
    v[0].tokens = 1'000'000;
    CHECK(metrics::operational_cost(v, cost) == Money::parse("20"));
    v[0].tokens = 100'000;
    v[0].api_calls = 500;
    v[0].total_steps = 10;
    v[0].interventions = {10, 0, 0};
    CHECK(metrics::operational_cost(v, cost) == Money::parse("57"));
}

TEST_CASE("kpi conversion, bie and roi") {
    DomainConfig finance;
    finance.kpi_conversion = Money::parse("1000");
    DomainConfig legal;
    legal.kpi_conversion = Money::parse("150");
    CHECK(metrics::kpi_to_monetary(finance, 14.40) == Money::parse("14400"));
    CHECK(metrics::kpi_to_monetary(legal, 33.0) == Money::parse("4950"));
    CHECK(metrics::kpi_to_monetary(legal, 0.0) == Money{});
    CHECK(kind_of([&] { metrics::kpi_to_monetary(legal, -1.0); }) == ErrorKind::InvalidInput);

    CHECK(metrics::bie(Money::parse("15000"), Money::parse("300")) == 50.0);
    CHECK_THAT(metrics::bie(Money::parse("12240"), Money::parse("392.40")), WithinAbs(31.19, 0.005));
    CHECK(metrics::bie(Money{}, Money::parse("3")) == 0.0);
    CHECK(kind_of([] { metrics::bie(Money::parse("1"), Money{}); }) == ErrorKind::DivideByZero);
    CHECK(kind_of([] { metrics::bie(Money::parse("1"), Money::parse("-1")); }) == ErrorKind::InvalidInput);

    CHECK(metrics::roi(Money::parse("7"), Money::parse("7")) == 0.0);
    CHECK(metrics::roi(Money::parse("15000"), Money::parse("300")) == 4900.0);
    CHECK(metrics::roi(Money{}, Money::parse("3")) == -100.0);
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("metric ranges hold on random valid records") {
    std::mt19937_64 g(31);
    const CostModel cost;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto v = testing::random_records(g, 1 + trial % 25);
        const double gcr = metrics::gcr(v);
        REQUIRE((gcr >= 0.0 && gcr <= 100.0));
        const double aix = metrics::aix_mean(v);
        REQUIRE((aix >= 0.0 && aix <= 1.0));
        if (const auto t = metrics::tdi(v)) {
            REQUIRE((*t >= -1.0 && *t <= 1.0));
            const double n = metrics::tdi_normalize(*t);
            REQUIRE((n >= 0.0 && n <= 1.0));
        }
        std::vector<double> oas;
        std::vector<CollabScores> sessions;
        for (const auto& r : v) {
            if (r.rater_scores) oas.push_back(metrics::oas_weighted(*r.rater_scores));
            if (r.collab_scores) sessions.push_back(*r.collab_scores);
        }
        if (!oas.empty()) {
            const double o = metrics::oas(oas);
            REQUIRE((o >= 1.0 && o <= 10.0));
        }
        if (!sessions.empty()) {
            const double c = metrics::cqi(sessions);
            REQUIRE((c >= 1.0 && c <= 5.0));
        }
        try {
            const double m = metrics::mtr(v);
            REQUIRE((m >= 0.0 && m <= 100.0));
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::EmptySlice);
        }
        try {
            const double c = metrics::crs(v);
            REQUIRE((c >= 0.0 && c <= 100.0));
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::EmptySlice);
        }
        REQUIRE(metrics::operational_cost(v, cost) >= Money{});
    }
}

TEST_CASE("roi is 100 (bie - 1)") {
    std::mt19937_64 g(32);
    std::uniform_int_distribution<std::int64_t> value(0, 50'000'000'000'000LL);
    std::uniform_int_distribution<std::int64_t> cost(1, 5'000'000'000'000LL);
    for (int trial = 0; trial < 5000; ++trial) {
        const Money v = Money::from_nanos(value(g));
        const Money c = Money::from_nanos(cost(g));
        const double r = metrics::roi(v, c);
        const double b = metrics::bie(v, c);
        REQUIRE_THAT(r, WithinAbs(100.0 * (b - 1.0), 1e-9 * std::max(1.0, std::abs(r))));
    }
}

TEST_CASE("tdi normalization is strictly increasing and keeps the argmax") {
    std::mt19937_64 g(33);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> raw(4);
        for (auto& x : raw) x = u(g);
        std::vector<double> norm;
        for (double x : raw) norm.push_back(metrics::tdi_normalize(x));
        REQUIRE(std::max_element(raw.begin(), raw.end()) - raw.begin() ==
                std::max_element(norm.begin(), norm.end()) - norm.begin());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            for (std::size_t j = 0; j < raw.size(); ++j) {
                if (raw[i] < raw[j]) REQUIRE(norm[i] < norm[j]);
            }
        }
        // Inverse exists: 2n - 1 recovers the raw score.
        REQUIRE_THAT(2.0 * norm[0] - 1.0, WithinAbs(raw[0], 1e-15));
    }
}

TEST_CASE("gcr, oas and cqi are permutation invariant and match a direct fold") {
    std::mt19937_64 g(34);
    std::uniform_int_distribution<int> score10(1, 10);
    std::uniform_int_distribution<int> score5(1, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        auto v = testing::random_records(g, 1 + trial % 20);
        int wins = 0;
        for (const auto& r : v) wins += r.success ? 1 : 0;
        const double expect_gcr = 100.0 * wins / static_cast<double>(v.size());
        REQUIRE_THAT(metrics::gcr(v), WithinAbs(expect_gcr, 1e-12));
        std::shuffle(v.begin(), v.end(), g);
        REQUIRE_THAT(metrics::gcr(v), WithinAbs(expect_gcr, 1e-12));

        std::vector<double> scores(1 + trial % 15);
        long total = 0;
        for (auto& s : scores) {
            s = score10(g);
            total += static_cast<long>(s);
        }
        const double expect_oas = static_cast<double>(total) / static_cast<double>(scores.size());
        REQUIRE_THAT(metrics::oas(scores), WithinAbs(expect_oas, 1e-12));
        std::shuffle(scores.begin(), scores.end(), g);
        REQUIRE_THAT(metrics::oas(scores), WithinAbs(expect_oas, 1e-12));

        std::vector<CollabScores> sessions(1 + trial % 6);
        long ctotal = 0;
        for (auto& s : sessions) {
            s = {score5(g), score5(g), score5(g), score5(g), score5(g)};
            for (int x : s.values()) ctotal += x;
        }
        const double expect_cqi = static_cast<double>(ctotal) / static_cast<double>(5 * sessions.size());
        REQUIRE_THAT(metrics::cqi(sessions), WithinAbs(expect_cqi, 1e-12));
        std::shuffle(sessions.begin(), sessions.end(), g);
        REQUIRE_THAT(metrics::cqi(sessions), WithinAbs(expect_cqi, 1e-12));
    }
}

TEST_CASE("aix_weighted with uniform weights equals the per-task mean") {
    std::mt19937_64 g(35);
    std::uniform_real_distribution<double> w(0.1, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto v = testing::random_records(g, 1 + trial % 30);
        const double c = w(g);
        const ComplexityWeights uniform{c, c, c};
        REQUIRE_THAT(metrics::aix_weighted(v, uniform), WithinAbs(metrics::aix_mean(v), 1e-12));
    }
}

TEST_CASE("ces is monotone in resources and in free successes") {
    std::mt19937_64 g(36);
    std::uniform_int_distribution<std::int64_t> extra(1, 5000);
    const CostModel cost;
    for (int trial = 0; trial < 1000; ++trial) {
        auto v = testing::random_records(g, 1 + trial % 20);
        v[0].success = true;
        const double base = metrics::ces(v, cost);

        auto more = v;
        more[0].tokens += extra(g);
        REQUIRE(metrics::ces(more, cost) >= base);

        auto freebie = v;
        auto zero = testing::basic_record("free", true);
        freebie.push_back(zero);
        REQUIRE(metrics::ces(freebie, cost) <= base);
    }
}

TEST_CASE("every record counted as resilient has error, recovery and success") {
    std::mt19937_64 g(37);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto v = testing::random_records(g, 10);
        for (const auto& r : v) {
            if (!metrics::is_resilient(r)) continue;
            REQUIRE(r.chain.had_initial_error);
            REQUIRE(r.chain.self_recovered);
            REQUIRE(r.success);
        }
    }
}

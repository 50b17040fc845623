#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "agentmetrics/error.hpp"
#include "agentmetrics/task_csv.hpp"
#include "test_support.hpp"

using namespace agentmetrics;

namespace {

std::string to_csv(const std::vector<TaskRecord>& records) {
    std::ostringstream out;
    write_task_csv(out, records);
    return out.str();
}

std::vector<TaskRecord> from_csv(const std::string& text) {
    std::istringstream in(text);
    return read_task_csv(in, "mem");
}

std::string error_of(const std::string& text) {
    try {
        from_csv(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("task csv round trip is field for field") {
    std::mt19937_64 g(21);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto records = testing::random_records(g, 3);
        const auto back = from_csv(to_csv(records));
        REQUIRE(back == records);
    }
}

TEST_CASE("task csv header is stable") {
    const auto& h = task_csv_header();
    CHECK(h.front() == "task_id");
    CHECK(h.back() == "tool_outcomes");
    CHECK(h.size() == 41);
}

TEST_CASE("files without tool_outcomes rebuild a canonical event list") {
    auto r = testing::basic_record();
    r.tool_events = {ToolEvent{ToolOutcome::OptimalUse}, ToolEvent{ToolOutcome::Misuse},
                     ToolEvent{ToolOutcome::IgnoredBetterTool}, ToolEvent{ToolOutcome::OptimalUse}};
    std::string text = to_csv({r});
    // Drop the last column from header and row.
    std::string stripped;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) stripped += line.substr(0, line.rfind(',')) + "\n";
    const auto back = from_csv(stripped);
    REQUIRE(back.size() == 1);
    double sum = 0.0;
    for (const auto& e : back[0].tool_events) sum += e.score();
    CHECK(back[0].tool_events.size() == 4);
    CHECK(sum == 0.5);
}

TEST_CASE("canonical tool events hit the requested sum") {
    for (std::int64_t n = 0; n <= 12; ++n) {
        for (std::int64_t halves = -2 * n; halves <= 2 * n; ++halves) {
            const double target = static_cast<double>(halves) / 2.0;
            std::vector<ToolEvent> events;
            try {
                events = canonical_tool_events(n, target);
            } catch (const Error&) {
                continue;  // some sums are not reachable
            }
            double sum = 0.0;
            for (const auto& e : events) sum += e.score();
            REQUIRE(static_cast<std::int64_t>(events.size()) == n);
            REQUIRE(sum == target);
        }
    }
    CHECK_THROWS_AS(canonical_tool_events(2, 0.3), Error);
    CHECK_THROWS_AS(canonical_tool_events(1, 2.0), Error);
}

TEST_CASE("schema errors name the row and column") {
    auto r = testing::basic_record();
    std::string text = to_csv({r, r});
    const auto second = text.find('\n', text.find('\n') + 1) + 1;
    SECTION("bad integer") {
        std::string bad = text;
        const auto pos = bad.find(",1,1,0,0,0,", second);  // success,total_steps,iv...
        bad.replace(pos, 11, ",1,x,0,0,0,");
        const auto msg = error_of(bad);
        CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("row 2"));
        CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("total_steps"));
    }
    SECTION("missing column") {
        std::string bad = text;
        bad.replace(bad.find("tokens"), 6, "tokenz");
        CHECK_THAT(error_of(bad), Catch::Matchers::ContainsSubstring("tokens"));
    }
    SECTION("invariant violation") {
        std::string bad = text;
        const auto pos = bad.find(",1,0,0,0,", second);
        bad.replace(pos, 9, ",1,1,1,1,");  // three interventions on one step
        const auto msg = error_of(bad);
        CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("row 2"));
        CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("intervention bound"));
    }
}

TEST_CASE("unknown labels are kept verbatim") {
    auto r = testing::basic_record();
    r.agent = AgentId("Planner-X");
    r.domain = DomainId("Logistics");
    const auto back = from_csv(to_csv({r}));
    CHECK(back[0].agent.str() == "Planner-X");
    CHECK(back[0].domain.str() == "Logistics");
}

TEST_CASE("reading a missing file is an I/O error") {
    try {
        read_task_csv_file("/nonexistent/path/tasks.csv");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IoError);
    }
}

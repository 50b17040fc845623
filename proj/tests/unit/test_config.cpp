#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "agentmetrics/config.hpp"
#include "agentmetrics/error.hpp"
#include "agentmetrics/simulator.hpp"

using namespace agentmetrics;
using Catch::Matchers::ContainsSubstring;

namespace {

Error config_error(const std::string& text) {
    try {
        (void)parse_config(text, "test.json");
    } catch (const Error& e) {
        return e;
    }
    FAIL("config was accepted");
    return Error(ErrorKind::InvalidInput, "");
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

const char* kMinimal = R"({
  // one agent, one domain
  "seed": 7,
  "mode": "profile",
  "agents": [{"id": "ReAct",
    "gcr": {"mean": 0.8, "std": 0.05}, "aix": {"mean": 0.85, "std": 0.1},
    "dtt": {"mean": 180, "std": 36}, "ces": {"mean": 2200, "std": 330},
    "mtr": {"mean": 0.24}, "tdi": {"mean": 0.15}, "oas": {"mean": 7.8, "std": 0.8},
    "crs": {"mean": 0.63}, "cqi": {"mean": 3.9, "std": 0.7}, "ad": {"mean": 0.2}}],
  /* money stays a decimal string */
  "domains": [{"id": "Finance", "task_count": 12, "kpi_unit": "percentage_points",
               "kpi_conversion": "1000", "kpi_per_success": 0.1}]
})";

}  // namespace

TEST_CASE("dump and parse round trip") {
    const auto c = SimConfig::defaults();
    const auto text = dump_config(c);
    CHECK(parse_config(text) == c);
    CHECK(dump_config(parse_config(text)) == text);

    auto other = c;
    other.seed = 123456789012345ULL;
    other.mode = SimMode::Profile;
    other.cost_model.token_price = Money::parse("0.000015");
    CHECK(parse_config(dump_config(other)) == other);
}

TEST_CASE("minimal config with comments") {
    const auto c = parse_config(kMinimal);
    CHECK(c.seed == 7);
    CHECK(c.mode == SimMode::Profile);
    REQUIRE(c.agents.size() == 1);
    REQUIRE(c.domains.size() == 1);
    CHECK(c.domains[0].first == domains::Finance);
    CHECK(c.domains[0].second.kpi_conversion == Money::parse("1000"));
    CHECK(c.domains[0].second.kpi_unit == KpiUnit::PercentagePoints);
    CHECK(c.cost_model == CostModel{});
    CHECK(generate(c).size() == 12);
}

TEST_CASE("unknown keys and bad values are rejected with a path") {
    const std::string base = kMinimal;
    auto e = config_error(replace_once(base, "\"seed\"", "\"sede\": 1, \"seed\""));
    CHECK(e.kind() == ErrorKind::ConfigError);
    CHECK_THAT(std::string(e.what()), ContainsSubstring("sede"));
    CHECK_THAT(std::string(e.what()), ContainsSubstring("test.json"));

    e = config_error(replace_once(base, "\"task_count\": 12", "\"task_count\": 0"));
    CHECK_THAT(std::string(e.what()), ContainsSubstring("task_count"));

    e = config_error(replace_once(base, "\"profile\"", "\"fancy\""));
    CHECK_THAT(std::string(e.what()), ContainsSubstring("fancy"));

    e = config_error(replace_once(base, "\"seed\": 7", "\"seed\": -7"));
    CHECK_THAT(std::string(e.what()), ContainsSubstring("seed"));

    e = config_error(replace_once(base, "\"mean\": 180", "\"mean\": \"180\""));
    CHECK_THAT(std::string(e.what()), ContainsSubstring("agents[0].dtt"));

    e = config_error(replace_once(base, "\"1000\"", "\"ten\""));
    CHECK_THAT(std::string(e.what()), ContainsSubstring("kpi_conversion"));

    CHECK(config_error("{ not json").kind() == ErrorKind::ConfigError);
    CHECK(config_error("{}").kind() == ErrorKind::ConfigError);
}

TEST_CASE("config and cost model files") {
    const auto dir = std::filesystem::temp_directory_path() / "agentmetrics_test_config";
    std::filesystem::create_directories(dir);
    const auto path = dir / "c.json";
    std::ofstream(path) << kMinimal;
    CHECK(load_config(path).seed == 7);
    CHECK_THROWS_AS(load_config(dir / "missing.json"), Error);

    const auto cost = parse_cost_model(R"({"token_price": "0.00001", "token_equivalent": 500})");
    CHECK(cost.token_price == Money::parse("0.00001"));
    CHECK(cost.token_equivalent == 500.0);
    CHECK(cost.api_call_price == CostModel{}.api_call_price);
    CHECK(parse_cost_model(dump_config(SimConfig::defaults())) == SimConfig::defaults().cost_model);
    std::filesystem::remove_all(dir);
}

#include "agentmetrics/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "agentmetrics/error.hpp"

namespace agentmetrics {

namespace {

using nlohmann::json;

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void bad(const std::string& path, const std::string& what) const {
        fail(ErrorKind::ConfigError, source_ + ": " + (path.empty() ? "" : path + ": ") + what);
    }

    const json& object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) const {
        if (!j.is_object()) bad(path, "expected an object");
        const std::set<std::string> keys(allowed.begin(), allowed.end());
        for (const auto& [key, value] : j.items()) {
            if (!keys.count(key)) bad(path, "unknown key '" + key + "'");
        }
        return j;
    }

    const json& array(const json& j, const std::string& path) const {
        if (!j.is_array()) bad(path, "expected an array");
        return j;
    }

    double number(const json& j, const std::string& path) const {
        if (!j.is_number()) bad(path, "expected a number");
        return j.get<double>();
    }

    void number(const json& parent, const char* key, const std::string& path, double& out) const {
        if (parent.contains(key)) out = number(parent.at(key), path + "." + key);
    }

    std::int64_t integer(const json& j, const std::string& path) const {
        if (!j.is_number_integer()) bad(path, "expected an integer");
        return j.get<std::int64_t>();
    }

    std::string string(const json& j, const std::string& path) const {
        if (!j.is_string()) bad(path, "expected a string");
        return j.get<std::string>();
    }

    Money money(const json& j, const std::string& path) const {
        // Strings keep the decimal exact; bare numbers are tolerated.
        try {
            if (j.is_string()) return Money::parse(j.get<std::string>());
            if (j.is_number()) return Money::from_dollars(j.get<double>());
        } catch (const Error& e) {
            bad(path, e.what());
        }
        bad(path, "expected a decimal string");
    }

    void money(const json& parent, const char* key, const std::string& path, Money& out) const {
        if (parent.contains(key)) out = money(parent.at(key), path + "." + key);
    }

    MeanStd mean_std(const json& j, const std::string& path) const {
        object(j, path, {"mean", "std"});
        if (!j.contains("mean")) bad(path, "missing 'mean'");
        MeanStd m;
        m.mean = number(j.at("mean"), path + ".mean");
        number(j, "std", path, m.std);
        return m;
    }

    CostModel cost_model(const json& j, const std::string& path) const {
        object(j, path, {"token_price", "api_call_price", "intervention_price", "token_equivalent"});
        CostModel c;
        money(j, "token_price", path, c.token_price);
        money(j, "api_call_price", path, c.api_call_price);
        money(j, "intervention_price", path, c.intervention_price);
        number(j, "token_equivalent", path, c.token_equivalent);
        return c;
    }

    AgentProfile profile(const json& j, const std::string& path) const {
        object(j, path, {"id", "gcr", "aix", "dtt", "ces", "mtr", "tdi", "oas", "crs", "cqi", "ad"});
        AgentProfile p;
        const std::pair<const char*, MeanStd*> fields[] = {{"gcr", &p.gcr}, {"aix", &p.aix}, {"dtt", &p.dtt},
                                                           {"ces", &p.ces}, {"mtr", &p.mtr}, {"tdi", &p.tdi},
                                                           {"oas", &p.oas}, {"crs", &p.crs}, {"cqi", &p.cqi},
                                                           {"ad", &p.ad}};
        for (const auto& [key, field] : fields) {
            if (!j.contains(key)) bad(path, std::string("missing '") + key + "'");
            *field = mean_std(j.at(key), path + "." + key);
        }
        return p;
    }

    DomainConfig domain(const json& j, const std::string& path) const {
        object(j, path, {"id", "task_count", "modifiers", "kpi_unit", "kpi_conversion", "kpi_per_success"});
        DomainConfig d;
        if (!j.contains("task_count")) bad(path, "missing 'task_count'");
        d.task_count = integer(j.at("task_count"), path + ".task_count");
        if (j.contains("modifiers")) {
            const std::string mp = path + ".modifiers";
            const json& m = object(j.at("modifiers"), mp,
                                   {"gcr", "aix", "dtt", "ces", "mtr", "tdi", "oas", "crs", "cqi", "ad"});
            auto& mod = d.modifiers;
            number(m, "gcr", mp, mod.gcr);
            number(m, "aix", mp, mod.aix);
            number(m, "dtt", mp, mod.dtt);
            number(m, "ces", mp, mod.ces);
            number(m, "mtr", mp, mod.mtr);
            number(m, "tdi", mp, mod.tdi);
            number(m, "oas", mp, mod.oas);
            number(m, "crs", mp, mod.crs);
            number(m, "cqi", mp, mod.cqi);
            number(m, "ad", mp, mod.ad);
        }
        if (j.contains("kpi_unit")) {
            const auto text = string(j.at("kpi_unit"), path + ".kpi_unit");
            const auto unit = parse_kpi_unit(text);
            if (!unit) bad(path + ".kpi_unit", "unknown unit '" + text + "'");
            d.kpi_unit = *unit;
        }
        money(j, "kpi_conversion", path, d.kpi_conversion);
        number(j, "kpi_per_success", path, d.kpi_per_success);
        return d;
    }

    template <class Id>
    Id id(const json& j, const std::string& path, Id (*parse)(std::string_view)) const {
        if (!j.contains("id")) bad(path, "missing 'id'");
        const Id value = parse(string(j.at("id"), path + ".id"));
        if (value.empty()) bad(path + ".id", "must not be empty");
        return value;
    }

    Calibration calibration(const json& j, const std::string& path) const {
        object(j, path, {"dispersion", "agents", "cells"});
        Calibration c;
        if (j.contains("dispersion")) {
            const std::string dp = path + ".dispersion";
            const json& d = object(j.at("dispersion"), dp, {"aix_std", "dtt_cv", "ces_cv", "oas_std", "cqi_std"});
            number(d, "aix_std", dp, c.dispersion.aix_std);
            number(d, "dtt_cv", dp, c.dispersion.dtt_cv);
            number(d, "ces_cv", dp, c.dispersion.ces_cv);
            number(d, "oas_std", dp, c.dispersion.oas_std);
            number(d, "cqi_std", dp, c.dispersion.cqi_std);
        }
        if (j.contains("agents")) {
            const auto& arr = array(j.at("agents"), path + ".agents");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string ap = path + ".agents[" + std::to_string(i) + "]";
                const json& a = object(arr[i], ap, {"id", "ces", "mtr", "tdi_norm", "crs", "cqi"});
                CalibrationAgent row;
                row.agent = id<AgentId>(a, ap, parse_agent);
                for (const char* key : {"ces", "mtr", "tdi_norm", "crs", "cqi"}) {
                    if (!a.contains(key)) bad(ap, std::string("missing '") + key + "'");
                }
                row.ces = number(a.at("ces"), ap + ".ces");
                row.mtr = number(a.at("mtr"), ap + ".mtr");
                row.tdi_norm = number(a.at("tdi_norm"), ap + ".tdi_norm");
                row.crs = number(a.at("crs"), ap + ".crs");
                row.cqi = number(a.at("cqi"), ap + ".cqi");
                c.agents.push_back(row);
            }
        }
        if (j.contains("cells")) {
            const auto& arr = array(j.at("cells"), path + ".cells");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string cp = path + ".cells[" + std::to_string(i) + "]";
                const json& e = object(arr[i], cp,
                                       {"agent", "domain", "tasks", "gcr", "aix", "dtt", "oas", "kpi_value", "op_cost",
                                        "zero_shot", "few_shot"});
                for (const char* key : {"agent", "domain", "tasks", "gcr", "aix", "dtt", "oas", "kpi_value",
                                        "zero_shot", "few_shot"}) {
                    if (!e.contains(key)) bad(cp, std::string("missing '") + key + "'");
                }
                CalibrationCell cell;
                cell.agent = parse_agent(string(e.at("agent"), cp + ".agent"));
                cell.domain = parse_domain(string(e.at("domain"), cp + ".domain"));
                cell.tasks = integer(e.at("tasks"), cp + ".tasks");
                cell.gcr = number(e.at("gcr"), cp + ".gcr");
                cell.aix = number(e.at("aix"), cp + ".aix");
                cell.dtt = number(e.at("dtt"), cp + ".dtt");
                cell.oas = number(e.at("oas"), cp + ".oas");
                cell.kpi_value = number(e.at("kpi_value"), cp + ".kpi_value");
                number(e, "op_cost", cp, cell.op_cost);
                cell.zero_shot = number(e.at("zero_shot"), cp + ".zero_shot");
                cell.few_shot = number(e.at("few_shot"), cp + ".few_shot");
                c.cells.push_back(cell);
            }
        }
        return c;
    }

    SimConfig config(const json& j) const {
        object(j, "", {"seed", "mode", "agents", "domains", "cost_model", "complexity_weights", "step_mix",
                       "calibration"});
        SimConfig c;
        c.agents.clear();
        c.domains.clear();
        if (j.contains("seed")) {
            const json& s = j.at("seed");
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
                bad("seed", "expected a non-negative integer");
            }
            c.seed = s.get<std::uint64_t>();
        }
        if (j.contains("mode")) {
            const auto text = string(j.at("mode"), "mode");
            const auto mode = parse_sim_mode(text);
            if (!mode) bad("mode", "unknown mode '" + text + "'");
            c.mode = *mode;
        }
        if (!j.contains("agents")) bad("", "missing 'agents'");
        if (!j.contains("domains")) bad("", "missing 'domains'");
        const auto& agents = array(j.at("agents"), "agents");
        for (std::size_t i = 0; i < agents.size(); ++i) {
            const std::string path = "agents[" + std::to_string(i) + "]";
            c.agents.emplace_back(id<AgentId>(agents[i], path, parse_agent), profile(agents[i], path));
        }
        const auto& domains = array(j.at("domains"), "domains");
        for (std::size_t i = 0; i < domains.size(); ++i) {
            const std::string path = "domains[" + std::to_string(i) + "]";
            c.domains.emplace_back(id<DomainId>(domains[i], path, parse_domain), domain(domains[i], path));
        }
        if (j.contains("cost_model")) c.cost_model = cost_model(j.at("cost_model"), "cost_model");
        if (j.contains("complexity_weights")) {
            const json& w = object(j.at("complexity_weights"), "complexity_weights", {"simple", "medium", "complex"});
            number(w, "simple", "complexity_weights", c.complexity_weights.simple);
            number(w, "medium", "complexity_weights", c.complexity_weights.medium);
            number(w, "complex", "complexity_weights", c.complexity_weights.complex);
        }
        if (j.contains("step_mix")) {
            const json& m = object(j.at("step_mix"), "step_mix", {"simple", "medium", "complex", "complex_max"});
            number(m, "simple", "step_mix", c.step_mix.simple);
            number(m, "medium", "step_mix", c.step_mix.medium);
            number(m, "complex", "step_mix", c.step_mix.complex);
            if (m.contains("complex_max")) c.step_mix.complex_max = integer(m.at("complex_max"), "step_mix.complex_max");
        }
        if (j.contains("calibration")) c.calibration = calibration(j.at("calibration"), "calibration");
        const auto problems = c.problems();
        if (!problems.empty()) bad("", problems.front());
        return c;
    }

private:
    std::string source_;
};

json parse_json(std::string_view text, const std::string& source) {
    try {
        return json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ConfigError, source + ": " + e.what());
    }
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ConfigError, path.string() + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json ms(const MeanStd& m) { return json{{"mean", m.mean}, {"std", m.std}}; }

json cost_json(const CostModel& c) {
    return json{{"token_price", c.token_price.to_decimal_string()},
                {"api_call_price", c.api_call_price.to_decimal_string()},
                {"intervention_price", c.intervention_price.to_decimal_string()},
                {"token_equivalent", c.token_equivalent}};
}

}  // namespace

SimConfig parse_config(std::string_view text, const std::string& source) {
    return Reader(source).config(parse_json(text, source));
}

SimConfig load_config(const std::filesystem::path& path) { return parse_config(slurp(path), path.string()); }

std::string dump_config(const SimConfig& c) {
    json j = json::object();
    j["seed"] = c.seed;
    j["mode"] = std::string(to_string(c.mode));
    json agents = json::array();
    for (const auto& [id, p] : c.agents) {
        agents.push_back(json{{"id", id.str()},
                              {"gcr", ms(p.gcr)},
                              {"aix", ms(p.aix)},
                              {"dtt", ms(p.dtt)},
                              {"ces", ms(p.ces)},
                              {"mtr", ms(p.mtr)},
                              {"tdi", ms(p.tdi)},
                              {"oas", ms(p.oas)},
                              {"crs", ms(p.crs)},
                              {"cqi", ms(p.cqi)},
                              {"ad", ms(p.ad)}});
    }
    j["agents"] = agents;
    json domains = json::array();
    for (const auto& [id, d] : c.domains) {
        const auto& m = d.modifiers;
        domains.push_back(json{{"id", id.str()},
                               {"task_count", d.task_count},
                               {"modifiers",
                                {{"gcr", m.gcr},
                                 {"aix", m.aix},
                                 {"dtt", m.dtt},
                                 {"ces", m.ces},
                                 {"mtr", m.mtr},
                                 {"tdi", m.tdi},
                                 {"oas", m.oas},
                                 {"crs", m.crs},
                                 {"cqi", m.cqi},
                                 {"ad", m.ad}}},
                               {"kpi_unit", std::string(to_string(d.kpi_unit))},
                               {"kpi_conversion", d.kpi_conversion.to_decimal_string()},
                               {"kpi_per_success", d.kpi_per_success}});
    }
    j["domains"] = domains;
    j["cost_model"] = cost_json(c.cost_model);
    j["complexity_weights"] = json{{"simple", c.complexity_weights.simple},
                                   {"medium", c.complexity_weights.medium},
                                   {"complex", c.complexity_weights.complex}};
    j["step_mix"] = json{{"simple", c.step_mix.simple},
                         {"medium", c.step_mix.medium},
                         {"complex", c.step_mix.complex},
                         {"complex_max", c.step_mix.complex_max}};
    const auto& d = c.calibration.dispersion;
    json cal = json::object();
    cal["dispersion"] = json{{"aix_std", d.aix_std},
                             {"dtt_cv", d.dtt_cv},
                             {"ces_cv", d.ces_cv},
                             {"oas_std", d.oas_std},
                             {"cqi_std", d.cqi_std}};
    json cal_agents = json::array();
    for (const auto& a : c.calibration.agents) {
        cal_agents.push_back(json{{"id", a.agent.str()},
                                  {"ces", a.ces},
                                  {"mtr", a.mtr},
                                  {"tdi_norm", a.tdi_norm},
                                  {"crs", a.crs},
                                  {"cqi", a.cqi}});
    }
    cal["agents"] = cal_agents;
    json cells = json::array();
    for (const auto& e : c.calibration.cells) {
        cells.push_back(json{{"agent", e.agent.str()},
                             {"domain", e.domain.str()},
                             {"tasks", e.tasks},
                             {"gcr", e.gcr},
                             {"aix", e.aix},
                             {"dtt", e.dtt},
                             {"oas", e.oas},
                             {"kpi_value", e.kpi_value},
                             {"op_cost", e.op_cost},
                             {"zero_shot", e.zero_shot},
                             {"few_shot", e.few_shot}});
    }
    cal["cells"] = cells;
    j["calibration"] = cal;
    return j.dump(2) + "\n";
}

CostModel parse_cost_model(std::string_view text, const std::string& source) {
    const json j = parse_json(text, source);
    Reader reader(source);
    const bool nested = j.is_object() && j.contains("cost_model");
    CostModel c = nested ? reader.cost_model(j.at("cost_model"), "cost_model") : reader.cost_model(j, "");
    const auto problems = c.problems();
    if (!problems.empty()) reader.bad("", problems.front());
    return c;
}

CostModel load_cost_model(const std::filesystem::path& path) {
    return parse_cost_model(slurp(path), path.string());
}

}  // namespace agentmetrics

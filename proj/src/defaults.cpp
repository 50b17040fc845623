#include "agentmetrics/simulator.hpp"

namespace agentmetrics {

namespace {

// Only ReAct's base parameters are published; the other agents' bases are
// back-solved so that the task-weighted domain modifiers land on each
// agent's published overall GCR, AIx, DTT and CES.
AgentProfile profile(double gcr, double aix, double aix_std, double dtt, double ces, double mtr, double tdi_norm,
                     double oas, double crs, double cqi, double ad) {
    AgentProfile p;
    p.gcr = {gcr, 0.08};
    p.aix = {aix, aix_std};
    p.dtt = {dtt, 0.25 * dtt};
    p.ces = {ces, 0.18 * ces};
    p.mtr = {mtr, 0.05};
    p.tdi = {2.0 * tdi_norm - 1.0, 0.1};
    p.oas = {oas, 0.8};
    p.crs = {crs, 0.05};
    p.cqi = {cqi, 0.7};
    p.ad = {ad, 0.03};
    return p;
}

DomainConfig domain(std::int64_t tasks, double gcr, double aix, double dtt, double ces, KpiUnit unit,
                    const char* conversion, double kpi_per_success) {
    DomainConfig d;
    d.task_count = tasks;
    d.modifiers.gcr = gcr;
    d.modifiers.aix = aix;
    d.modifiers.dtt = dtt;
    d.modifiers.ces = ces;
    d.kpi_unit = unit;
    d.kpi_conversion = Money::parse(conversion);
    d.kpi_per_success = kpi_per_success;
    return d;
}

struct CellRow {
    const AgentId* agent;
    const DomainId* domain;
    double gcr, aix, dtt, oas;
    double kpi, op_cost;
    double zero, few;
};

std::int64_t tasks_for(const DomainId& d) {
    if (d == domains::Healthcare) return 200;
    if (d == domains::Finance) return 150;
    if (d == domains::Marketing) return 100;
    if (d == domains::Legal) return 120;
    return 180;
}

}  // namespace

SimConfig SimConfig::defaults() {
    SimConfig c;
    c.seed = 42;
    c.mode = SimMode::Calibrated;

    c.agents = {
        {agents::ReAct, profile(0.82, 0.85, 0.10, 180.0, 2200.0, 0.2373, 0.5764, 7.76, 0.6333, 3.85, 0.22)},
        {agents::CoT, profile(0.8348, 0.9419, 0.05, 208.95, 2796.0, 0.2333, 0.5441, 8.18, 0.6880, 4.12, 0.24)},
        {agents::ToolAugmented,
         profile(0.8682, 0.8891, 0.05, 162.87, 1981.8, 0.2747, 0.6899, 8.11, 0.6840, 3.84, 0.17)},
        {agents::Hybrid, profile(0.9055, 0.9631, 0.05, 155.13, 2139.4, 0.2880, 0.6440, 8.58, 0.7733, 4.28, 0.254)},
    };
    // ReAct's published dtt and ces spreads.
    c.agents[0].second.dtt.std = 45.0;
    c.agents[0].second.ces.std = 400.0;

    c.domains = {
        {domains::Healthcare, domain(200, -0.03, -0.05, 1.15, 1.20, KpiUnit::Dollars, "1", 78.0)},
        {domains::Finance, domain(150, -0.05, -0.08, 1.25, 1.30, KpiUnit::PercentagePoints, "1000", 0.12)},
        {domains::Marketing, domain(100, 0.04, 0.02, 0.85, 0.90, KpiUnit::PercentagePoints, "800", 0.12)},
        {domains::Legal, domain(120, -0.06, -0.10, 1.35, 1.40, KpiUnit::Hours, "150", 0.375)},
        {domains::CustomerService,
         domain(180, 0.02, 0.03, 0.95, 0.95, KpiUnit::PercentagePoints, "500", 0.124)},
    };

    using namespace agents;
    using namespace domains;
    const CellRow rows[] = {
        {&ReAct, &Healthcare, 78.0, 0.8831, 206.08, 7.84, 12240, 392.40, 0.62, 0.84},
        {&ReAct, &Finance, 76.67, 0.8572, 228.71, 7.77, 14.40, 363.79, 0.58, 0.80},
        {&ReAct, &Marketing, 87.0, 0.9328, 147.49, 7.89, 10.44, 217.31, 0.70, 0.92},
        {&ReAct, &Legal, 73.33, 0.8301, 243.04, 7.50, 33.00, 395.31, 0.54, 0.76},
        {&ReAct, &CustomerService, 82.78, 0.9400, 174.54, 7.75, 18.48, 282.00, 0.66, 0.88},
        {&CoT, &Healthcare, 84.0, 0.9043, 236.28, 8.17, 13104, 438.01, 0.66, 0.90},
        {&CoT, &Finance, 70.0, 0.8862, 264.20, 8.23, 12.60, 421.80, 0.62, 0.86},
        {&CoT, &Marketing, 88.0, 0.9398, 173.32, 8.17, 10.56, 216.20, 0.74, 0.98},
        {&CoT, &Legal, 81.67, 0.8310, 287.74, 8.14, 36.60, 465.94, 0.58, 0.82},
        {&CoT, &CustomerService, 85.56, 0.9571, 199.04, 8.19, 19.14, 290.62, 0.70, 0.94},
        {&ToolAugmented, &Healthcare, 82.0, 0.8446, 184.94, 8.13, 12792, 358.79, 0.67, 0.84},
        {&ToolAugmented, &Finance, 85.33, 0.8193, 198.28, 8.10, 15.36, 343.01, 0.63, 0.80},
        {&ToolAugmented, &Marketing, 89.0, 0.9122, 141.92, 7.86, 10.68, 187.87, 0.75, 0.92},
        {&ToolAugmented, &Legal, 78.33, 0.8087, 221.38, 8.18, 35.10, 363.85, 0.59, 0.76},
        {&ToolAugmented, &CustomerService, 90.56, 0.8897, 158.85, 8.20, 20.28, 252.64, 0.71, 0.88},
        {&Hybrid, &Healthcare, 88.0, 0.9263, 171.90, 8.54, 13728, 388.24, 0.71, 0.98},
        {&Hybrid, &Finance, 84.0, 0.8897, 195.67, 8.62, 15.12, 367.41, 0.67, 0.94},
        {&Hybrid, &Marketing, 93.0, 0.9652, 142.62, 8.45, 11.16, 189.90, 0.79, 1.00},
        {&Hybrid, &Legal, 87.5, 0.8801, 207.12, 8.57, 39.38, 393.88, 0.63, 0.90},
        {&Hybrid, &CustomerService, 92.22, 0.9715, 148.68, 8.68, 20.64, 255.15, 0.75, 1.00},
    };
    for (const auto& r : rows) {
        c.calibration.cells.push_back(CalibrationCell{*r.agent, *r.domain, tasks_for(*r.domain), r.gcr, r.aix, r.dtt,
                                                      r.oas, r.kpi, r.op_cost, r.zero, r.few});
    }
    c.calibration.agents = {
        {ReAct, 2587.92, 23.73, 0.5764, 63.33, 3.85},
        {CoT, 3221.02, 23.33, 0.5441, 68.80, 4.12},
        {ToolAugmented, 2283.03, 27.47, 0.6899, 68.40, 3.84},
        {Hybrid, 2464.64, 28.80, 0.6440, 77.33, 4.28},
    };
    return c;
}

}  // namespace agentmetrics

// scenario.hpp -- end-to-end experiment orchestration: each scenario runs a
// desk-scale study and writes report.json plus gnuplot-ready CSV tables.
#pragma once

#include "homoscope/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace homoscope {

struct ScenarioConfig {
    std::string scenario;  // extremal_report | exact_occupancy | kdd_sweep | union_kdd |
                           // random_regular_demo | percolation_sweep | bound_corpus
    ModelInstance model;
    std::map<std::string, std::string> params;
    RandomSeed seed;
    std::string out_dir;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<std::string> lines;  // human-readable summary, also printed by the CLI
    bool verdict_ok = true;          // false when a theorem-backed bound failed (exit 2)
    double wall_seconds = 0.0;
    std::string report_path;         // out_dir/report.json
};

ScenarioReport run_scenario(const ScenarioConfig& config);

}  // namespace homoscope

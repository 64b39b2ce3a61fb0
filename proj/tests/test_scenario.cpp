#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "homoscope/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace homoscope;
namespace fs = std::filesystem;

namespace {

ModelInstance hard_core_on(BipartiteHostGraph g, const Rational& l = Rational(1)) {
    auto [h, lambda] = hard_core_model(l);
    return {h, lambda, std::move(g)};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScenarioConfig base_config(const std::string& scenario, ModelInstance model,
                           const std::string& dir) {
    fs::remove_all(dir);
    return ScenarioConfig{scenario, std::move(model), {}, RandomSeed{11}, dir};
}

}  // namespace

TEST_CASE("extremal_report writes tables") {
    auto cfg = base_config("extremal_report", hard_core_on(even_cycle(4)), "sc_extremal");
    auto rep = run_scenario(cfg);
    CHECK(rep.verdict_ok);
    CHECK(fs::exists("sc_extremal/report.json"));
    auto csv = slurp("sc_extremal/extremal.csv");
    CHECK(csv.find("1,1/4,1/4") != std::string::npos);
    CHECK(rep.lines.front().find("eta = 2") != std::string::npos);
}

TEST_CASE("exact_occupancy reports the C6 mean") {
    auto cfg = base_config("exact_occupancy", hard_core_on(even_cycle(6)), "sc_occ");
    auto rep = run_scenario(cfg);
    CHECK(rep.verdict_ok);
    bool mentions_mean = false;
    for (const auto& line : rep.lines)
        if (line.find("5/18") != std::string::npos) mentions_mean = true;
    CHECK(mentions_mean);
    CHECK(fs::exists("sc_occ/occupancy_0.csv"));
    CHECK(fs::exists("sc_occ/occupancy_1.csv"));
}

TEST_CASE("kdd_sweep outside mass decreases") {
    auto cfg = base_config("kdd_sweep", hard_core_on(even_cycle(4)), "sc_sweep");
    cfg.params["d"] = "4;8";
    cfg.params["colour"] = "1";
    auto rep = run_scenario(cfg);
    CHECK(rep.verdict_ok);
    CHECK(fs::exists("sc_sweep/kdd_sweep.csv"));
    CHECK(fs::exists("sc_sweep/kdd_sweep.gp"));
    auto text = slurp("sc_sweep/report.json");
    CHECK(text.find("outside_mass") != std::string::npos);
}

TEST_CASE("union_kdd mean equals the component mean") {
    auto cfg = base_config("union_kdd", hard_core_on(even_cycle(4)), "sc_union");
    cfg.params["d"] = "3";
    cfg.params["m"] = "5";
    cfg.params["colour"] = "1";
    auto rep = run_scenario(cfg);
    CHECK(rep.verdict_ok);  // equality enforced inside the scenario
}

TEST_CASE("percolation_sweep runs the full grid on a small instance") {
    auto [h, lambda] = multistate_model(2, Rational(1));
    ModelInstance m{h, lambda, complete_bipartite(1, 1)};
    auto cfg = base_config("percolation_sweep", std::move(m), "sc_perc");
    cfg.params["half_size"] = "4";
    cfg.params["n"] = "3";
    cfg.params["steps"] = "20000";
    auto rep = run_scenario(cfg);
    CHECK(rep.verdict_ok);
    auto csv = slurp("sc_perc/percolation_sweep.csv");
    // Header plus one row per grid point.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("random_regular_demo reports class frequencies") {
    auto cfg = base_config("random_regular_demo", hard_core_on(even_cycle(4)), "sc_demo");
    cfg.params["half_size"] = "8";
    cfg.params["d"] = "3";
    cfg.params["steps"] = "40000";
    auto rep = run_scenario(cfg);
    CHECK(rep.verdict_ok);
    CHECK(fs::exists("sc_demo/demo_histogram.csv"));
    auto text = slurp("sc_demo/report.json");
    CHECK(text.find("class_frequencies") != std::string::npos);
}

TEST_CASE("bound_corpus verdict is clean") {
    auto cfg = base_config("bound_corpus", hard_core_on(even_cycle(4)), "sc_corpus");
    cfg.params["count"] = "25";
    auto rep = run_scenario(cfg);
    CHECK(rep.verdict_ok);
    auto text = slurp("sc_corpus/report.json");
    CHECK(text.find("\"failures\": 0") != std::string::npos);
}

TEST_CASE("scenario outputs are reproducible from the seed") {
    auto cfg1 = base_config("kdd_sweep", hard_core_on(even_cycle(4)), "sc_rep1");
    cfg1.params["d"] = "4;6";
    cfg1.params["colour"] = "1";
    run_scenario(cfg1);
    auto cfg2 = base_config("kdd_sweep", hard_core_on(even_cycle(4)), "sc_rep2");
    cfg2.params["d"] = "4;6";
    cfg2.params["colour"] = "1";
    run_scenario(cfg2);
    CHECK(slurp("sc_rep1/kdd_sweep.csv") == slurp("sc_rep2/kdd_sweep.csv"));
}

TEST_CASE("unknown scenario and missing out dir are rejected") {
    auto cfg = base_config("nope", hard_core_on(even_cycle(4)), "sc_bad");
    CHECK_THROWS(run_scenario(cfg));
    auto empty = base_config("extremal_report", hard_core_on(even_cycle(4)), "");
    CHECK_THROWS(run_scenario(empty));
}

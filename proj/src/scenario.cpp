#include "homoscope/scenario.hpp"

#include "homoscope/bounds.hpp"
#include "homoscope/exact.hpp"
#include "homoscope/extremal.hpp"
#include "homoscope/mcmc.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace homoscope {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string get_param(const ScenarioConfig& cfg, const std::string& key,
                      const std::string& fallback) {
    auto it = cfg.params.find(key);
    return it == cfg.params.end() ? fallback : it->second;
}

int get_int(const ScenarioConfig& cfg, const std::string& key, int fallback) {
    auto it = cfg.params.find(key);
    return it == cfg.params.end() ? fallback : std::stoi(it->second);
}

std::vector<int> get_int_list(const ScenarioConfig& cfg, const std::string& key,
                              const std::string& fallback) {
    std::vector<int> out;
    std::stringstream ss(get_param(cfg, key, fallback));
    std::string tok;
    while (std::getline(ss, tok, ';')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<int> mask_to_list(ColourMask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

std::string mask_to_string(ColourMask m) {
    std::string s = "{";
    for (int c : mask_to_list(m)) {
        if (s.size() > 1) s += ",";
        s += std::to_string(c);
    }
    return s + "}";
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

json rational_entry(const Rational& r) {
    return json{{"exact", rational_to_string(r)}, {"float", to_double(r)}};
}

// CSV for one exact occupancy law, columns per the exact-engine interface.
std::string distribution_csv(const OccupancyDistribution& dist) {
    std::ostringstream csv;
    csv << "count,probability_num,probability_den,probability_float\n";
    for (const auto& [count, p] : dist.mass)
        csv << count << "," << numerator(p) << "," << denominator(p) << "," << to_double(p)
            << "\n";
    return csv.str();
}

json extremal_json(const ConstraintGraph& h, const WeightSystem& lambda,
                   const ExtremalReport& rep) {
    json out;
    out["eta"] = rational_entry(rep.eta);
    out["maximizers"] = json::array();
    for (const auto& p : rep.maximizers)
        out["maximizers"].push_back({{"A", mask_to_list(p.A)},
                                     {"B", mask_to_list(p.B)},
                                     {"product", rational_entry(p.product)}});
    out["colours"] = json::array();
    for (int k = 0; k < h.colour_count(); ++k)
        out["colours"].push_back({{"colour", k},
                                  {"a_minus", rational_entry(rep.a_minus[k])},
                                  {"a_plus", rational_entry(rep.a_plus[k])},
                                  {"lambda", rational_to_string(lambda[k])}});
    return out;
}

Rational mass_outside(const OccupancyDistribution& dist, const Rational& lo,
                      const Rational& hi) {
    Rational outside = 0;
    for (const auto& [count, p] : dist.mass) {
        Rational s(count, dist.host_size);
        if (s < lo || s > hi) outside += p;
    }
    return outside;
}

struct ScenarioContext {
    const ScenarioConfig& cfg;
    json report;
    std::vector<std::string>& lines;
    bool& verdict_ok;

    void say(const std::string& line) { lines.push_back(line); }
};

void scenario_extremal_report(ScenarioContext& ctx) {
    const auto& m = ctx.cfg.model;
    auto rep = extremal_pairs(m.h, m.lambda);
    ctx.report["extremal"] = extremal_json(m.h, m.lambda, rep);
    ctx.report["provenance"] = "exact";
    ctx.say("eta = " + rational_to_string(rep.eta) + " with " +
            std::to_string(rep.maximizers.size()) + " maximizer(s)");
    for (int k = 0; k < m.h.colour_count(); ++k)
        ctx.say("colour " + std::to_string(k) + ": a- = " +
                rational_to_string(rep.a_minus[k]) + ", a+ = " +
                rational_to_string(rep.a_plus[k]));

    std::ostringstream csv;
    csv << "colour,a_minus,a_plus,a_minus_float,a_plus_float\n";
    for (int k = 0; k < m.h.colour_count(); ++k)
        csv << k << "," << rational_to_string(rep.a_minus[k]) << ","
            << rational_to_string(rep.a_plus[k]) << "," << to_double(rep.a_minus[k]) << ","
            << to_double(rep.a_plus[k]) << "\n";
    write_file(fs::path(ctx.cfg.out_dir) / "extremal.csv", csv.str());
}

void scenario_exact_occupancy(ScenarioContext& ctx) {
    const auto& m = ctx.cfg.model;
    auto rep = extremal_pairs(m.h, m.lambda);
    ctx.report["colours"] = json::array();
    for (int k = 0; k < m.h.colour_count(); ++k) {
        auto dist = occupancy_distribution(m.g, m.h, m.lambda, k);
        bool inside = dist.mean_fraction >= rep.a_minus[k] && dist.mean_fraction <= rep.a_plus[k];
        ctx.report["colours"].push_back({{"colour", k},
                                         {"mean_fraction", rational_entry(dist.mean_fraction)},
                                         {"a_minus", rational_entry(rep.a_minus[k])},
                                         {"a_plus", rational_entry(rep.a_plus[k])},
                                         {"mean_inside_bounds", inside},
                                         {"provenance", "exact"}});
        ctx.say("colour " + std::to_string(k) + ": mean " +
                rational_to_string(dist.mean_fraction) + (inside ? " inside" : " outside") +
                " [a-, a+]; finite-size deviation is expected at small degree");
        write_file(fs::path(ctx.cfg.out_dir) / ("occupancy_" + std::to_string(k) + ".csv"),
                   distribution_csv(dist));
    }
}

void scenario_kdd_sweep(ScenarioContext& ctx) {
    const auto& m = ctx.cfg.model;
    int colour = get_int(ctx.cfg, "colour", 0);
    Rational eps = parse_rational(get_param(ctx.cfg, "eps", "3/20"));
    auto d_list = get_int_list(ctx.cfg, "d", "4;8;16;32");
    auto rep = extremal_pairs(m.h, m.lambda);
    Rational lo = rep.a_minus[colour] - eps, hi = rep.a_plus[colour] + eps;

    std::ostringstream csv;
    csv << "d,outside_mass,mean_fraction\n";
    ctx.report["sweep"] = json::array();
    for (int d : d_list) {
        auto dist = kdd_occupancy_distribution(d, m.h, m.lambda, colour);
        Rational outside = mass_outside(dist, lo, hi);
        ctx.report["sweep"].push_back({{"d", d},
                                       {"outside_mass", rational_entry(outside)},
                                       {"mean_fraction", rational_entry(dist.mean_fraction)},
                                       {"provenance", "exact"}});
        ctx.say("d = " + std::to_string(d) + ": mass outside [a- - eps, a+ + eps] = " +
                std::to_string(to_double(outside)));
        csv << d << "," << to_double(outside) << "," << to_double(dist.mean_fraction) << "\n";
    }
    write_file(fs::path(ctx.cfg.out_dir) / "kdd_sweep.csv", csv.str());
    write_file(fs::path(ctx.cfg.out_dir) / "kdd_sweep.gp",
               "set datafile separator ','\nset logscale y\nset xlabel 'd'\n"
               "set ylabel 'mass outside interval'\n"
               "plot 'kdd_sweep.csv' skip 1 using 1:2 with linespoints title 'outside mass'\n");
}

void scenario_union_kdd(ScenarioContext& ctx) {
    const auto& m = ctx.cfg.model;
    int colour = get_int(ctx.cfg, "colour", 0);
    int d = get_int(ctx.cfg, "d", 4);
    int copies = get_int(ctx.cfg, "m", 4);
    if (copies < 1) throw std::invalid_argument("union_kdd: m must be positive");

    auto comp = kdd_occupancy_counts(d, m.h, m.lambda, colour);
    // Convolve m independent copies.
    std::vector<Rational> acc{Rational(1)};
    for (int i = 0; i < copies; ++i) {
        std::vector<Rational> merged(acc.size() + comp.weight_by_count.size() - 1, Rational(0));
        for (std::size_t a = 0; a < acc.size(); ++a) {
            if (acc[a] == 0) continue;
            for (std::size_t b = 0; b < comp.weight_by_count.size(); ++b)
                if (comp.weight_by_count[b] != 0) merged[a + b] += acc[a] * comp.weight_by_count[b];
        }
        acc = std::move(merged);
    }
    OccupancyCounts unioned;
    unioned.colour = colour;
    unioned.host_size = copies * 2 * d;
    unioned.weight_by_count = std::move(acc);
    unioned.total = 0;
    for (const auto& c : unioned.weight_by_count) unioned.total += c;
    auto dist = distribution_from_counts(unioned);
    auto comp_dist = distribution_from_counts(comp);

    ctx.report["union_kdd"] = {{"m", copies},
                               {"d", d},
                               {"colour", colour},
                               {"concentration_point", rational_entry(comp_dist.mean_fraction)},
                               {"union_mean", rational_entry(dist.mean_fraction)},
                               {"provenance", "exact"}};
    ctx.say("per-component concentration point a(k) = " +
            rational_to_string(comp_dist.mean_fraction) + "; union mean = " +
            rational_to_string(dist.mean_fraction));
    if (dist.mean_fraction != comp_dist.mean_fraction) {
        ctx.verdict_ok = false;
        ctx.say("VERDICT FAIL: union mean differs from component mean");
    }
    write_file(fs::path(ctx.cfg.out_dir) / "union_kdd.csv", distribution_csv(dist));
}

void scenario_random_regular_demo(ScenarioContext& ctx) {
    const auto& m = ctx.cfg.model;
    int half = get_int(ctx.cfg, "half_size", 12);
    int d = get_int(ctx.cfg, "d", 4);
    int colour = get_int(ctx.cfg, "colour", 1 % m.h.colour_count());
    auto steps = static_cast<std::uint64_t>(get_int(ctx.cfg, "steps", 200000));

    auto g = random_regular_bipartite(half, d, ctx.cfg.seed, /*require_simple=*/false);
    auto rep = extremal_pairs(m.h, m.lambda);

    int n = g.num_vertices();
    int threshold = d >= 2
        ? static_cast<int>(std::ceil(3.0 * n * std::log2(static_cast<double>(d)) / d))
        : 1;
    threshold = std::max(threshold, 1);

    ChainConfig cc;
    cc.steps = steps;
    cc.burn_in = steps / 5;
    cc.thinning = std::max<std::uint64_t>(1, n / 4);
    cc.seed = ctx.cfg.seed;
    cc.init = ChainConfig::Init::pure_pair;
    cc.pure_pairs = rep.maximizers;
    cc.restarts = static_cast<unsigned>(rep.maximizers.size() - 1);
    cc.record_class_trace = true;
    cc.class_threshold = threshold;
    auto stats = run_chain(g, m.h, m.lambda, cc);

    std::map<std::string, std::uint64_t> class_freq;
    for (const auto& cls : stats.class_trace)
        ++class_freq[mask_to_string(cls.E_set) + "->" + mask_to_string(cls.O_set)];

    std::ostringstream csv;
    csv << "count,fraction,samples\n";
    for (const auto& [nk, c] : stats.histogram[colour])
        csv << nk << "," << static_cast<double>(nk) / n << "," << c << "\n";
    write_file(fs::path(ctx.cfg.out_dir) / "demo_histogram.csv", csv.str());

    ctx.report["random_regular_demo"] = {
        {"half_size", half}, {"d", d}, {"colour", colour},
        {"samples", stats.samples_used},
        {"pbar_estimate", stats.pbar_estimate[colour]},
        {"class_threshold", threshold},
        {"provenance", "mcmc"}};
    auto& freq = ctx.report["random_regular_demo"]["class_frequencies"] = json::object();
    for (const auto& [label, c] : class_freq) {
        freq[label] = static_cast<double>(c) / stats.class_trace.size();
        ctx.say("class " + label + ": " +
                std::to_string(static_cast<double>(c) / stats.class_trace.size()));
    }
    ctx.say("pooled pbar(" + std::to_string(colour) + ") = " +
            std::to_string(stats.pbar_estimate[colour]) +
            " (desk-scale illustration, not an asymptotic reproduction)");
}

void scenario_percolation_sweep(ScenarioContext& ctx) {
    const auto& m = ctx.cfg.model;
    int half = get_int(ctx.cfg, "half_size", 100);
    int n_reg = get_int(ctx.cfg, "n", 8);
    int colour = get_int(ctx.cfg, "colour", 0);
    auto steps = static_cast<std::uint64_t>(get_int(ctx.cfg, "steps", 200000));
    int chains = get_int(ctx.cfg, "chains", 4);

    auto g = random_regular_bipartite(half, n_reg, ctx.cfg.seed, /*require_simple=*/false);
    auto rep = extremal_pairs(m.h, m.lambda);
    Rational isolated_target = m.lambda[colour] / m.lambda.total();

    // Grid brackets 1/n symmetrically in log scale.
    std::vector<double> grid;
    for (double f : {0.1, 0.3, 1.0, 3.0, 10.0})
        grid.push_back(std::min(1.0, f / n_reg));

    std::ostringstream csv;
    csv << "p,pbar,target_pure_lo,target_pure_hi,target_isolated,provenance\n";
    ctx.report["sweep"] = json::array();
    std::uint64_t p_index = 0;
    for (double p : grid) {
        RandomSeed perc_seed{CounterRng(ctx.cfg.seed.seed, 0x7065 + p_index++).next_u64()};
        auto gp = percolate(g, p, perc_seed);
        double pbar;
        std::string provenance;
        if (gp.num_vertices() <= 12) {
            pbar = to_double(occupancy_distribution(gp, m.h, m.lambda, colour).mean_fraction);
            provenance = "exact";
        } else {
            ChainConfig cc;
            cc.steps = steps;
            cc.burn_in = steps / 5;
            cc.thinning = std::max<std::uint64_t>(1, gp.num_vertices() / 4);
            cc.seed = perc_seed;
            cc.restarts = static_cast<unsigned>(chains - 1);
            auto stats = run_chain(gp, m.h, m.lambda, cc);
            pbar = stats.pbar_estimate[colour];
            provenance = "mcmc";
        }
        ctx.report["sweep"].push_back({{"p", p},
                                       {"pbar", pbar},
                                       {"target_pure_lo", rational_entry(rep.a_minus[colour])},
                                       {"target_pure_hi", rational_entry(rep.a_plus[colour])},
                                       {"target_isolated", rational_entry(isolated_target)},
                                       {"provenance", provenance}});
        csv << p << "," << pbar << "," << to_double(rep.a_minus[colour]) << ","
            << to_double(rep.a_plus[colour]) << "," << to_double(isolated_target) << ","
            << provenance << "\n";
        ctx.say("p = " + std::to_string(p) + ": pbar = " + std::to_string(pbar) + " (" +
                provenance + ")");
    }
    write_file(fs::path(ctx.cfg.out_dir) / "percolation_sweep.csv", csv.str());
    write_file(fs::path(ctx.cfg.out_dir) / "percolation_sweep.gp",
               "set datafile separator ','\nset logscale x\nset xlabel 'p'\n"
               "set ylabel 'pbar'\n"
               "plot 'percolation_sweep.csv' skip 1 using 1:2 with linespoints title 'pbar',\\\n"
               "     '' skip 1 using 1:3 with lines title 'a-',\\\n"
               "     '' skip 1 using 1:4 with lines title 'a+',\\\n"
               "     '' skip 1 using 1:5 with lines title 'isolated'\n");
}

void scenario_bound_corpus(ScenarioContext& ctx) {
    int count = get_int(ctx.cfg, "count", 100);
    CounterRng rng(ctx.cfg.seed.seed, 0x636f7270ULL);
    ctx.report["corpus"] = json::array();
    int failures = 0;
    for (int i = 0; i < count; ++i) {
        // Random H on q <= 4 colours with at least one edge.
        int q = 2 + static_cast<int>(rng.next_below(3));
        std::vector<std::pair<int, int>> hedges;
        for (int a = 0; a < q; ++a)
            for (int b = a; b < q; ++b)
                if (rng.next_below(2)) hedges.emplace_back(a, b);
        if (hedges.empty()) hedges.emplace_back(0, q - 1);
        ConstraintGraph h(q, hedges);

        // Rational weights in (1, 4].
        std::vector<Rational> w;
        for (int c = 0; c < q; ++c)
            w.emplace_back(Rational(static_cast<int>(rng.next_below(12)) + 5, 4));
        WeightSystem lambda(std::move(w));

        // Random bipartite host on <= 8 vertices, no isolated-side degenerate cases.
        int e = 1 + static_cast<int>(rng.next_below(4));
        int o = 1 + static_cast<int>(rng.next_below(4));
        BipartiteHostGraph g;
        g.class_E = e;
        g.class_O = o;
        for (int a = 0; a < e; ++a)
            for (int b = 0; b < o; ++b)
                if (rng.next_below(2)) g.edges.emplace_back(a, b);
        int d = 1 + static_cast<int>(rng.next_below(4));

        auto entropy = check_entropy_bound(g, h, lambda, d);
        auto lb = eta_lower_bound(g, h, lambda);
        auto kdd_ub = kdd_eta_upper_bound(1 + static_cast<int>(rng.next_below(4)),
                                          1 + static_cast<int>(rng.next_below(4)), h, lambda);
        bool ok = (!entropy.applicable || entropy.holds) && lb.holds && kdd_ub.holds;
        if (!ok) ++failures;
        ctx.report["corpus"].push_back({{"instance", i},
                                        {"entropy_holds", entropy.holds},
                                        {"entropy_applicable", entropy.applicable},
                                        {"eta_lower_holds", lb.holds},
                                        {"kdd_upper_holds", kdd_ub.holds}});
    }
    ctx.report["failures"] = failures;
    ctx.say(std::to_string(count) + " instances, " + std::to_string(failures) + " failure(s)");
    if (failures > 0) {
        ctx.verdict_ok = false;
        ctx.say("VERDICT FAIL: a theorem-backed bound was violated (implementation bug)");
    }
}

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& config) {
    auto start = std::chrono::steady_clock::now();
    if (config.out_dir.empty()) throw std::invalid_argument("scenario: output directory required");
    fs::create_directories(config.out_dir);

    ScenarioReport out;
    out.scenario = config.scenario;
    json report;
    report["scenario"] = config.scenario;
    report["seed"] = config.seed.seed;

    ScenarioContext ctx{config, report, out.lines, out.verdict_ok};
    if (config.scenario == "extremal_report")
        scenario_extremal_report(ctx);
    else if (config.scenario == "exact_occupancy")
        scenario_exact_occupancy(ctx);
    else if (config.scenario == "kdd_sweep")
        scenario_kdd_sweep(ctx);
    else if (config.scenario == "union_kdd")
        scenario_union_kdd(ctx);
    else if (config.scenario == "random_regular_demo")
        scenario_random_regular_demo(ctx);
    else if (config.scenario == "percolation_sweep")
        scenario_percolation_sweep(ctx);
    else if (config.scenario == "bound_corpus")
        scenario_bound_corpus(ctx);
    else
        throw std::invalid_argument("unknown scenario: " + config.scenario);

    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ctx.report["wall_seconds"] = out.wall_seconds;
    ctx.report["verdict_ok"] = out.verdict_ok;
    out.report_path = (fs::path(config.out_dir) / "report.json").string();
    write_file(out.report_path, ctx.report.dump(2) + "\n");
    return out;
}

}  // namespace homoscope

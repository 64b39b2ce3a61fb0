// homoscope -- weighted H-colouring analysis of bipartite graphs.
//
// Subcommands: extremal, exact, mcmc, verify, run. See README.md.
#include "homoscope/bounds.hpp"
#include "homoscope/exact.hpp"
#include "homoscope/extremal.hpp"
#include "homoscope/mcmc.hpp"
#include "homoscope/model.hpp"
#include "homoscope/scenario.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <bit>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace homoscope;
using nlohmann::json;

namespace {

std::vector<int> mask_to_list(ColourMask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

json rational_entry(const Rational& r) {
    return json{{"exact", rational_to_string(r)}, {"float", to_double(r)}};
}

json bound_json(const BoundCheckResult& r) {
    json out;
    out["holds"] = r.holds;
    out["applicable"] = r.applicable;
    if (r.applicable) {
        out["lhs"] = rational_to_string(r.lhs);
        out["rhs"] = rational_to_string(r.rhs);
        out["slack_log2"] = r.slack_log2;
    }
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

// "A,B" with colour lists like "0|1,0" -> pair ({0,1},{0}).
SubsetPair parse_pair(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--init", "expected pure:A,B with | separated colours");
    auto parse_side = [](const std::string& side) {
        ColourMask m = 0;
        std::stringstream ss(side);
        std::string tok;
        while (std::getline(ss, tok, '|')) m |= 1u << std::stoi(tok);
        return m;
    };
    SubsetPair p;
    p.A = parse_side(text.substr(0, comma));
    p.B = parse_side(text.substr(comma + 1));
    return p;
}

std::map<std::string, std::string> parse_params(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--params", "expected comma separated k=v pairs");
        out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homoscope: weighted H-colourings of bipartite graphs"};
    app.require_subcommand(1);

    std::string model_path, out_path, check_name, init_spec, params_spec, scenario, out_dir;
    int colour = 0, d_param = 0, j_param = -1;
    std::string eps_str = "1/100", delta_str = "1/2";
    std::uint64_t steps = 100000, burn = 0, thin = 1, seed = 0;
    unsigned restarts = 0;

    auto* extremal = app.add_subcommand("extremal", "extremal pair structure of (H, Lambda)");
    extremal->add_option("--model", model_path)->required();
    extremal->add_option("--colour", colour);
    extremal->add_option("--eps", eps_str);

    auto* exact = app.add_subcommand("exact", "exact partition function and occupancy law");
    exact->add_option("--model", model_path)->required();
    exact->add_option("--colour", colour);
    std::string dist_path;
    exact->add_option("--dist", dist_path, "write the occupancy law as CSV");

    auto* mcmc = app.add_subcommand("mcmc", "Glauber dynamics estimates");
    mcmc->add_option("--model", model_path)->required();
    mcmc->add_option("--steps", steps);
    mcmc->add_option("--burn", burn);
    mcmc->add_option("--thin", thin);
    mcmc->add_option("--seed", seed);
    mcmc->add_option("--init", init_spec, "random | pure:A,B (colours | separated)");
    mcmc->add_option("--restarts", restarts);
    mcmc->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "exact inequality checks");
    verify->add_option("--model", model_path)->required();
    verify->add_option("--check", check_name, "entropy|gt|lb|kdd-ub|tilt|expansion")->required();
    verify->add_option("--d", d_param);
    verify->add_option("--delta", delta_str);
    verify->add_option("--colour", colour);
    verify->add_option("--j", j_param);
    int kdd_a = 2, kdd_b = 2;
    verify->add_option("--a", kdd_a);
    verify->add_option("--b", kdd_b);
    double expansion_c = 12.0;
    verify->add_option("--C", expansion_c);

    auto* run = app.add_subcommand("run", "end-to-end experiment scenarios");
    run->add_option("--scenario", scenario)->required();
    run->add_option("--model", model_path)->required();
    run->add_option("--params", params_spec, "comma separated k=v scenario parameters");
    run->add_option("--seed", seed);
    run->add_option("--out", out_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (extremal->parsed()) {
            auto m = load_model(model_path);
            auto rep = extremal_pairs(m.h, m.lambda);
            json out;
            out["eta"] = rational_entry(rep.eta);
            out["maximizers"] = json::array();
            for (const auto& p : rep.maximizers)
                out["maximizers"].push_back({{"A", mask_to_list(p.A)},
                                             {"B", mask_to_list(p.B)},
                                             {"product", rational_entry(p.product)}});
            out["colours"] = json::array();
            for (int k = 0; k < m.h.colour_count(); ++k) {
                json ck{{"colour", k},
                        {"a_minus", rational_entry(rep.a_minus[k])},
                        {"a_plus", rational_entry(rep.a_plus[k])}};
                if (k == colour) {
                    auto iv = occupancy_interval(rep, k, parse_rational(eps_str));
                    ck["forbidden_interval"] = {{"left_end", rational_entry(iv.low_end)},
                                                {"right_start", rational_entry(iv.high_start)}};
                }
                out["colours"].push_back(ck);
            }
            std::cout << out.dump(2) << "\n";
        } else if (exact->parsed()) {
            auto m = load_model(model_path);
            auto z = partition_function(m.g, m.h, m.lambda);
            auto dist = occupancy_distribution(m.g, m.h, m.lambda, colour);
            json out;
            out["Z"] = rational_entry(z.value);
            out["log2_Z"] = z.log2_view;
            out["colour"] = colour;
            out["mean_fraction"] = rational_entry(dist.mean_fraction);
            if (!dist_path.empty()) {
                std::ofstream csv(dist_path);
                csv << "count,probability_num,probability_den,probability_float\n";
                for (const auto& [count, p] : dist.mass)
                    csv << count << "," << numerator(p) << "," << denominator(p) << ","
                        << to_double(p) << "\n";
                out["dist_csv"] = dist_path;
            }
            std::cout << out.dump(2) << "\n";
        } else if (mcmc->parsed()) {
            auto m = load_model(model_path);
            ChainConfig cc;
            cc.steps = steps;
            cc.burn_in = burn;
            cc.thinning = thin;
            cc.seed = RandomSeed{seed};
            cc.restarts = restarts;
            if (init_spec.rfind("pure:", 0) == 0) {
                cc.init = ChainConfig::Init::pure_pair;
                cc.pure_pairs = {parse_pair(init_spec.substr(5))};
            }
            auto stats = run_chain(m.g, m.h, m.lambda, cc);
            json out;
            out["samples_used"] = stats.samples_used;
            out["pbar_estimate"] = stats.pbar_estimate;
            out["histogram"] = json::array();
            for (int k = 0; k < m.h.colour_count(); ++k) {
                json hk = json::object();
                for (const auto& [nk, c] : stats.histogram[k]) hk[std::to_string(nk)] = c;
                out["histogram"].push_back(hk);
            }
            if (out_path.empty()) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::ofstream f(out_path);
                f << out.dump(2) << "\n";
                std::cout << "wrote " << out_path << "\n";
            }
        } else if (verify->parsed()) {
            auto m = load_model(model_path);
            json out;
            bool holds = true;
            if (check_name == "entropy") {
                auto r = check_entropy_bound(m.g, m.h, m.lambda, d_param > 0 ? d_param : 1);
                out = bound_json(r);
                holds = !r.applicable || r.holds;
            } else if (check_name == "gt") {
                auto r = check_gt_bound(m.g, m.h, m.lambda);
                out = bound_json(r);
                holds = r.holds;
            } else if (check_name == "lb") {
                auto r = eta_lower_bound(m.g, m.h, m.lambda);
                out = bound_json(r);
                holds = r.holds;
            } else if (check_name == "kdd-ub") {
                auto r = kdd_eta_upper_bound(kdd_a, kdd_b, m.h, m.lambda);
                out = bound_json(r);
                holds = r.holds;
            } else if (check_name == "tilt") {
                int j = j_param >= 0 ? j_param : 0;
                auto r = check_tilt_inequality(m.g, m.h, m.lambda, colour,
                                               parse_rational(delta_str), j);
                out = bound_json(r.per_term);
                out["identity_holds"] = r.identity_holds;
                holds = r.per_term.holds && r.identity_holds;
            } else if (check_name == "expansion") {
                ExpansionMode mode;
                mode.exhaustive = true;
                auto r = check_expansion(m.g, d_param > 0 ? d_param : 3, expansion_c, mode);
                out["property1_holds"] = r.property1_holds;
                out["property2_holds"] = r.property2_holds;
                out["threshold"] = r.threshold;
                holds = r.property1_holds && r.property2_holds;
            } else {
                throw CLI::ValidationError("--check", "unknown check: " + check_name);
            }
            std::cout << out.dump(2) << "\n";
            return holds ? 0 : 2;
        } else if (run->parsed()) {
            ScenarioConfig cfg{scenario, load_model(model_path), {}, {}, {}};
            cfg.params = parse_params(params_spec);
            cfg.seed = RandomSeed{seed};
            cfg.out_dir = out_dir;
            auto rep = run_scenario(cfg);
            for (const auto& line : rep.lines) std::cout << line << "\n";
            std::cout << "report: " << rep.report_path << " (" << rep.wall_seconds << " s)\n";
            return rep.verdict_ok ? 0 : 2;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

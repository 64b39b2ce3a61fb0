// mcmc.hpp -- single-site heat-bath (Glauber) dynamics for p_Lambda on hosts
// too large for exact enumeration.
//
// Glauber dynamics need not be irreducible for every H (proper colourings
// with few colours are the standard example). run_chain therefore supports
// restarts from distinct pure pairs and pools the samples; no convergence
// claim is made for multimodal targets.
#pragma once

#include "homoscope/exact.hpp"
#include "homoscope/extremal.hpp"
#include "homoscope/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace homoscope {

struct ChainConfig {
    std::uint64_t steps = 0;
    std::uint64_t burn_in = 0;
    std::uint64_t thinning = 1;
    RandomSeed seed;

    enum class Init { random_valid, pure_pair, given };
    Init init = Init::random_valid;
    // Used cyclically across chains when init == pure_pair.
    std::vector<SubsetPair> pure_pairs;
    std::optional<Colouring> given;

    unsigned restarts = 0;  // runs restarts+1 chains with derived seeds
    bool record_class_trace = false;
    int class_threshold = 1;

    void validate() const;
};

struct ChainStats {
    std::uint64_t samples_used = 0;
    // Per colour: empirical distribution of N_k over pooled samples
    // (resolution 1/N by construction).
    std::vector<std::map<int, std::uint64_t>> histogram;
    std::vector<double> pbar_estimate;  // mean of s(k, f)
    std::vector<ColouringClass> class_trace;
};

// Independent draw per vertex: E-vertices Lambda-proportional from A,
// O-vertices from B. Valid whenever A ~ B.
Colouring init_pure(const BipartiteHostGraph& g, const ConstraintGraph& h,
                    const WeightSystem& lambda, const SubsetPair& pair, RandomSeed seed);

// Randomized greedy; throws after max_attempts dead ends (caller should
// supply a pure pair instead).
Colouring random_valid_colouring(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                 const WeightSystem& lambda, RandomSeed seed,
                                 int max_attempts = 100);

// Reusable chain: host adjacency and weight tables are built once.
class GlauberChain {
public:
    GlauberChain(const BipartiteHostGraph& g, const ConstraintGraph& h,
                 const WeightSystem& lambda, Colouring initial);

    void step(CounterRng& rng);
    const Colouring& state() const { return state_; }
    // Current |f^-1(k)| per colour, maintained incrementally.
    const std::vector<int>& colour_counts() const { return counts_; }

private:
    const ConstraintGraph& h_;
    std::vector<std::vector<int>> adj_;
    std::vector<double> weight_;
    Colouring state_;
    std::vector<int> counts_;
};

// One heat-bath update on a copy of f.
Colouring glauber_step(const BipartiteHostGraph& g, const ConstraintGraph& h,
                       const WeightSystem& lambda, const Colouring& f, CounterRng& rng);

// Exact single-site transition kernel P(f -> to), including the lazy f == to
// case. Zero when the colourings differ at two or more vertices.
Rational glauber_transition_probability(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                        const WeightSystem& lambda, const Colouring& f,
                                        const Colouring& to);

ChainStats run_chain(const BipartiteHostGraph& g, const ConstraintGraph& h,
                     const WeightSystem& lambda, const ChainConfig& config);

}  // namespace homoscope

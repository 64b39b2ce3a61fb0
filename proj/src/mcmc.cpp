#include "homoscope/mcmc.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace homoscope {

void ChainConfig::validate() const {
    if (steps == 0) throw std::invalid_argument("chain config: steps must be positive");
    if (burn_in >= steps) throw std::invalid_argument("chain config: burn_in must be < steps");
    if (thinning == 0) throw std::invalid_argument("chain config: thinning must be >= 1");
    if (init == Init::pure_pair && pure_pairs.empty())
        throw std::invalid_argument("chain config: pure_pair init without pairs");
    if (init == Init::given && !given)
        throw std::invalid_argument("chain config: given init without colouring");
}

namespace {

// Lambda-proportional draw restricted to a colour mask.
int draw_colour(const std::vector<double>& weight, ColourMask allowed, CounterRng& rng) {
    double total = 0;
    ColourMask rest = allowed;
    while (rest) {
        int c = std::countr_zero(rest);
        total += weight[c];
        rest &= rest - 1;
    }
    double r = rng.next_double() * total;
    rest = allowed;
    int last = -1;
    while (rest) {
        int c = std::countr_zero(rest);
        last = c;
        r -= weight[c];
        if (r < 0) return c;
        rest &= rest - 1;
    }
    return last;  // guards against rounding at the top end
}

std::vector<double> weight_doubles(const WeightSystem& lambda) {
    std::vector<double> w;
    w.reserve(lambda.size());
    for (const auto& x : lambda.weights) w.push_back(to_double(x));
    return w;
}

}  // namespace

Colouring init_pure(const BipartiteHostGraph& g, const ConstraintGraph& h,
                    const WeightSystem& lambda, const SubsetPair& pair, RandomSeed seed) {
    lambda.validate_for(h);
    if (pair.A == 0 || pair.B == 0)
        throw std::invalid_argument("init_pure: both sides of the pair must be non-empty");
    if (!fully_adjacent(h, pair.A, pair.B))
        throw std::invalid_argument("init_pure: pair is not fully adjacent");
    auto wd = weight_doubles(lambda);
    CounterRng rng(seed.seed, 0x70757265ULL);
    Colouring f;
    f.assignment.resize(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v)
        f.assignment[v] = draw_colour(wd, g.is_class_E(v) ? pair.A : pair.B, rng);
    return f;
}

Colouring random_valid_colouring(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                 const WeightSystem& lambda, RandomSeed seed,
                                 int max_attempts) {
    lambda.validate_for(h);
    auto adj = g.simple_adjacency();
    auto wd = weight_doubles(lambda);
    CounterRng rng(seed.seed, 0x696e6974ULL);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Colouring f;
        f.assignment.assign(g.num_vertices(), -1);
        bool ok = true;
        for (int v = 0; v < g.num_vertices() && ok; ++v) {
            ColourMask allowed = h.all_colours();
            for (int u : adj[v])
                if (f.assignment[u] >= 0) allowed &= h.neighbours(f.assignment[u]);
            if (allowed == 0) {
                ok = false;
                break;
            }
            f.assignment[v] = draw_colour(wd, allowed, rng);
        }
        if (ok) return f;
    }
    throw std::runtime_error(
        "random_valid_colouring: greedy search failed; supply a pure pair init");
}

GlauberChain::GlauberChain(const BipartiteHostGraph& g, const ConstraintGraph& h,
                           const WeightSystem& lambda, Colouring initial)
    : h_(h), adj_(g.simple_adjacency()), weight_(weight_doubles(lambda)),
      state_(std::move(initial)) {
    if (!is_valid_colouring(g, h, state_))
        throw std::invalid_argument("glauber chain: initial colouring is invalid");
    counts_.assign(h.colour_count(), 0);
    for (int c : state_.assignment) ++counts_[c];
}

void GlauberChain::step(CounterRng& rng) {
    int n = static_cast<int>(state_.assignment.size());
    int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    ColourMask allowed = h_.all_colours();
    for (int u : adj_[v]) allowed &= h_.neighbours(state_.assignment[u]);
    // The current colour is always allowed, so the mask is never empty.
    assert(allowed & (1u << state_.assignment[v]));
    int c = draw_colour(weight_, allowed, rng);
    --counts_[state_.assignment[v]];
    state_.assignment[v] = c;
    ++counts_[c];
}

Colouring glauber_step(const BipartiteHostGraph& g, const ConstraintGraph& h,
                       const WeightSystem& lambda, const Colouring& f, CounterRng& rng) {
    GlauberChain chain(g, h, lambda, f);
    chain.step(rng);
    return chain.state();
}

Rational glauber_transition_probability(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                        const WeightSystem& lambda, const Colouring& f,
                                        const Colouring& to) {
    lambda.validate_for(h);
    if (!is_valid_colouring(g, h, f))
        throw std::invalid_argument("glauber kernel: invalid source colouring");
    int n = g.num_vertices();
    std::vector<int> diff;
    for (int v = 0; v < n; ++v)
        if (f.assignment[v] != to.assignment[v]) diff.push_back(v);
    if (diff.size() > 1) return 0;

    auto adj = g.simple_adjacency();
    auto site_prob = [&](int v, int colour) -> Rational {
        ColourMask allowed = h.all_colours();
        for (int u : adj[v]) allowed &= h.neighbours(f.assignment[u]);
        if (!(allowed & (1u << colour))) return 0;
        return lambda[colour] / subset_weight(lambda, allowed);
    };

    Rational p = 0;
    if (diff.size() == 1) {
        p = site_prob(diff[0], to.assignment[diff[0]]);
    } else {
        for (int v = 0; v < n; ++v) p += site_prob(v, f.assignment[v]);
    }
    return p / n;
}

ChainStats run_chain(const BipartiteHostGraph& g, const ConstraintGraph& h,
                     const WeightSystem& lambda, const ChainConfig& config) {
    lambda.validate_for(h);
    config.validate();
    int n = g.num_vertices();
    int q = h.colour_count();

    ChainStats stats;
    stats.histogram.assign(q, {});
    std::vector<double> sum_fraction(q, 0.0);

    for (unsigned chain_idx = 0; chain_idx <= config.restarts; ++chain_idx) {
        RandomSeed derived{CounterRng(config.seed.seed, 0xc4a1 + chain_idx).next_u64()};
        Colouring initial = [&] {
            switch (config.init) {
                case ChainConfig::Init::pure_pair:
                    return init_pure(g, h, lambda,
                                     config.pure_pairs[chain_idx % config.pure_pairs.size()],
                                     derived);
                case ChainConfig::Init::given:
                    return *config.given;
                default:
                    return random_valid_colouring(g, h, lambda, derived);
            }
        }();

        GlauberChain chain(g, h, lambda, std::move(initial));
        CounterRng rng(config.seed.seed, 0x676c6175ULL + chain_idx);
        for (std::uint64_t t = 0; t < config.steps; ++t) {
            chain.step(rng);
            if (t < config.burn_in || (t - config.burn_in) % config.thinning != 0) continue;
            ++stats.samples_used;
            const auto& counts = chain.colour_counts();
            for (int k = 0; k < q; ++k) {
                ++stats.histogram[k][counts[k]];
                sum_fraction[k] += static_cast<double>(counts[k]) / n;
            }
            if (config.record_class_trace)
                stats.class_trace.push_back(
                    classify_colouring(g, h, chain.state(), config.class_threshold));
        }
    }

    stats.pbar_estimate.resize(q);
    for (int k = 0; k < q; ++k)
        stats.pbar_estimate[k] = sum_fraction[k] / static_cast<double>(stats.samples_used);
    return stats;
}

}  // namespace homoscope

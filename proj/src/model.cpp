#include "homoscope/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace homoscope {

ConstraintGraph::ConstraintGraph(int colour_count,
                                 const std::vector<std::pair<int, int>>& edges,
                                 std::vector<std::string> labels)
    : colour_count_(colour_count), labels_(std::move(labels)) {
    if (colour_count < 1 || colour_count > kMaxColours)
        throw std::invalid_argument("colour_count must be in [1, " +
                                    std::to_string(kMaxColours) + "]");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != colour_count)
        throw std::invalid_argument("label count does not match colour_count");
    if (edges.empty())
        throw std::invalid_argument("constraint graph needs at least one edge or loop");
    adj_.assign(colour_count, 0);
    for (auto [i, j] : edges) {
        if (i < 0 || i >= colour_count || j < 0 || j >= colour_count)
            throw std::invalid_argument("edge endpoint out of range");
        adj_[i] |= 1u << j;
        adj_[j] |= 1u << i;
    }
}

std::vector<std::pair<int, int>> ConstraintGraph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < colour_count_; ++i)
        for (int j = i; j < colour_count_; ++j)
            if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
}

WeightSystem::WeightSystem(std::vector<Rational> w) : weights(std::move(w)) {
    for (const auto& x : weights)
        if (x <= 0) throw std::invalid_argument("weights must be strictly positive");
}

Rational WeightSystem::total() const {
    Rational s = 0;
    for (const auto& x : weights) s += x;
    return s;
}

void WeightSystem::validate_for(const ConstraintGraph& h) const {
    if (size() != h.colour_count())
        throw std::invalid_argument("weight count does not match colour_count");
}

std::vector<int> BipartiteHostGraph::degrees() const {
    std::vector<int> deg(num_vertices(), 0);
    for (auto [e, o] : edges) {
        ++deg[global_e(e)];
        ++deg[global_o(o)];
    }
    return deg;
}

std::vector<std::vector<int>> BipartiteHostGraph::simple_adjacency() const {
    std::vector<std::set<int>> nb(num_vertices());
    for (auto [e, o] : edges) {
        nb[global_e(e)].insert(global_o(o));
        nb[global_o(o)].insert(global_e(e));
    }
    std::vector<std::vector<int>> adj(num_vertices());
    for (int v = 0; v < num_vertices(); ++v) adj[v].assign(nb[v].begin(), nb[v].end());
    return adj;
}

void BipartiteHostGraph::validate() const {
    if (class_E < 0 || class_O < 0 || num_vertices() == 0)
        throw std::invalid_argument("host graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (auto [e, o] : edges) {
        if (e < 0 || e >= class_E || o < 0 || o >= class_O)
            throw std::invalid_argument("host edge endpoint out of range");
        if (simple_flag && !seen.insert({e, o}).second)
            throw std::invalid_argument("parallel edge in graph marked simple");
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream))) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ ^ splitmix64(counter_++)); }

std::uint64_t CounterRng::next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("next_below(0)");
    std::uint64_t limit = ~0ULL - (~0ULL % n);
    for (;;) {
        std::uint64_t x = next_u64();
        if (x < limit) return x % n;
    }
}

double CounterRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

BigInt CounterRng::next_bigint_below(const BigInt& bound) {
    if (bound <= 0) throw std::invalid_argument("next_bigint_below: bound <= 0");
    if (bound == 1) return 0;
    unsigned bits = static_cast<unsigned>(msb(bound)) + 1;
    unsigned words = (bits + 63) / 64;
    for (;;) {
        BigInt x = 0;
        for (unsigned i = 0; i < words; ++i) {
            x <<= 64;
            x |= BigInt(next_u64());
        }
        x >>= (words * 64 - bits);
        if (x < bound) return x;
    }
}

std::pair<ConstraintGraph, WeightSystem> hard_core_model(const Rational& lambda) {
    if (lambda <= 0) throw std::invalid_argument("hard_core: lambda must be positive");
    ConstraintGraph h(2, {{0, 0}, {0, 1}}, {"unoccupied", "occupied"});
    return {h, WeightSystem({Rational(1), lambda})};
}

std::pair<ConstraintGraph, WeightSystem> multistate_model(int k, const Rational& lambda) {
    if (k < 1) throw std::invalid_argument("multistate: k must be positive");
    if (lambda <= 0) throw std::invalid_argument("multistate: lambda must be positive");
    if (k + 1 > ConstraintGraph::kMaxColours)
        throw std::invalid_argument("multistate: k too large");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i <= k; ++i)
        for (int j = i; j <= k; ++j)
            if (i + j <= k) edges.emplace_back(i, j);
    std::vector<Rational> w;
    Rational cur = 1;
    for (int i = 0; i <= k; ++i) {
        w.push_back(cur);
        cur *= lambda;
    }
    return {ConstraintGraph(k + 1, edges), WeightSystem(std::move(w))};
}

std::pair<ConstraintGraph, WeightSystem> complete_model(int q) {
    if (q < 2) throw std::invalid_argument("complete: q must be at least 2");
    if (q > ConstraintGraph::kMaxColours) throw std::invalid_argument("complete: q too large");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) edges.emplace_back(i, j);
    return {ConstraintGraph(q, edges), WeightSystem(std::vector<Rational>(q, 1))};
}

std::pair<ConstraintGraph, WeightSystem> preset_model(const std::string& name,
                                                      const std::vector<std::string>& params) {
    if (name == "hard_core") {
        if (params.size() != 1) throw std::invalid_argument("hard_core expects <lambda>");
        return hard_core_model(parse_rational(params[0]));
    }
    if (name == "multistate") {
        if (params.size() != 2) throw std::invalid_argument("multistate expects <k> <lambda>");
        return multistate_model(std::stoi(params[0]), parse_rational(params[1]));
    }
    if (name == "complete") {
        if (params.size() != 1) throw std::invalid_argument("complete expects <q>");
        return complete_model(std::stoi(params[0]));
    }
    throw std::invalid_argument("unknown preset: " + name);
}

BipartiteHostGraph complete_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("complete_bipartite: sizes must be positive");
    BipartiteHostGraph g;
    g.class_E = a;
    g.class_O = b;
    for (int e = 0; e < a; ++e)
        for (int o = 0; o < b; ++o) g.edges.emplace_back(e, o);
    return g;
}

BipartiteHostGraph even_cycle(int length) {
    if (length < 4 || length % 2 != 0)
        throw std::invalid_argument("even_cycle: length must be even and >= 4");
    // Cycle vertex 2i is E-vertex i, vertex 2i+1 is O-vertex i.
    BipartiteHostGraph g;
    g.class_E = length / 2;
    g.class_O = length / 2;
    for (int i = 0; i < length / 2; ++i) {
        g.edges.emplace_back(i, i);
        g.edges.emplace_back((i + 1) % (length / 2), i);
    }
    return g;
}

BipartiteHostGraph disjoint_union(const std::vector<BipartiteHostGraph>& parts) {
    if (parts.empty()) throw std::invalid_argument("disjoint_union: empty part list");
    BipartiteHostGraph g;
    for (const auto& p : parts) {
        for (auto [e, o] : p.edges) g.edges.emplace_back(g.class_E + e, g.class_O + o);
        g.class_E += p.class_E;
        g.class_O += p.class_O;
        g.simple_flag = g.simple_flag && p.simple_flag;
    }
    return g;
}

BipartiteHostGraph random_regular_bipartite(int half_size, int d, RandomSeed seed,
                                            bool require_simple, int max_retries) {
    if (half_size < 1 || d < 1) throw std::invalid_argument("sizes must be positive");
    if (d > half_size) throw std::invalid_argument("d cannot exceed half_size");
    CounterRng rng(seed.seed, 0x636f6e666967ULL);  // generator substream
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        // Uniform perfect matching of half-edge stubs: Fisher-Yates on the
        // O-side stubs, then pair stub i of E with stub perm[i] of O.
        int stubs = half_size * d;
        std::vector<int> perm(stubs);
        for (int i = 0; i < stubs; ++i) perm[i] = i;
        for (int i = stubs - 1; i > 0; --i) {
            int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        BipartiteHostGraph g;
        g.class_E = half_size;
        g.class_O = half_size;
        std::set<std::pair<int, int>> seen;
        bool simple = true;
        for (int i = 0; i < stubs; ++i) {
            int e = i / d, o = perm[i] / d;
            g.edges.emplace_back(e, o);
            if (!seen.insert({e, o}).second) simple = false;
        }
        g.simple_flag = simple;
        if (!require_simple || simple) return g;
    }
    throw std::runtime_error(
        "random_regular_bipartite: no simple graph found; d is likely too large "
        "relative to half_size for rejection sampling");
}

BipartiteHostGraph percolate(const BipartiteHostGraph& g, double p, RandomSeed seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("percolate: p must be in [0,1]");
    CounterRng rng(seed.seed, 0x70657263ULL);  // percolation substream
    BipartiteHostGraph out;
    out.class_E = g.class_E;
    out.class_O = g.class_O;
    out.simple_flag = g.simple_flag;
    for (auto edge : g.edges)
        if (rng.next_double() < p) out.edges.push_back(edge);
    return out;
}

}  // namespace homoscope

// model.hpp -- constraint graphs H (with weights) and bipartite host graphs G:
// representations, presets, deterministic random generators and file I/O.
#pragma once

#include "homoscope/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace homoscope {

using ColourMask = std::uint32_t;

// The target graph H: vertices are colours, loops allowed. Adjacency is held
// as one neighbourhood bitmask per colour (bit i of adj[j] <=> edge ij).
class ConstraintGraph {
public:
    // Subset enumeration in the extremal scan is exponential in q; 20 keeps
    // the worst case within the documented budget.
    static constexpr int kMaxColours = 20;

    ConstraintGraph(int colour_count, const std::vector<std::pair<int, int>>& edges,
                    std::vector<std::string> labels = {});

    int colour_count() const { return colour_count_; }
    bool has_edge(int i, int j) const { return (adj_[i] >> j) & 1u; }
    ColourMask neighbours(int i) const { return adj_[i]; }
    ColourMask all_colours() const { return (colour_count_ == 32) ? ~0u : ((1u << colour_count_) - 1); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::vector<std::pair<int, int>> edge_list() const;  // i <= j, loops as (i,i)

private:
    int colour_count_;
    std::vector<ColourMask> adj_;
    std::vector<std::string> labels_;
};

// Positive activity per colour; exact rationals, floating views derived.
struct WeightSystem {
    std::vector<Rational> weights;

    explicit WeightSystem(std::vector<Rational> w);
    WeightSystem() = default;

    int size() const { return static_cast<int>(weights.size()); }
    const Rational& operator[](int i) const { return weights[i]; }
    Rational total() const;

    void validate_for(const ConstraintGraph& h) const;
};

// Bipartite host graph G. Vertices of class E are 0..class_E-1 and class O
// 0..class_O-1 in their own id spaces; globally O vertices follow E vertices.
// Edges are a multiset of (E-vertex, O-vertex) pairs.
struct BipartiteHostGraph {
    int class_E = 0;
    int class_O = 0;
    std::vector<std::pair<int, int>> edges;
    bool simple_flag = true;

    int num_vertices() const { return class_E + class_O; }
    int global_e(int e) const { return e; }
    int global_o(int o) const { return class_E + o; }
    bool is_class_E(int v) const { return v < class_E; }

    // Degrees counted with multiplicity, indexed by global vertex id.
    std::vector<int> degrees() const;
    // Adjacency lists with parallel edges collapsed (identical constraints).
    std::vector<std::vector<int>> simple_adjacency() const;

    void validate() const;
};

struct RandomSeed {
    std::uint64_t seed = 0;
};

// Deterministic splittable generator: every draw is a hash of
// (key, counter), so identical seeds reproduce identical streams on any
// platform and substreams can be derived without shared state.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    // Uniform in [0, n), n > 0, via rejection (no modulo bias).
    std::uint64_t next_below(std::uint64_t n);
    double next_double();  // [0,1), 53-bit resolution
    // Uniform BigInt in [0, bound), bound > 0.
    BigInt next_bigint_below(const BigInt& bound);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

enum class Preset { hard_core, multistate, complete };

std::pair<ConstraintGraph, WeightSystem> hard_core_model(const Rational& lambda);
std::pair<ConstraintGraph, WeightSystem> multistate_model(int k, const Rational& lambda);
std::pair<ConstraintGraph, WeightSystem> complete_model(int q);
std::pair<ConstraintGraph, WeightSystem> preset_model(const std::string& name,
                                                      const std::vector<std::string>& params);

BipartiteHostGraph complete_bipartite(int a, int b);
BipartiteHostGraph even_cycle(int length);
BipartiteHostGraph disjoint_union(const std::vector<BipartiteHostGraph>& parts);

// Configuration model: a uniform perfect matching of d half-edges per vertex,
// projected to a d-regular bipartite multigraph. With require_simple, retries
// until the draw is simple (up to max_retries).
BipartiteHostGraph random_regular_bipartite(int half_size, int d, RandomSeed seed,
                                            bool require_simple = false,
                                            int max_retries = 1000);

// Keeps each edge independently with probability p; vertex set unchanged.
BipartiteHostGraph percolate(const BipartiteHostGraph& g, double p, RandomSeed seed);

struct ModelInstance {
    ConstraintGraph h;
    WeightSystem lambda;
    BipartiteHostGraph g;
};

// JSON model files: {"H": {"q":..., "edges":[[i,j],...]},
//                    "lambda": ["num/den",...],
//                    "G": {"E":..., "O":..., "edges":[[e,o],...]}}
ModelInstance load_model(const std::string& path);
void save_model(const ModelInstance& m, const std::string& path);
ModelInstance parse_model_json(const std::string& text);
std::string model_to_json(const ModelInstance& m);

}  // namespace homoscope

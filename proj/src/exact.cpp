#include "homoscope/exact.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace homoscope {

bool is_valid_colouring(const BipartiteHostGraph& g, const ConstraintGraph& h,
                        const Colouring& f) {
    if (static_cast<int>(f.assignment.size()) != g.num_vertices()) return false;
    for (int c : f.assignment)
        if (c < 0 || c >= h.colour_count()) return false;
    for (auto [e, o] : g.edges)
        if (!h.has_edge(f.assignment[g.global_e(e)], f.assignment[g.global_o(o)]))
            return false;
    return true;
}

namespace {

struct ComponentOrder {
    std::vector<int> vertices;                     // global ids, BFS order
    std::vector<std::vector<int>> earlier;         // per position: earlier positions adjacent
};

std::vector<ComponentOrder> decompose(const BipartiteHostGraph& g) {
    auto adj = g.simple_adjacency();
    int n = g.num_vertices();
    std::vector<int> pos(n, -1);
    std::vector<bool> seen(n, false);
    std::vector<ComponentOrder> comps;
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        ComponentOrder comp;
        std::queue<int> q;
        q.push(start);
        seen[start] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            pos[v] = static_cast<int>(comp.vertices.size());
            comp.vertices.push_back(v);
            for (int u : adj[v])
                if (!seen[u]) {
                    seen[u] = true;
                    q.push(u);
                }
        }
        comp.earlier.resize(comp.vertices.size());
        for (std::size_t i = 0; i < comp.vertices.size(); ++i)
            for (int u : adj[comp.vertices[i]])
                if (pos[u] >= 0 && pos[u] < static_cast<int>(i))
                    comp.earlier[i].push_back(pos[u]);
        comps.push_back(std::move(comp));
    }
    return comps;
}

void check_budget(int q, std::size_t m, std::uint64_t budget) {
    double cost_log2 = static_cast<double>(m) * std::log2(static_cast<double>(q));
    if (cost_log2 > std::log2(static_cast<double>(budget)))
        throw BudgetExceeded("enumeration budget exceeded: " + std::to_string(q) + "^" +
                             std::to_string(m) + " assignments (consider the kdd engine or MCMC)");
}

// Depth-first enumeration of all H-colourings of one component, vertices in
// BFS order, pruning by the intersection of neighbour constraint masks.
// Leaf signature: bool leaf(colours, weight, marker_count); returning false
// stops the enumeration (used by exact_sample).
template <typename Leaf>
void enumerate_component(const ComponentOrder& comp, const ConstraintGraph& h,
                         const WeightSystem& lambda, int marker_colour, Leaf&& leaf) {
    std::size_t m = comp.vertices.size();
    std::vector<int> colours(m, -1);
    std::vector<Rational> weight(m + 1);
    weight[0] = 1;
    std::vector<int> markers(m + 1, 0);
    bool stop = false;

    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (stop) return;
        if (i == m) {
            if (!leaf(colours, weight[m], markers[m])) stop = true;
            return;
        }
        ColourMask allowed = h.all_colours();
        for (int p : comp.earlier[i]) allowed &= h.neighbours(colours[p]);
        ColourMask rest = allowed;
        while (rest && !stop) {
            int c = std::countr_zero(rest);
            rest &= rest - 1;
            colours[i] = c;
            weight[i + 1] = weight[i] * lambda[c];
            markers[i + 1] = markers[i] + (c == marker_colour ? 1 : 0);
            self(self, i + 1);
        }
        colours[i] = -1;
    };
    rec(rec, 0);
}

}  // namespace

PartitionValue partition_function(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                  const WeightSystem& lambda, std::uint64_t budget) {
    lambda.validate_for(h);
    Rational z = 1;
    for (const auto& comp : decompose(g)) {
        check_budget(h.colour_count(), comp.vertices.size(), budget);
        Rational zc = 0;
        enumerate_component(comp, h, lambda, -1,
                            [&](const std::vector<int>&, const Rational& w, int) {
                                zc += w;
                                return true;
                            });
        z *= zc;
        if (z == 0) break;
    }
    PartitionValue pv;
    pv.value = z;
    pv.log2_view = (z == 0) ? 0.0 : log2_rational(z);
    return pv;
}

OccupancyCounts occupancy_counts(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                 const WeightSystem& lambda, int colour,
                                 std::uint64_t budget) {
    lambda.validate_for(h);
    if (colour < 0 || colour >= h.colour_count())
        throw std::invalid_argument("occupancy_counts: colour out of range");
    std::vector<Rational> acc{Rational(1)};  // convolution accumulator
    for (const auto& comp : decompose(g)) {
        check_budget(h.colour_count(), comp.vertices.size(), budget);
        std::vector<Rational> cc(comp.vertices.size() + 1, Rational(0));
        enumerate_component(comp, h, lambda, colour,
                            [&](const std::vector<int>&, const Rational& w, int nk) {
                                cc[nk] += w;
                                return true;
                            });
        std::vector<Rational> merged(acc.size() + cc.size() - 1, Rational(0));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == 0) continue;
            for (std::size_t j = 0; j < cc.size(); ++j)
                if (cc[j] != 0) merged[i + j] += acc[i] * cc[j];
        }
        acc = std::move(merged);
    }
    OccupancyCounts counts;
    counts.colour = colour;
    counts.host_size = g.num_vertices();
    acc.resize(g.num_vertices() + 1, Rational(0));
    counts.weight_by_count = std::move(acc);
    counts.total = 0;
    for (const auto& c : counts.weight_by_count) counts.total += c;
    return counts;
}

OccupancyDistribution distribution_from_counts(const OccupancyCounts& counts) {
    if (counts.total == 0)
        throw std::runtime_error("occupancy distribution undefined: no homomorphisms");
    OccupancyDistribution dist;
    dist.colour = counts.colour;
    dist.host_size = counts.host_size;
    Rational mean = 0;
    for (int j = 0; j < static_cast<int>(counts.weight_by_count.size()); ++j) {
        const Rational& c = counts.weight_by_count[j];
        if (c == 0) continue;
        dist.mass[j] = c / counts.total;
        mean += j * c;
    }
    dist.mean_fraction = mean / (counts.total * counts.host_size);
    return dist;
}

OccupancyDistribution occupancy_distribution(const BipartiteHostGraph& g,
                                             const ConstraintGraph& h,
                                             const WeightSystem& lambda, int colour,
                                             std::uint64_t budget) {
    return distribution_from_counts(occupancy_counts(g, h, lambda, colour, budget));
}

namespace {

// Total weight of left-class assignments grouped by common neighbourhood.
std::map<ColourMask, Rational> left_class_weights(int a, const ConstraintGraph& h,
                                                  const WeightSystem& lambda) {
    std::map<ColourMask, Rational> cur;
    cur[h.all_colours()] = 1;
    for (int step = 0; step < a; ++step) {
        std::map<ColourMask, Rational> next;
        for (const auto& [mask, w] : cur)
            for (int c = 0; c < h.colour_count(); ++c)
                next[mask & h.neighbours(c)] += w * lambda[c];
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

PartitionValue kdd_partition_function(int a, int b, const ConstraintGraph& h,
                                      const WeightSystem& lambda) {
    lambda.validate_for(h);
    if (a < 0 || b < 0) throw std::invalid_argument("kdd_partition_function: negative size");
    Rational z = 0;
    for (const auto& [mask, w] : left_class_weights(a, h, lambda)) {
        if (mask == 0 && b > 0) continue;
        z += w * rational_pow(subset_weight(lambda, mask), static_cast<std::uint64_t>(b));
    }
    PartitionValue pv;
    pv.value = z;
    pv.log2_view = (z == 0) ? 0.0 : log2_rational(z);
    return pv;
}

OccupancyCounts kdd_occupancy_counts(int d, const ConstraintGraph& h,
                                     const WeightSystem& lambda, int colour) {
    lambda.validate_for(h);
    if (d < 1) throw std::invalid_argument("kdd_occupancy_counts: d must be positive");
    if (colour < 0 || colour >= h.colour_count())
        throw std::invalid_argument("kdd_occupancy_counts: colour out of range");

    // Left DP keyed by (common neighbourhood, colour count so far).
    std::map<ColourMask, std::vector<Rational>> cur;
    cur[h.all_colours()] = {Rational(1)};
    for (int step = 0; step < d; ++step) {
        std::map<ColourMask, std::vector<Rational>> next;
        for (const auto& [mask, byk] : cur)
            for (int c = 0; c < h.colour_count(); ++c) {
                ColourMask nm = mask & h.neighbours(c);
                auto& tgt = next[nm];
                if (tgt.size() < byk.size() + 1) tgt.resize(byk.size() + 1, Rational(0));
                int shift = (c == colour) ? 1 : 0;
                for (std::size_t j = 0; j < byk.size(); ++j)
                    if (byk[j] != 0) tgt[j + shift] += byk[j] * lambda[c];
            }
        cur = std::move(next);
    }

    OccupancyCounts counts;
    counts.colour = colour;
    counts.host_size = 2 * d;
    counts.weight_by_count.assign(2 * d + 1, Rational(0));
    ColourMask bit = 1u << colour;
    for (const auto& [mask, byk] : cur) {
        if (mask == 0) continue;
        Rational wt = subset_weight(lambda, mask);
        if (mask & bit) {
            // Right class: m of d vertices take the marked colour.
            Rational rest = wt - lambda[colour];
            for (int m = 0; m <= d; ++m) {
                Rational term = Rational(binomial(d, m)) *
                                rational_pow(lambda[colour], m) *
                                rational_pow(rest, d - m);
                if (term == 0) continue;
                for (std::size_t j = 0; j < byk.size(); ++j)
                    if (byk[j] != 0) counts.weight_by_count[j + m] += byk[j] * term;
            }
        } else {
            Rational term = rational_pow(wt, d);
            for (std::size_t j = 0; j < byk.size(); ++j)
                if (byk[j] != 0) counts.weight_by_count[j] += byk[j] * term;
        }
    }
    counts.total = 0;
    for (const auto& c : counts.weight_by_count) counts.total += c;
    return counts;
}

OccupancyDistribution kdd_occupancy_distribution(int d, const ConstraintGraph& h,
                                                 const WeightSystem& lambda, int colour) {
    return distribution_from_counts(kdd_occupancy_counts(d, h, lambda, colour));
}

ConstraintGraph blow_up(const ConstraintGraph& h, const WeightSystem& lambda, int c) {
    lambda.validate_for(h);
    if (c < 1) throw std::invalid_argument("blow_up: C must be positive");
    int q = h.colour_count();
    std::vector<int> size(q), offset(q);
    int total = 0;
    for (int i = 0; i < q; ++i) {
        Rational s = lambda[i] * c;
        if (denominator(s) != 1)
            throw std::invalid_argument("blow_up: C*lambda_" + std::to_string(i) +
                                        " is not an integer");
        offset[i] = total;
        size[i] = numerator(s).convert_to<int>();
        total += size[i];
    }
    if (total > ConstraintGraph::kMaxColours)
        throw std::invalid_argument("blow_up: blown-up graph exceeds the colour budget");

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < q; ++i)
        for (int j = i; j < q; ++j) {
            if (!h.has_edge(i, j)) continue;
            if (i == j) {
                for (int u = 0; u < size[i]; ++u)
                    for (int v = u; v < size[i]; ++v)
                        edges.emplace_back(offset[i] + u, offset[i] + v);
            } else {
                for (int u = 0; u < size[i]; ++u)
                    for (int v = 0; v < size[j]; ++v)
                        edges.emplace_back(offset[i] + u, offset[j] + v);
            }
        }
    return ConstraintGraph(total, edges);
}

Colouring exact_sample(const BipartiteHostGraph& g, const ConstraintGraph& h,
                       const WeightSystem& lambda, RandomSeed seed, std::uint64_t budget) {
    lambda.validate_for(h);
    BigInt denom_lcm = 1;
    for (const auto& w : lambda.weights)
        denom_lcm = lcm(denom_lcm, denominator(w));

    Colouring result;
    result.assignment.assign(g.num_vertices(), -1);
    std::uint64_t comp_index = 0;
    for (const auto& comp : decompose(g)) {
        check_budget(h.colour_count(), comp.vertices.size(), budget);
        std::size_t m = comp.vertices.size();
        // Scale weights so every colouring has integer weight; a uniform
        // integer below the scaled Z then inverts the cumulative weights
        // exactly.
        BigInt scale = boost::multiprecision::pow(denom_lcm, static_cast<unsigned>(m));
        BigInt z_scaled = 0;
        enumerate_component(comp, h, lambda, -1,
                            [&](const std::vector<int>&, const Rational& w, int) {
                                z_scaled += numerator(Rational(w * scale));
                                return true;
                            });
        if (z_scaled == 0)
            throw std::runtime_error("exact_sample: instance has no homomorphisms");

        CounterRng rng(seed.seed, 0x73616d70ULL + comp_index);
        BigInt target = rng.next_bigint_below(z_scaled);
        BigInt cum = 0;
        enumerate_component(comp, h, lambda, -1,
                            [&](const std::vector<int>& colours, const Rational& w, int) {
                                cum += numerator(Rational(w * scale));
                                if (cum > target) {
                                    for (std::size_t i = 0; i < m; ++i)
                                        result.assignment[comp.vertices[i]] = colours[i];
                                    return false;
                                }
                                return true;
                            });
        ++comp_index;
    }
    return result;
}

ColouringClass classify_colouring(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                  const Colouring& f, int threshold) {
    if (threshold < 1) throw std::invalid_argument("classify_colouring: threshold must be positive");
    if (!is_valid_colouring(g, h, f))
        throw std::invalid_argument("classify_colouring: invalid colouring");
    std::vector<int> count_e(h.colour_count(), 0), count_o(h.colour_count(), 0);
    for (int v = 0; v < g.num_vertices(); ++v)
        (g.is_class_E(v) ? count_e : count_o)[f.assignment[v]]++;
    ColouringClass cls;
    cls.threshold = threshold;
    for (int k = 0; k < h.colour_count(); ++k) {
        if (count_e[k] >= threshold) cls.E_set |= 1u << k;
        if (count_o[k] >= threshold) cls.O_set |= 1u << k;
    }
    return cls;
}

}  // namespace homoscope

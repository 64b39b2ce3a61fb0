#include "homoscope/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace homoscope {

namespace {

// Degrees split into (smaller class, larger class) so that |O| >= |E|.
struct OrientedDegrees {
    std::vector<int> deg_E, deg_O;
};

OrientedDegrees oriented_degrees(const BipartiteHostGraph& g) {
    auto deg = g.degrees();
    std::vector<int> de(deg.begin(), deg.begin() + g.class_E);
    std::vector<int> dl(deg.begin() + g.class_E, deg.end());
    if (de.size() > dl.size()) std::swap(de, dl);
    return {std::move(de), std::move(dl)};
}

double slack_view(const Rational& lhs, const Rational& rhs) {
    if (rhs <= 0) return -std::numeric_limits<double>::infinity();
    if (lhs <= 0) return std::numeric_limits<double>::infinity();
    return log2_rational(rhs) - log2_rational(lhs);
}

BoundCheckResult make_result(Rational lhs, Rational rhs) {
    BoundCheckResult r;
    r.holds = lhs <= rhs;
    r.slack_log2 = slack_view(lhs, rhs);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    return r;
}

}  // namespace

DeficiencyReport deficiency(const BipartiteHostGraph& g, const Rational& d) {
    if (d <= 0) throw std::invalid_argument("deficiency: d must be positive");
    auto [deg_E, deg_O] = oriented_degrees(g);
    int n = g.num_vertices();

    DeficiencyReport rep;
    rep.d = d;
    rep.imbalance = static_cast<int>(deg_O.size() - deg_E.size());
    for (int dv : deg_E)
        if (Rational(dv) < d) ++rep.low_degree_E;
    rep.excess_O = 0;
    for (int dv : deg_O)
        if (Rational(dv) >= d) rep.excess_O += Rational(dv) - d;
    rep.h = 1 / d + Rational(rep.low_degree_E, n) + Rational(rep.imbalance, n) +
            rep.excess_O / (d * n);
    rep.zeta = std::max(std::sqrt(to_double(rep.h)),
                        std::sqrt(std::log2(static_cast<double>(n)) / n));
    return rep;
}

BoundCheckResult check_entropy_bound(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                     const WeightSystem& lambda, int d,
                                     std::uint64_t budget) {
    if (d < 1) throw std::invalid_argument("check_entropy_bound: d must be a positive integer");
    for (const auto& w : lambda.weights)
        if (w <= 1) {
            BoundCheckResult r;
            r.applicable = false;
            r.holds = false;
            r.note = "hypothesis lambda_i > 1 violated; bound not applicable";
            return r;
        }

    auto [deg_E, deg_O] = oriented_degrees(g);
    Rational z = partition_function(g, h, lambda, budget).value;

    int low = 0;
    for (int dv : deg_E)
        if (dv < d) ++low;
    // Both sides raised to the d-th power so the 1/d exponents become exact.
    Rational rhs = rational_pow(lambda.total(), static_cast<std::uint64_t>(d) * low);
    for (int dv : deg_O) rhs *= kdd_partition_function(dv, d, h, lambda).value;
    return make_result(rational_pow(z, d), std::move(rhs));
}

BoundCheckResult check_gt_bound(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                const WeightSystem& lambda, std::uint64_t budget) {
    auto deg = g.degrees();
    int d = deg.empty() ? 0 : deg[0];
    for (int dv : deg)
        if (dv != d) throw std::invalid_argument("check_gt_bound: G is not regular");
    if (d < 1) throw std::invalid_argument("check_gt_bound: G has isolated vertices");

    Rational z = partition_function(g, h, lambda, budget).value;
    Rational zkdd = kdd_partition_function(d, d, h, lambda).value;
    // Z^{2d} <= Z(K_{d,d})^N.
    return make_result(rational_pow(z, 2ull * d),
                       rational_pow(zkdd, static_cast<std::uint64_t>(g.num_vertices())));
}

BoundCheckResult eta_lower_bound(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                 const WeightSystem& lambda, std::uint64_t budget) {
    auto report = extremal_pairs(h, lambda);
    auto size_e = static_cast<std::uint64_t>(std::min(g.class_E, g.class_O));
    auto size_o = static_cast<std::uint64_t>(std::max(g.class_E, g.class_O));
    // M contains both orders of each pair, so the max already places the
    // heavier side on the larger class.
    Rational bound = 0;
    for (const auto& p : report.maximizers)
        bound = std::max(bound, rational_pow(subset_weight(lambda, p.A), size_e) *
                                    rational_pow(subset_weight(lambda, p.B), size_o));
    Rational z = partition_function(g, h, lambda, budget).value;
    return make_result(std::move(bound), std::move(z));
}

BoundCheckResult kdd_eta_upper_bound(int a, int b, const ConstraintGraph& h,
                                     const WeightSystem& lambda) {
    if (a < 0 || b < 0) throw std::invalid_argument("kdd_eta_upper_bound: negative size");
    auto report = extremal_pairs(h, lambda);
    Rational rhs = rational_pow(Rational(4), static_cast<std::uint64_t>(h.colour_count()));
    if (a >= b)
        rhs *= rational_pow(lambda.total(), static_cast<std::uint64_t>(a - b));
    rhs *= rational_pow(report.eta, static_cast<std::uint64_t>(b));
    Rational z = kdd_partition_function(a, b, h, lambda).value;
    return make_result(std::move(z), std::move(rhs));
}

TiltCheckResult check_tilt_inequality(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                      const WeightSystem& lambda, int k, const Rational& delta,
                                      int j, std::uint64_t budget) {
    if (delta <= 0) throw std::invalid_argument("check_tilt_inequality: delta must be positive");
    auto counts = occupancy_counts(g, h, lambda, k, budget);
    if (j < 0 || j > counts.host_size)
        throw std::invalid_argument("check_tilt_inequality: j out of range");

    Rational z_tilted = partition_function(g, h, tilt(lambda, k, delta).result, budget).value;

    TiltCheckResult result;
    Rational lhs = rational_pow(1 + delta, static_cast<std::uint64_t>(j)) *
                   counts.weight_by_count[j];
    result.per_term = make_result(std::move(lhs), z_tilted);

    // Z_{Lambda(k,delta)} = sum_j c_k(j) (1+delta)^j, exactly.
    Rational sum = 0;
    for (int i = 0; i <= counts.host_size; ++i)
        sum += counts.weight_by_count[i] * rational_pow(1 + delta, static_cast<std::uint64_t>(i));
    result.identity_holds = (sum == z_tilted);
    return result;
}

double eta_upper_diagnostic(const BipartiteHostGraph& g, const ConstraintGraph& h,
                            const WeightSystem& lambda, const Rational& d,
                            std::uint64_t budget) {
    Rational z = partition_function(g, h, lambda, budget).value;
    if (z == 0) return -std::numeric_limits<double>::infinity();
    auto report = extremal_pairs(h, lambda);
    double n = static_cast<double>(g.num_vertices());
    double excess = log2_rational(z) - (n / 2) * log2_rational(report.eta);
    return excess / (n * to_double(deficiency(g, d).h));
}

namespace {

// Visit all size-k subsets of {0..n-1}; visitor returns false to stop.
template <typename Visit>
bool for_each_combination(int n, int k, Visit&& visit) {
    if (k > n) return true;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (!visit(idx)) return false;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

ExpansionReport check_expansion(const BipartiteHostGraph& g, int d, double c_const,
                                const ExpansionMode& mode) {
    if (d < 3)
        throw std::invalid_argument(
            "check_expansion: requires d >= 3 (threshold degenerates for d <= 2)");
    if (c_const <= 0) throw std::invalid_argument("check_expansion: C must be positive");
    if (mode.exhaustive && (g.class_E > 20 || g.class_O > 20))
        throw std::invalid_argument("check_expansion: exhaustive mode needs class sizes <= 20");

    int n = g.num_vertices();
    double log_d = std::log(static_cast<double>(d));
    ExpansionReport rep;
    rep.d = d;
    rep.threshold = 3.0 * n * log_d / d;

    // Cross-adjacency, E side -> set of O neighbours and vice versa.
    std::vector<std::set<int>> nb_of_e(g.class_E), nb_of_o(g.class_O);
    for (auto [e, o] : g.edges) {
        nb_of_e[e].insert(o);
        nb_of_o[o].insert(e);
    }

    // Property 1: every subset of size j in [1, threshold] of either class
    // has at least j d / (C log d) distinct neighbours.
    int jmax = static_cast<int>(std::floor(rep.threshold));
    auto check_side = [&](const std::vector<std::set<int>>& nb, int side_size,
                          bool is_e_side) -> bool {
        for (int j = 1; j <= std::min(jmax, side_size); ++j) {
            int required = static_cast<int>(std::ceil(j * d / (c_const * log_d)));
            bool ok = for_each_combination(side_size, j, [&](const std::vector<int>& idx) {
                std::set<int> nbhd;
                for (int v : idx) nbhd.insert(nb[v].begin(), nb[v].end());
                if (static_cast<int>(nbhd.size()) < required) {
                    ExpansionWitness w;
                    w.property = 1;
                    w.subset_size = j;
                    (is_e_side ? w.subset_a : w.subset_b) = idx;
                    w.neighbours_found = static_cast<int>(nbhd.size());
                    w.neighbours_required = required;
                    rep.witness = std::move(w);
                    return false;
                }
                return true;
            });
            if (!ok) return false;
        }
        return true;
    };
    rep.property1_holds = check_side(nb_of_e, g.class_E, true) &&
                          check_side(nb_of_o, g.class_O, false);

    // Property 2: every size-ceil(threshold) E-subset / O-subset pair is
    // joined by at least one edge.
    int s2 = static_cast<int>(std::ceil(rep.threshold));
    auto pair_has_edge = [&](const std::vector<int>& a, const std::vector<int>& b) {
        for (int e : a)
            for (int o : b)
                if (nb_of_e[e].count(o)) return true;
        return false;
    };
    auto record_pair_witness = [&](const std::vector<int>& a, const std::vector<int>& b) {
        ExpansionWitness w;
        w.property = 2;
        w.subset_size = s2;
        w.subset_a = a;
        w.subset_b = b;
        rep.witness = std::move(w);
        rep.property2_holds = false;
    };
    if (s2 > g.class_E || s2 > g.class_O) {
        rep.property2_exhaustive = true;  // no pairs at this size, vacuous
    } else if (mode.exhaustive) {
        for_each_combination(g.class_E, s2, [&](const std::vector<int>& a) {
            return for_each_combination(g.class_O, s2, [&](const std::vector<int>& b) {
                if (!pair_has_edge(a, b)) {
                    record_pair_witness(a, b);
                    return false;
                }
                return true;
            });
        });
    } else {
        rep.property2_exhaustive = false;
        CounterRng rng(mode.seed.seed, 0x65787061ULL);
        auto sample_subset = [&](int size_of_class) {
            std::vector<int> pool(size_of_class);
            for (int i = 0; i < size_of_class; ++i) pool[i] = i;
            for (int i = 0; i < s2; ++i) {
                int j = i + static_cast<int>(rng.next_below(size_of_class - i));
                std::swap(pool[i], pool[j]);
            }
            pool.resize(s2);
            return pool;
        };
        for (int t = 0; t < mode.trials && rep.property2_holds; ++t) {
            auto a = sample_subset(g.class_E);
            auto b = sample_subset(g.class_O);
            if (!pair_has_edge(a, b)) record_pair_witness(a, b);
        }
    }
    return rep;
}

}  // namespace homoscope

#include "homoscope/extremal.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace homoscope {

Rational subset_weight(const WeightSystem& lambda, ColourMask subset) {
    Rational s = 0;
    while (subset) {
        int i = std::countr_zero(subset);
        s += lambda[i];
        subset &= subset - 1;
    }
    return s;
}

bool fully_adjacent(const ConstraintGraph& h, ColourMask a, ColourMask b) {
    ColourMask rest = a;
    while (rest) {
        int i = std::countr_zero(rest);
        if ((b & ~h.neighbours(i)) != 0) return false;
        rest &= rest - 1;
    }
    return true;
}

Rational pair_contribution(const WeightSystem& lambda, const SubsetPair& p, int k) {
    Rational c = 0;
    ColourMask bit = 1u << k;
    if (p.A & bit) c += lambda[k] / (2 * subset_weight(lambda, p.A));
    if (p.B & bit) c += lambda[k] / (2 * subset_weight(lambda, p.B));
    return c;
}

namespace {

// neighbourhoods[A] = set of colours adjacent to everything in A
// (the full colour set for A empty). Computed by subset DP.
std::vector<ColourMask> common_neighbourhoods(const ConstraintGraph& h) {
    int q = h.colour_count();
    std::vector<ColourMask> nbhd(std::size_t(1) << q);
    nbhd[0] = h.all_colours();
    for (ColourMask a = 1; a < nbhd.size(); ++a) {
        int low = std::countr_zero(a);
        nbhd[a] = nbhd[a & (a - 1)] & h.neighbours(low);
    }
    return nbhd;
}

}  // namespace

ExtremalReport extremal_pairs(const ConstraintGraph& h, const WeightSystem& lambda) {
    lambda.validate_for(h);
    int q = h.colour_count();
    auto nbhd = common_neighbourhoods(h);

    // For fixed A the product w(A)w(B) over B ~ A is maximized uniquely at
    // B = nbhd[A] (weights are strictly positive), so scanning the 2^q pairs
    // (A, nbhd[A]) is exhaustive: any maximizer with B a proper subset of
    // nbhd[A] would be beaten by (A, nbhd[A]).
    Rational eta = 0;
    std::vector<SubsetPair> maximizers;
    ColourMask full = h.all_colours();
    for (ColourMask a = 1; a <= full; ++a) {
        ColourMask b = nbhd[a];
        if (b == 0) continue;
        Rational product = subset_weight(lambda, a) * subset_weight(lambda, b);
        if (product > eta) {
            eta = product;
            maximizers.clear();
        }
        if (product == eta) maximizers.push_back(SubsetPair{a, b, product});
    }
    if (eta == 0) throw std::invalid_argument("extremal_pairs: H has no edge");

    ExtremalReport report;
    report.eta = eta;
    report.maximizers = std::move(maximizers);
    std::sort(report.maximizers.begin(), report.maximizers.end(),
              [](const SubsetPair& x, const SubsetPair& y) {
                  return x.A != y.A ? x.A < y.A : x.B < y.B;
              });

    report.a_minus.assign(q, Rational(0));
    report.a_plus.assign(q, Rational(0));
    for (int k = 0; k < q; ++k) {
        bool first = true;
        for (const auto& p : report.maximizers) {
            Rational c = pair_contribution(lambda, p, k);
            if (first) {
                report.a_minus[k] = report.a_plus[k] = c;
                first = false;
            } else {
                report.a_minus[k] = std::min(report.a_minus[k], c);
                report.a_plus[k] = std::max(report.a_plus[k], c);
            }
        }
    }
    return report;
}

bool OccupancyInterval::contains(const Rational& s) const {
    if (s < 0 || s > 1) return false;
    return s < low_end || s > high_start;
}

OccupancyInterval occupancy_interval(const ExtremalReport& report, int k, const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("occupancy_interval: eps must be positive");
    OccupancyInterval iv;
    iv.low_end = std::max(Rational(0), Rational(report.a_minus[k] - eps));
    iv.high_start = std::min(Rational(1), Rational(report.a_plus[k] + eps));
    return iv;
}

TiltedWeights tilt(const WeightSystem& lambda, int k, const Rational& delta) {
    if (delta <= 0) throw std::invalid_argument("tilt: delta must be positive");
    if (k < 0 || k >= lambda.size()) throw std::invalid_argument("tilt: colour out of range");
    TiltedWeights t;
    t.base = lambda;
    t.colour = k;
    t.delta = delta;
    auto w = lambda.weights;
    w[k] *= 1 + delta;
    t.result = WeightSystem(std::move(w));
    return t;
}

std::vector<SubsetPair> dominant_pairs(const ConstraintGraph& h, const WeightSystem& lambda,
                                       int k) {
    auto report = extremal_pairs(h, lambda);
    ColourMask bit = 1u << k;
    Rational best_b = -1, best_c = -1;
    std::vector<SubsetPair> out;
    for (const auto& p : report.maximizers) {
        Rational b = 0;
        if (p.B & bit) b += subset_weight(lambda, p.A) * lambda[k];
        if (p.A & bit) b += subset_weight(lambda, p.B) * lambda[k];
        Rational c = (p.A & p.B & bit) ? lambda[k] * lambda[k] : Rational(0);
        if (b > best_b || (b == best_b && c > best_c)) {
            best_b = b;
            best_c = c;
            out.clear();
        }
        if (b == best_b && c == best_c) out.push_back(p);
    }
    return out;
}

}  // namespace homoscope

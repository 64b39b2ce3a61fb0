// extremal.hpp -- extremal-pair structure of (H, Lambda): the maximum product
// eta over fully-adjacent subset pairs, the maximizer set, per-colour
// occupancy bounds a-/a+, tilted weight systems and dominant pairs.
#pragma once

#include "homoscope/model.hpp"
#include "homoscope/rational.hpp"

#include <vector>

namespace homoscope {

struct SubsetPair {
    ColourMask A = 0;
    ColourMask B = 0;
    Rational product;  // w(A) * w(B)

    bool operator==(const SubsetPair& other) const {
        return A == other.A && B == other.B;
    }
};

struct ExtremalReport {
    Rational eta;
    std::vector<SubsetPair> maximizers;      // complete list, sorted by (A, B)
    std::vector<Rational> a_minus, a_plus;   // per colour
};

Rational subset_weight(const WeightSystem& lambda, ColourMask subset);

// True iff every cross pair (u in A, v in B) is an edge of H; vacuous when
// either side is empty. u == v requires a loop.
bool fully_adjacent(const ConstraintGraph& h, ColourMask a, ColourMask b);

// Expected colour-k fraction of a pure-(A,B) colouring:
//   lambda_k 1{k in A} / 2w(A) + lambda_k 1{k in B} / 2w(B).
Rational pair_contribution(const WeightSystem& lambda, const SubsetPair& p, int k);

ExtremalReport extremal_pairs(const ConstraintGraph& h, const WeightSystem& lambda);

// The forbidden region [0, a-(k) - eps) u (a+(k) + eps, 1], clamped to [0,1].
struct OccupancyInterval {
    Rational low_end;     // left segment [0, low_end), empty when low_end <= 0
    Rational high_start;  // right segment (high_start, 1], empty when high_start >= 1
    bool contains(const Rational& s) const;
    bool left_empty() const { return low_end <= 0; }
    bool right_empty() const { return high_start >= 1; }
};

OccupancyInterval occupancy_interval(const ExtremalReport& report, int k, const Rational& eps);

struct TiltedWeights {
    WeightSystem base;
    int colour = 0;
    Rational delta;
    WeightSystem result;  // base with lambda_k scaled by (1 + delta)
};

TiltedWeights tilt(const WeightSystem& lambda, int k, const Rational& delta);

// S+(k, H): maximizers filtered by maximal b = w(A) lk 1{k in B} + w(B) lk 1{k in A},
// then by maximal c = lk^2 1{k in A n B}. Never empty.
std::vector<SubsetPair> dominant_pairs(const ConstraintGraph& h, const WeightSystem& lambda,
                                       int k);

}  // namespace homoscope

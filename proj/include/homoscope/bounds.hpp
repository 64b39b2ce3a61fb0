// bounds.hpp -- exact verification of the occupancy-bound inequalities on
// concrete instances. Verdicts are decided in exact rational arithmetic;
// fractional exponents are removed by cross-powering to integers.
#pragma once

#include "homoscope/exact.hpp"
#include "homoscope/extremal.hpp"
#include "homoscope/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace homoscope {

struct DeficiencyReport {
    Rational d;
    Rational h;          // deficiency functional h(G, d)
    double zeta = 0.0;   // max(sqrt(h), sqrt(log2 N / N))
    int low_degree_E = 0;
    int imbalance = 0;   // |O| - |E| after orientation
    Rational excess_O;   // sum over O of (d(v) - d)1{d(v) >= d}, pre-division
};

// Classes are auto-swapped so |O| >= |E|.
DeficiencyReport deficiency(const BipartiteHostGraph& g, const Rational& d);

struct BoundCheckResult {
    Rational lhs, rhs;          // cross-powered when the bound has 1/d exponents
    bool holds = false;         // lhs <= rhs, decided exactly
    bool applicable = true;     // false when a hypothesis fails (never "fails")
    double slack_log2 = 0.0;    // log2(rhs / lhs), float view
    std::string note;
};

// Z(G)^d <= w(H)^{d |{w in E: d(w) < d}|} prod_{v in O} Z(K_{d(v),d}).
// Hypothesis: every weight > 1; otherwise marked not applicable.
BoundCheckResult check_entropy_bound(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                     const WeightSystem& lambda, int d,
                                     std::uint64_t budget = kDefaultBudget);

// For d-regular G: Z(G)^{2d} <= Z(K_{d,d})^N. No weight hypothesis.
BoundCheckResult check_gt_bound(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                const WeightSystem& lambda,
                                std::uint64_t budget = kDefaultBudget);

// Z(G) >= max over maximizers of w(A)^{|E|} w(B)^{|O|}.
BoundCheckResult eta_lower_bound(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                 const WeightSystem& lambda,
                                 std::uint64_t budget = kDefaultBudget);

// Z(K_{a,b}) <= 4^q w(H)^{a-b} eta^b for a >= b, and <= 4^q eta^b otherwise.
BoundCheckResult kdd_eta_upper_bound(int a, int b, const ConstraintGraph& h,
                                     const WeightSystem& lambda);

struct TiltCheckResult {
    BoundCheckResult per_term;  // (1+delta)^j c_k(j) <= Z_{tilted}
    bool identity_holds = false;  // sum_j c_k(j)(1+delta)^j == Z_{tilted}
};

TiltCheckResult check_tilt_inequality(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                      const WeightSystem& lambda, int k, const Rational& delta,
                                      int j, std::uint64_t budget = kDefaultBudget);

// Diagnostic for the eta-based upper bound whose constant the analysis leaves
// free: log2(Z / eta^{N/2}) / (N h(G,d)).
double eta_upper_diagnostic(const BipartiteHostGraph& g, const ConstraintGraph& h,
                            const WeightSystem& lambda, const Rational& d,
                            std::uint64_t budget = kDefaultBudget);

struct ExpansionWitness {
    int property = 0;          // 1: vertex expansion, 2: cross pair without edge
    int subset_size = 0;
    std::vector<int> subset_a;  // E-side ids (property 1: the failing subset)
    std::vector<int> subset_b;  // O-side ids (property 2 only)
    int neighbours_found = 0;   // property 1
    int neighbours_required = 0;
};

struct ExpansionReport {
    int d = 0;
    double threshold = 0.0;  // 3 N ln(d) / d
    bool property1_holds = true;
    bool property2_holds = true;
    bool property2_exhaustive = true;
    std::optional<ExpansionWitness> witness;  // first violation found
};

struct ExpansionMode {
    bool exhaustive = true;
    RandomSeed seed;
    int trials = 0;  // sampled pairs for property 2 when not exhaustive
};

// Expansion checks at asymptotic parameter d (natural-log threshold).
// Requires d >= 3: for d <= 2 the threshold degenerates.
ExpansionReport check_expansion(const BipartiteHostGraph& g, int d, double c_const,
                                const ExpansionMode& mode);

}  // namespace homoscope

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "homoscope/extremal.hpp"

#include <algorithm>

using namespace homoscope;

namespace {

// Literal definition: scan all 4^q ordered subset pairs.
ExtremalReport brute_extremal(const ConstraintGraph& h, const WeightSystem& lambda) {
    ExtremalReport rep;
    rep.eta = 0;
    ColourMask full = h.all_colours();
    for (ColourMask a = 0; a <= full; ++a)
        for (ColourMask b = 0; b <= full; ++b) {
            if (!fully_adjacent(h, a, b)) continue;
            Rational prod = subset_weight(lambda, a) * subset_weight(lambda, b);
            if (prod > rep.eta) {
                rep.eta = prod;
                rep.maximizers.clear();
            }
            if (prod == rep.eta && prod > 0) rep.maximizers.push_back({a, b, prod});
        }
    std::sort(rep.maximizers.begin(), rep.maximizers.end(),
              [](const SubsetPair& x, const SubsetPair& y) {
                  return x.A != y.A ? x.A < y.A : x.B < y.B;
              });
    rep.a_minus.assign(h.colour_count(), 0);
    rep.a_plus.assign(h.colour_count(), 0);
    for (int k = 0; k < h.colour_count(); ++k) {
        bool first = true;
        for (const auto& p : rep.maximizers) {
            Rational c = pair_contribution(lambda, p, k);
            if (first || c < rep.a_minus[k]) rep.a_minus[k] = c;
            if (first || c > rep.a_plus[k]) rep.a_plus[k] = c;
            first = false;
        }
    }
    return rep;
}

void check_matches_brute(const ConstraintGraph& h, const WeightSystem& lambda) {
    auto fast = extremal_pairs(h, lambda);
    auto brute = brute_extremal(h, lambda);
    CHECK(fast.eta == brute.eta);
    REQUIRE(fast.maximizers.size() == brute.maximizers.size());
    for (std::size_t i = 0; i < fast.maximizers.size(); ++i) {
        CHECK(fast.maximizers[i].A == brute.maximizers[i].A);
        CHECK(fast.maximizers[i].B == brute.maximizers[i].B);
    }
    CHECK(fast.a_minus == brute.a_minus);
    CHECK(fast.a_plus == brute.a_plus);
}

}  // namespace

TEST_CASE("subset weight") {
    auto [h, lambda] = hard_core_model(Rational(1));
    CHECK(subset_weight(lambda, 0b11) == 2);
    CHECK(subset_weight(lambda, 0) == 0);
    auto [h2, l2] = multistate_model(2, Rational(1, 2));
    CHECK(subset_weight(l2, 0b111) == Rational(7, 4));
}

TEST_CASE("fully adjacent") {
    auto [h, lambda] = hard_core_model(Rational(1));
    CHECK(fully_adjacent(h, 0b01, 0b11));
    CHECK_FALSE(fully_adjacent(h, 0b10, 0b10));  // vertex 1 unlooped
    CHECK(fully_adjacent(h, 0, 0b11));           // vacuous
    CHECK(fully_adjacent(h, 0, 0));
}

TEST_CASE("hard-core extremal structure") {
    auto [h, lambda] = hard_core_model(Rational(1));
    auto rep = extremal_pairs(h, lambda);
    CHECK(rep.eta == 2);
    REQUIRE(rep.maximizers.size() == 2);
    CHECK(rep.maximizers[0].A == 0b01);
    CHECK(rep.maximizers[0].B == 0b11);
    CHECK(rep.maximizers[1].A == 0b11);
    CHECK(rep.maximizers[1].B == 0b01);
    CHECK(rep.a_minus[1] == Rational(1, 4));
    CHECK(rep.a_plus[1] == Rational(1, 4));
}

TEST_CASE("occupied-site bound is lambda/(2(1+lambda))") {
    for (const auto& l : {Rational(1, 2), Rational(1), Rational(2)}) {
        auto [h, lambda] = hard_core_model(l);
        auto rep = extremal_pairs(h, lambda);
        Rational expect = l / (2 * (1 + l));
        CHECK(rep.a_minus[1] == expect);
        CHECK(rep.a_plus[1] == expect);
    }
}

TEST_CASE("complete-graph bounds are 1/(2*ceil(q/2)) and 1/(2*floor(q/2))") {
    for (int q = 2; q <= 7; ++q) {
        auto [h, lambda] = complete_model(q);
        auto rep = extremal_pairs(h, lambda);
        Rational lo(1, 2 * ((q + 1) / 2)), hi(1, 2 * (q / 2));
        for (int k = 0; k < q; ++k) {
            CHECK(rep.a_minus[k] == lo);
            CHECK(rep.a_plus[k] == hi);
        }
        CHECK((rep.a_minus[0] == rep.a_plus[0]) == (q % 2 == 0));
    }
}

TEST_CASE("K3 uniform: all six singleton/pair splits maximize") {
    auto [h, lambda] = complete_model(3);
    auto rep = extremal_pairs(h, lambda);
    CHECK(rep.eta == 2);
    CHECK(rep.maximizers.size() == 6);
    for (const auto& p : rep.maximizers) {
        CHECK((p.A & p.B) == 0);
        CHECK((p.A | p.B) == h.all_colours());
    }
}

TEST_CASE("fast scan equals the 4^q definition") {
    for (const auto& l : {Rational(1, 2), Rational(1), Rational(2)}) {
        auto [h, lambda] = hard_core_model(l);
        check_matches_brute(h, lambda);
    }
    for (int k : {1, 2, 3}) {
        auto [h, lambda] = multistate_model(k, Rational(2, 3));
        check_matches_brute(h, lambda);
    }
    for (int q : {2, 3, 4}) {
        auto [h, lambda] = complete_model(q);
        check_matches_brute(h, lambda);
    }
    // Random constraint graphs with random rational weights.
    CounterRng rng(2024, 0);
    for (int trial = 0; trial < 50; ++trial) {
        int q = 2 + static_cast<int>(rng.next_below(4));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < q; ++i)
            for (int j = i; j < q; ++j)
                if (rng.next_below(2)) edges.emplace_back(i, j);
        if (edges.empty()) edges.emplace_back(0, q - 1);
        std::vector<Rational> w;
        for (int i = 0; i < q; ++i)
            w.emplace_back(Rational(1 + static_cast<int>(rng.next_below(12)), 4));
        check_matches_brute(ConstraintGraph(q, edges), WeightSystem(std::move(w)));
    }
}

TEST_CASE("maximizer invariants") {
    auto [h, lambda] = multistate_model(3, Rational(3, 2));
    auto rep = extremal_pairs(h, lambda);
    // Swap symmetry.
    for (const auto& p : rep.maximizers) {
        SubsetPair swapped{p.B, p.A, p.product};
        CHECK(std::find(rep.maximizers.begin(), rep.maximizers.end(), swapped) !=
              rep.maximizers.end());
        CHECK(p.product == rep.eta);
        // Contributions over colours sum to 1.
        Rational sum = 0;
        for (int k = 0; k < h.colour_count(); ++k) sum += pair_contribution(lambda, p, k);
        CHECK(sum == 1);
    }
    for (int k = 0; k < h.colour_count(); ++k) {
        CHECK(rep.a_minus[k] >= 0);
        CHECK(rep.a_minus[k] <= rep.a_plus[k]);
        CHECK(rep.a_plus[k] <= 1);
    }
}

TEST_CASE("scaling all weights by c scales eta by c^2 and fixes M, a-, a+") {
    auto [h, lambda] = multistate_model(2, Rational(4, 3));
    auto base = extremal_pairs(h, lambda);
    Rational c(7, 2);
    std::vector<Rational> scaled;
    for (const auto& w : lambda.weights) scaled.push_back(w * c);
    auto rep = extremal_pairs(h, WeightSystem(std::move(scaled)));
    CHECK(rep.eta == base.eta * c * c);
    REQUIRE(rep.maximizers.size() == base.maximizers.size());
    for (std::size_t i = 0; i < rep.maximizers.size(); ++i) {
        CHECK(rep.maximizers[i].A == base.maximizers[i].A);
        CHECK(rep.maximizers[i].B == base.maximizers[i].B);
    }
    CHECK(rep.a_minus == base.a_minus);
    CHECK(rep.a_plus == base.a_plus);
}

TEST_CASE("occupancy interval") {
    ExtremalReport rep;
    rep.a_minus = {Rational(1, 4)};
    rep.a_plus = {Rational(1, 4)};
    auto iv = occupancy_interval(rep, 0, Rational(1, 8));
    CHECK(iv.low_end == Rational(1, 8));
    CHECK(iv.high_start == Rational(3, 8));
    CHECK(iv.contains(Rational(1, 16)));
    CHECK(iv.contains(Rational(1, 2)));
    CHECK_FALSE(iv.contains(Rational(1, 4)));
    CHECK_FALSE(iv.contains(Rational(5, 4)));  // outside [0,1] entirely

    rep.a_plus = {Rational(1, 2)};
    iv = occupancy_interval(rep, 0, Rational(1, 4));
    CHECK(iv.left_empty());
    CHECK(iv.high_start == Rational(3, 4));

    iv = occupancy_interval(rep, 0, Rational(3, 4));
    CHECK(iv.left_empty());
    CHECK(iv.right_empty());
    CHECK_FALSE(iv.contains(Rational(0)));
    CHECK_FALSE(iv.contains(Rational(1)));
    CHECK_THROWS(occupancy_interval(rep, 0, Rational(0)));
}

TEST_CASE("tilting") {
    auto [h, lambda] = hard_core_model(Rational(1));
    auto t = tilt(lambda, 1, Rational(1));
    CHECK(t.result[0] == 1);
    CHECK(t.result[1] == 2);

    auto [h3, l3] = complete_model(3);
    auto t3 = tilt(l3, 0, Rational(1, 2));
    CHECK(t3.result.weights == std::vector<Rational>{Rational(3, 2), 1, 1});

    auto twice = tilt(tilt(lambda, 1, Rational(1, 3)).result, 1, Rational(1, 5));
    CHECK(twice.result[1] == Rational(4, 3) * Rational(6, 5));
    CHECK_THROWS(tilt(lambda, 1, Rational(0)));
    CHECK_THROWS(tilt(lambda, 5, Rational(1)));
}

TEST_CASE("dominant pairs") {
    auto [h, lambda] = hard_core_model(Rational(1));
    auto m = extremal_pairs(h, lambda).maximizers;
    for (int k : {0, 1}) {
        auto dom = dominant_pairs(h, lambda, k);
        CHECK(dom.size() == m.size());  // symmetric: both pairs survive
    }
    auto [h4, l4] = complete_model(4);
    auto dom4 = dominant_pairs(h4, l4, 2);
    // All 2/2 splits have equal b (colour on exactly one side) and c = 0.
    CHECK(dom4.size() == extremal_pairs(h4, l4).maximizers.size());
}

TEST_CASE("dominant pairs win after small tilts") {
    std::vector<std::pair<ConstraintGraph, WeightSystem>> models;
    models.push_back(hard_core_model(Rational(3, 2)));
    models.push_back(multistate_model(2, Rational(1)));
    models.push_back(complete_model(4));
    for (const auto& [h, lambda] : models)
        for (int k = 0; k < h.colour_count(); ++k)
            for (const auto& delta : {Rational(1, 1000), Rational(1, 1000000)}) {
                auto tilted = tilt(lambda, k, delta).result;
                auto m = extremal_pairs(h, lambda).maximizers;
                for (const auto& best : dominant_pairs(h, lambda, k)) {
                    Rational best_prod = subset_weight(tilted, best.A) *
                                         subset_weight(tilted, best.B);
                    for (const auto& p : m)
                        CHECK(best_prod >=
                              subset_weight(tilted, p.A) * subset_weight(tilted, p.B));
                }
            }
}

TEST_CASE("generic weights give one or two maximizers") {
    auto [h, unit] = complete_model(3);
    int small = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng rng(9000 + trial, 1);
        std::vector<Rational> w;
        for (int i = 0; i < 3; ++i)
            w.emplace_back(Rational(static_cast<long>(rng.next_below(1000000)) + 1, 1000000));
        auto rep = extremal_pairs(h, WeightSystem(std::move(w)));
        if (rep.maximizers.size() <= 2) ++small;
    }
    CHECK(small >= 990);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "homoscope/model.hpp"

#include <algorithm>
#include <set>

using namespace homoscope;

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(rational_to_string(Rational(6, 4)) == "3/2");
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("rational helpers") {
    CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(rational_pow(Rational(7), 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, 0) == 1);
    CHECK(log2_rational(Rational(8)) == doctest::Approx(3.0));
    // Far beyond double range.
    Rational huge = rational_pow(Rational(2), 5000);
    CHECK(log2_rational(huge) == doctest::Approx(5000.0));
    CHECK(to_double(Rational(1, 4)) == doctest::Approx(0.25));
}

TEST_CASE("hard-core constraint graph") {
    auto [h, lambda] = hard_core_model(Rational(1, 2));
    CHECK(h.colour_count() == 2);
    CHECK(h.has_edge(0, 0));
    CHECK(h.has_edge(0, 1));
    CHECK(h.has_edge(1, 0));
    CHECK_FALSE(h.has_edge(1, 1));
    CHECK(lambda[0] == 1);
    CHECK(lambda[1] == Rational(1, 2));
    auto edges = h.edge_list();
    CHECK(edges == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}});
}

TEST_CASE("multistate constraint graph: i+j <= k") {
    auto [h, lambda] = multistate_model(2, Rational(3));
    CHECK(h.colour_count() == 3);
    CHECK(h.has_edge(0, 0));
    CHECK(h.has_edge(0, 2));
    CHECK(h.has_edge(1, 1));
    CHECK_FALSE(h.has_edge(1, 2));
    CHECK_FALSE(h.has_edge(2, 2));
    CHECK(lambda[0] == 1);
    CHECK(lambda[1] == 3);
    CHECK(lambda[2] == 9);
}

TEST_CASE("complete constraint graph is loopless") {
    auto [h, lambda] = complete_model(4);
    for (int i = 0; i < 4; ++i) {
        CHECK_FALSE(h.has_edge(i, i));
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(h.has_edge(i, j));
    }
    CHECK(lambda.total() == 4);
}

TEST_CASE("preset dispatch") {
    auto [h, lambda] = preset_model("hard_core", {"2"});
    CHECK(h.colour_count() == 2);
    CHECK(lambda[1] == 2);
    CHECK_THROWS(preset_model("nonsense", {}));
}

TEST_CASE("constraint graph validation") {
    CHECK_THROWS_AS(ConstraintGraph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(ConstraintGraph(21, {}), std::invalid_argument);
    CHECK_THROWS_AS(WeightSystem({Rational(1), Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(WeightSystem({Rational(-1)}), std::invalid_argument);
}

TEST_CASE("complete bipartite and even cycles") {
    auto k33 = complete_bipartite(3, 3);
    CHECK(k33.class_E == 3);
    CHECK(k33.class_O == 3);
    CHECK(k33.edges.size() == 9);
    for (int deg : k33.degrees()) CHECK(deg == 3);

    auto c6 = even_cycle(6);
    CHECK(c6.num_vertices() == 6);
    CHECK(c6.edges.size() == 6);
    for (int deg : c6.degrees()) CHECK(deg == 2);
    CHECK_THROWS(even_cycle(5));
    CHECK_THROWS(even_cycle(2));
}

TEST_CASE("disjoint union is additive") {
    auto a = complete_bipartite(2, 2);
    auto b = even_cycle(6);
    auto u = disjoint_union({a, b});
    CHECK(u.class_E == a.class_E + b.class_E);
    CHECK(u.class_O == a.class_O + b.class_O);
    CHECK(u.edges.size() == a.edges.size() + b.edges.size());
}

TEST_CASE("configuration model degrees are exact over 100 seeds") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto g = random_regular_bipartite(5, 3, RandomSeed{s});
        for (int deg : g.degrees()) CHECK(deg == 3);
        CHECK(g.edges.size() == 15);
    }
}

TEST_CASE("configuration model simple mode and determinism") {
    auto g1 = random_regular_bipartite(6, 3, RandomSeed{7}, true);
    auto g2 = random_regular_bipartite(6, 3, RandomSeed{7}, true);
    CHECK(g1.edges == g2.edges);
    std::set<std::pair<int, int>> uniq(g1.edges.begin(), g1.edges.end());
    CHECK(uniq.size() == g1.edges.size());
}

TEST_CASE("percolation keeps classes and never adds edges") {
    auto g = complete_bipartite(3, 3);
    auto kept = percolate(g, 1.0, RandomSeed{1});
    CHECK(kept.edges == g.edges);
    auto none = percolate(g, 0.0, RandomSeed{1});
    CHECK(none.edges.empty());
    CHECK(none.class_E == 3);
    CHECK(none.class_O == 3);

    auto half1 = percolate(g, 0.5, RandomSeed{1});
    auto half2 = percolate(g, 0.5, RandomSeed{1});
    CHECK(half1.edges == half2.edges);
    std::set<std::pair<int, int>> all(g.edges.begin(), g.edges.end());
    for (auto e : half1.edges) CHECK(all.count(e));
    CHECK_THROWS(percolate(g, 1.5, RandomSeed{1}));
}

TEST_CASE("simple adjacency collapses parallel edges") {
    BipartiteHostGraph g;
    g.class_E = 1;
    g.class_O = 1;
    g.edges = {{0, 0}, {0, 0}};
    auto adj = g.simple_adjacency();
    CHECK(adj[0].size() == 1);
    CHECK(g.degrees()[0] == 2);
}

TEST_CASE("model file round trip") {
    auto [h, lambda] = hard_core_model(Rational(2, 3));
    ModelInstance m{h, lambda, even_cycle(4)};
    std::string path = "roundtrip_model.json";
    save_model(m, path);
    auto loaded = load_model(path);
    CHECK(loaded.h.edge_list() == m.h.edge_list());
    CHECK(loaded.lambda.weights == m.lambda.weights);
    CHECK(loaded.g.class_E == m.g.class_E);
    CHECK(loaded.g.edges == m.g.edges);
}

TEST_CASE("model parsing rejects bad files") {
    CHECK_THROWS(parse_model_json("not json"));
    // Colour out of range in H.
    CHECK_THROWS(parse_model_json(
        R"({"H":{"q":2,"edges":[[0,3]]},"lambda":["1","1"],"G":{"E":1,"O":1,"edges":[[0,0]]}})"));
    // Zero weight.
    CHECK_THROWS(parse_model_json(
        R"({"H":{"q":2,"edges":[[0,1]]},"lambda":["1","0"],"G":{"E":1,"O":1,"edges":[[0,0]]}})"));
    // Host edge out of range.
    CHECK_THROWS(parse_model_json(
        R"({"H":{"q":2,"edges":[[0,1]]},"lambda":["1","1"],"G":{"E":1,"O":1,"edges":[[0,5]]}})"));
}

TEST_CASE("counter rng is deterministic and in range") {
    CounterRng a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CounterRng c(42, 8);
    CHECK(CounterRng(42, 7).next_u64() != c.next_u64());

    CounterRng r(1, 2);
    for (int i = 0; i < 1000; ++i) {
        CHECK(r.next_below(10) < 10);
        double x = r.next_double();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    BigInt bound = BigInt(1) << 100;
    for (int i = 0; i < 50; ++i) {
        BigInt v = r.next_bigint_below(bound);
        CHECK(v >= 0);
        CHECK(v < bound);
    }
}

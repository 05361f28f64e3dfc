#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suites.hpp"

using namespace hb;
using namespace hbtest;

TEST_CASE("response_inverse hand cases") {
    Hypergraph leaf(2, {{0, 1}});
    DirectedSubtree s{&leaf, 0, 1};
    CHECK(response_inverse(s, 0.3) == doctest::Approx(0.3));
    CHECK(response_inverse(s, -4.0) == doctest::Approx(-4.0));

    // center 1 reached through edge {0,1}, with one more size-2 edge to leaf 2
    Hypergraph path(3, {{0, 1}, {1, 2}});
    DirectedSubtree c{&path, 0, 1};
    CHECK(response_inverse(c, 0.5) == doctest::Approx(0.0));
    CHECK(response_inverse(c, -1.0) == doctest::Approx(-2.0));

    // the whole tree seen from a root (no cut edge)
    DirectedSubtree whole{&path, Hypergraph::npos, 1};
    CHECK(response_inverse(whole, 0.5) == doctest::Approx(0.5 - 2 * 0.5));
}

TEST_CASE("root_load_exceeds hand cases") {
    Hypergraph star(3, {{0, 1}, {0, 2}});
    CHECK(root_load_exceeds(star, 0, 0.5));
    CHECK_FALSE(root_load_exceeds(star, 0, 0.7));
    CHECK_FALSE(root_load_exceeds(Hypergraph(1, {}), 0, 0.0));
    CHECK(root_load_exceeds(Hypergraph(1, {}), 0, -0.1));
    CHECK_THROWS_AS(root_load_exceeds(Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}), 0, 0.5), HypergraphError);
}

TEST_CASE("tree_loads hand cases") {
    for (int k = 2; k <= 6; ++k) {
        std::vector<Vertex> e(static_cast<std::size_t>(k));
        std::iota(e.begin(), e.end(), 0);
        for (double x : tree_loads(Hypergraph(static_cast<std::size_t>(k), {e}))) {
            CHECK(std::abs(x - 1.0 / k) <= 1e-9);
        }
    }
    for (double x : tree_loads(Hypergraph(3, {{0, 1}, {0, 2}}))) CHECK(std::abs(x - 2.0 / 3.0) <= 1e-9);
    // a path with three size-2 edges balances to 3/4 everywhere
    Hypergraph path(4, {{0, 1}, {1, 2}, {2, 3}});
    std::vector<double> oracle_loads = oracle::qp_loads(path, std::vector<double>(4, 0.0)).loads;
    std::vector<double> rec = tree_loads(path);
    for (std::size_t v = 0; v < 4; ++v) {
        CHECK(std::abs(rec[v] - 0.75) <= 1e-9);
        CHECK(std::abs(rec[v] - oracle_loads[v]) <= 1e-6);
    }
    CHECK(tree_loads(Hypergraph(2, {})) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("tree_loads agrees with balance on random hypertrees") {
    CHECK(tree_agreement_suite(41, 40) <= 1e-6);
}

TEST_CASE("threshold test is nonincreasing in t") {
    Rng rng = make_rng(42);
    for (int rep = 0; rep < 30; ++rep) {
        Hypergraph t = random_hypertree(rng, 30);
        Vertex root = static_cast<Vertex>(uniform_index(rng, t.num_vertices()));
        bool previous = true;
        for (double x = -1.0; x <= 4.0; x += 0.05) {
            bool now = root_load_exceeds(t, root, x);
            CHECK(!(now && !previous));
            previous = now;
        }
    }
}

// The forward response is nonexpansive; its inverse t - S(t), with S
// nonincreasing, therefore grows at least as fast as t and stays in [t - deg, t].
TEST_CASE("response_inverse increments dominate those of t") {
    Rng rng = make_rng(43);
    for (int rep = 0; rep < 30; ++rep) {
        Hypergraph t = random_hypertree(rng, 30);
        if (t.num_edges() == 0) continue;
        EdgeIndex e = static_cast<EdgeIndex>(uniform_index(rng, t.num_edges()));
        Vertex i = t.edge(e)[uniform_index(rng, t.edge(e).size())];
        DirectedSubtree s{&t, e, i};
        double prev_t = -2.0;
        double prev = response_inverse(s, prev_t);
        for (double x = -1.9; x <= 4.0; x += 0.1) {
            double cur = response_inverse(s, x);
            CHECK(cur - prev >= x - prev_t - 1e-12);
            CHECK(cur <= x + 1e-12);
            CHECK(cur >= x - static_cast<double>(t.degree(i)) - 1e-12);
            prev = cur;
            prev_t = x;
        }
    }
}

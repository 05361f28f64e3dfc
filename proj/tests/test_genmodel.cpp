#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace hb;
using namespace hbtest;

namespace {

// Types of the five-vertex worked example, as (size-2 count, size-3 count).
TypeSequence five_vertex_types() {
    auto g = [](int two, int three) {
        std::map<int, int> c;
        if (two) c[2] = two;
        if (three) c[3] = three;
        return TypeVector(c);
    };
    return {g(0, 2), g(1, 2), g(0, 3), g(1, 1), g(2, 1)};
}

bool within_3sigma(double hits, double trials, double p) {
    double sigma = std::sqrt(trials * p * (1.0 - p));
    return std::abs(hits - trials * p) <= 3.0 * sigma;
}

}  // namespace

TEST_CASE("TypeVector arithmetic") {
    TypeVector g = tv({{2, 1}, {3, 2}});
    CHECK(g[2] == 1);
    CHECK(g[5] == 0);
    CHECK(g.norm1() == 3);
    CHECK(g.height() == 3);
    CHECK(TypeVector{}.height() == 0);
    CHECK(g.plus_unit(2)[2] == 2);
    CHECK(g.minus_unit(2).counts == std::map<int, int>{{3, 2}});
    CHECK_THROWS(g.minus_unit(4));
    CHECK_THROWS(TypeVector(std::map<int, int>{{1, 1}}));
    CHECK_THROWS(TypeVector(std::map<int, int>{{2, -1}}));
}

TEST_CASE("TypeDistribution validation") {
    CHECK_THROWS(TypeDistribution({{tv({{2, 1}}), 0.4}}));
    CHECK_THROWS(TypeDistribution({{tv({{2, 1}}), 1.2}, {tv({}), -0.2}}));
    TypeDistribution p = acceptance_distribution();
    CHECK(p.expected_count(2) == doctest::Approx(1.0));
    CHECK(p.expected_count(3) == doctest::Approx(0.5));
    CHECK(p.edge_sizes() == std::vector<int>{2, 3});
    CHECK(p.max_degree() == 2);
    TypeDistribution round = type_distribution_from_json(to_json(p));
    CHECK(round.table() == p.table());
}

TEST_CASE("size-biased examples") {
    TypeDistribution a = size_biased(TypeDistribution::delta(tv({{2, 1}})), 2);
    CHECK(a.probability(TypeVector{}) == doctest::Approx(1.0));
    TypeDistribution b = size_biased(TypeDistribution({{tv({{2, 1}}), 0.5}, {tv({{2, 2}}), 0.5}}), 2);
    CHECK(b.probability(TypeVector{}) == doctest::Approx(1.0 / 3.0));
    CHECK(b.probability(tv({{2, 1}})) == doctest::Approx(2.0 / 3.0));
    TypeDistribution c = size_biased(acceptance_distribution(), 5);
    CHECK(c.probability(TypeVector{}) == doctest::Approx(1.0));
    TypeDistribution d = size_biased(acceptance_distribution(), 3);
    CHECK(d.probability(tv({{2, 1}})) == doctest::Approx(1.0));
}

TEST_CASE("size-biased weights sum to one") {
    Rng rng = make_rng(61);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<std::pair<TypeVector, double>> table;
        std::size_t support = pick(rng, 1, 5);
        double total = 0.0;
        for (std::size_t s = 0; s < support; ++s) {
            std::map<int, int> c;
            for (int k = 2; k <= 4; ++k) {
                int count = static_cast<int>(uniform_index(rng, 3));
                if (count) c[k] = count;
            }
            double w = 0.1 + uniform01(rng);
            table.emplace_back(TypeVector(c), w);
            total += w;
        }
        for (auto& [g, w] : table) w /= total;
        TypeDistribution p(table, 1e-9);
        for (int m = 2; m <= 5; ++m) {
            double sum = 0.0;
            for (const auto& [g, w] : size_biased(p, m).table()) sum += w;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("UGWT sampler") {
    TypeDistribution zero = TypeDistribution::delta(TypeVector{});
    for (int d : {0, 1, 3}) {
        RootedHypergraph t = sample_ugwt(zero, d, 5);
        CHECK(t.graph.num_vertices() == 1);
        CHECK(t.graph.num_edges() == 0);
    }
    RootedHypergraph one = sample_ugwt(TypeDistribution::delta(tv({{4, 1}})), 3, 5);
    CHECK(one.graph.num_edges() == 1);
    CHECK(one.graph.num_vertices() == 4);
    CHECK(sample_ugwt(acceptance_distribution(), 0, 9).graph.num_vertices() == 1);

    Rng rng = make_rng(62);
    SizeBiasedFamily fam(acceptance_distribution());
    for (int rep = 0; rep < 2000; ++rep) {
        RootedHypergraph t = sample_ugwt(fam, 1 + static_cast<int>(uniform_index(rng, 4)), rng);
        CHECK(is_hypertree(t.graph));
        CHECK(t.is_tree);
    }
    // the same seed gives the same tree
    CHECK(sample_ugwt(acceptance_distribution(), 4, 77).graph == sample_ugwt(acceptance_distribution(), 4, 77).graph);
}

TEST_CASE("GWT_k root law is the size-biased law") {
    TypeDistribution p({{tv({{2, 1}}), 0.5}, {tv({{2, 2}}), 0.5}});
    SizeBiasedFamily fam(p);
    CHECK(sample_gwt_k(TypeDistribution::delta(tv({{2, 1}})), 2, 3, 4).graph.num_vertices() == 1);
    Rng rng = make_rng(63);
    const int trials = 30000;
    int isolated = 0;
    for (int s = 0; s < trials; ++s) isolated += sample_gwt_k(fam, 2, 1, rng).graph.num_edges() == 0;
    CHECK(within_3sigma(isolated, trials, 1.0 / 3.0));
}

TEST_CASE("configuration model examples") {
    TypeSequence seq = five_vertex_types();
    MultiHypergraph h = sample_config(seq, 3);
    int two = 0, three = 0;
    for (const auto& e : h.edges) (e.size() == 2 ? two : three) += 1;
    CHECK(two == 2);
    CHECK(three == 3);
    CHECK(sample_config(seq, 3).edges == h.edges);

    TypeSequence pair{tv({{2, 1}}), tv({{2, 1}})};
    MultiHypergraph single = sample_config(pair, 8);
    REQUIRE(single.edges.size() == 1);
    std::vector<Vertex> e = single.edges[0];
    std::sort(e.begin(), e.end());
    CHECK(e == std::vector<Vertex>{0, 1});

    CHECK_THROWS(check_divisibility({tv({{2, 1}})}));
    CHECK_NOTHROW(check_divisibility(pair));
}

TEST_CASE("handshake per edge size") {
    Rng rng = make_rng(64);
    TypeDistribution p = acceptance_distribution();
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t n = pick(rng, 5, 300);
        TypeSequence seq = draw_type_sequence(p, n, rng);
        MultiHypergraph h = sample_config(seq, rng);
        std::map<int, long long> stubs, edges;
        for (const auto& g : seq) {
            for (auto [k, c] : g.counts) stubs[k] += c;
        }
        for (const auto& e : h.edges) edges[static_cast<int>(e.size())] += 1;
        for (auto [k, s] : stubs) CHECK(s == k * edges[k]);
        // every vertex appears in exactly as many size-k edges as its type says
        std::vector<std::map<int, int>> seen(n);
        for (const auto& e : h.edges) {
            for (Vertex v : e) seen[v][static_cast<int>(e.size())] += 1;
        }
        for (std::size_t v = 0; v < n; ++v) CHECK(seen[v] == seq[v].counts);
    }
}

TEST_CASE("pairings of four size-2 stubs are uniform") {
    TypeSequence seq(4, tv({{2, 1}}));
    Rng rng = make_rng(65);
    const int trials = 100000;
    std::map<Vertex, int> counts;
    for (int s = 0; s < trials; ++s) {
        MultiHypergraph h = sample_config(seq, rng);
        // identify the pairing by the partner of vertex 0
        Vertex partner = 0;
        for (const auto& f : h.edges) {
            if (f[0] == 0) partner = f[1];
            if (f[1] == 0) partner = f[0];
        }
        counts[partner] += 1;
    }
    CHECK(counts.size() == 3);
    for (const auto& [k, c] : counts) CHECK(within_3sigma(c, trials, 1.0 / 3.0));
}

TEST_CASE("erase examples") {
    MultiHypergraph worked{5, {{1, 3}, {4, 4}, {0, 1, 2}, {0, 1, 2}, {2, 3, 4}}};
    Hypergraph e = erase(worked);
    CHECK(e.edges() == std::vector<std::vector<Vertex>>{{1, 3}, {2, 3, 4}});
    MultiHypergraph simple{4, {{0, 1}, {1, 2, 3}}};
    CHECK(erase(simple).edges() == simple.edges);
    MultiHypergraph twins{3, {{0, 1}, {1, 0}}};
    CHECK(erase(twins).num_edges() == 0);
}

TEST_CASE("type sequence draws and divisibility repair") {
    TypeDistribution two = TypeDistribution::delta(tv({{2, 1}}));
    TypeSequence even = draw_type_sequence(two, 10, 1);
    for (const auto& g : even) CHECK(g == tv({{2, 1}}));
    TypeSequence odd = draw_type_sequence(two, 11, 1);
    int repaired = 0;
    for (const auto& g : odd) {
        if (g == tv({{2, 2}})) ++repaired;
        else CHECK(g == tv({{2, 1}}));
    }
    CHECK(repaired == 1);
    CHECK_NOTHROW(check_divisibility(odd));

    Rng rng = make_rng(66);
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = pick(rng, 1, 50);
        CHECK_NOTHROW(check_divisibility(draw_type_sequence(acceptance_distribution(), n, rng)));
    }

    const std::size_t n = 40000;
    int with_three = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (const auto& g : draw_type_sequence(acceptance_distribution(), n, seed)) with_three += g[3] > 0;
    }
    CHECK(within_3sigma(with_three, 5.0 * n, 0.5));
}

TEST_CASE("type sequence JSON") {
    TypeSequence seq = five_vertex_types();
    CHECK(type_sequence_from_json(to_json(seq)) == seq);
    TypeSequence parsed = parse_type_sequence(R"({"types":[{"2":1},{"2":1,"3":1}]})");
    CHECK(parsed[1] == tv({{2, 1}, {3, 1}}));
}

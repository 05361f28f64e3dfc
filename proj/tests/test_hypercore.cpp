#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace hb;
using namespace hbtest;

namespace {

Hypergraph triangle() { return Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}); }
Hypergraph fig1() { return Hypergraph(4, {{0, 1, 2}, {1, 3}, {2, 3}}); }

}  // namespace

TEST_CASE("parse accepts valid input and rejects non-simple edges") {
    Hypergraph t = parse_hypergraph(R"({"n":3,"edges":[[0,1],[1,2],[0,2]]})");
    CHECK(t == triangle());
    Hypergraph empty = parse_hypergraph(R"({"n":2,"edges":[]})");
    CHECK(empty.num_edges() == 0);
    CHECK_THROWS_AS(parse_hypergraph(R"({"n":2,"edges":[[0,0]]})"), HypergraphError);
    CHECK_THROWS_AS(parse_hypergraph(R"({"n":2,"edges":[[0,2]]})"), HypergraphError);
    CHECK_THROWS_AS(parse_hypergraph(R"({"n":3,"edges":[[0,1],[1,0]]})"), HypergraphError);
    CHECK_THROWS_AS(parse_hypergraph(R"({"n":3,"edges":[[0]]})"), HypergraphError);
    CHECK_THROWS(parse_hypergraph("not json"));
    CHECK(hypergraph_from_json(to_json(fig1())) == fig1());
}

TEST_CASE("degree") {
    CHECK(degree(triangle(), 0) == 2);
    CHECK(degree(Hypergraph(2, {}), 0) == 0);
    CHECK(degree(fig1(), 3) == 2);
}

TEST_CASE("handshake identity on random hypergraphs") {
    Rng rng = make_rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        Hypergraph h = random_hypergraph(rng, 25);
        std::size_t by_edges = 0, by_vertices = 0;
        for (const auto& e : h.edges()) by_edges += e.size();
        for (Vertex v = 0; v < h.num_vertices(); ++v) by_vertices += degree(h, v);
        CHECK(by_edges == by_vertices);
        CHECK(by_edges == h.num_pairs());
    }
}

TEST_CASE("ball examples") {
    RootedHypergraph b0 = ball(triangle(), 0, 0);
    CHECK(b0.graph.num_vertices() == 1);
    CHECK(b0.graph.num_edges() == 0);
    CHECK(b0.is_tree);
    RootedHypergraph b1 = ball(triangle(), 0, 1);
    CHECK(b1.graph.num_vertices() == 3);
    CHECK(b1.graph.num_edges() == 3);
    CHECK_FALSE(b1.is_tree);
    RootedHypergraph f = ball(fig1(), 0, 1);
    CHECK(f.graph.num_vertices() == 3);
    CHECK(f.graph.num_edges() == 1);
    CHECK(f.is_tree);
    CHECK(f.original[f.root] == 0);
}

TEST_CASE("ball keeps original labels for pull-back") {
    Hypergraph h = fig1();
    RootedHypergraph b = ball(h, 3, 1);
    CHECK(b.original[b.root] == 3);
    for (const auto& e : b.graph.edges()) {
        std::vector<Vertex> orig;
        for (Vertex v : e) orig.push_back(b.original[v]);
        std::sort(orig.begin(), orig.end());
        bool found = false;
        for (const auto& f : h.edges()) {
            std::vector<Vertex> s = f;
            std::sort(s.begin(), s.end());
            found = found || s == orig;
        }
        CHECK(found);
    }
}

TEST_CASE("hypertree examples") {
    CHECK_FALSE(is_hypertree(triangle()));
    CHECK(is_hypertree(Hypergraph(3, {{0, 1, 2}})));
    CHECK_FALSE(is_hypertree(Hypergraph(4, {{0, 1, 2}, {0, 1, 3}})));
    CHECK(is_hypertree(Hypergraph(5, {})));
}

TEST_CASE("hypertree check agrees with closed-path search") {
    Rng rng = make_rng(12);
    int trees = 0;
    for (int rep = 0; rep < 3000; ++rep) {
        std::size_t n = pick(rng, 2, 8);
        std::size_t m = pick(rng, 0, 6);
        Hypergraph h = random_hypergraph(rng, n, m, 2, std::min<std::size_t>(n, 4));
        bool expect = !oracle::has_closed_path(h);
        trees += expect;
        REQUIRE(is_hypertree(h) == expect);
    }
    CHECK(trees > 100);
}

TEST_CASE("truncate examples and properties") {
    CHECK(truncate(triangle(), 2) == triangle());
    CHECK(truncate(triangle(), 1).num_edges() == 0);
    Hypergraph f = truncate(fig1(), 2);
    CHECK(f.edges() == std::vector<std::vector<Vertex>>{{1, 3}, {2, 3}});

    Rng rng = make_rng(13);
    for (int rep = 0; rep < 200; ++rep) {
        Hypergraph h = random_hypergraph(rng, 20);
        for (std::size_t d = 1; d <= 6; ++d) {
            Hypergraph once = truncate(h, d);
            CHECK(truncate(once, d) == once);
            std::set<std::vector<Vertex>> small(once.edges().begin(), once.edges().end());
            Hypergraph wider = truncate(h, d + 1);
            std::set<std::vector<Vertex>> big(wider.edges().begin(), wider.edges().end());
            CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
    }
}

TEST_CASE("canonical code examples") {
    Hypergraph iso1(1, {});
    Hypergraph iso3(3, {});
    CHECK(canonical_code(iso1, 0) == canonical_code(iso3, 2));
    Hypergraph star_a(3, {{0, 1}, {0, 2}});
    Hypergraph star_b(3, {{0, 2}, {0, 1}});
    CHECK(canonical_code(star_a, 0) == canonical_code(star_b, 0));
    CHECK(canonical_code(Hypergraph(2, {{0, 1}}), 0) != canonical_code(Hypergraph(3, {{0, 1, 2}}), 0));
    CHECK_THROWS_AS(canonical_code(triangle(), 0), HypergraphError);
    // Root position matters: center vs. leaf of a star.
    CHECK(canonical_code(star_a, 0) != canonical_code(star_a, 1));
}

TEST_CASE("canonical code equality matches brute-force rooted isomorphism") {
    Rng rng = make_rng(14);
    int iso = 0, non_iso = 0;
    for (int rep = 0; rep < 10000; ++rep) {
        Hypergraph a = random_hypertree(rng, 7, 3);
        Vertex ra = static_cast<Vertex>(uniform_index(rng, a.num_vertices()));
        Hypergraph b = a;
        Vertex rb = 0;
        if (rep % 2 == 0) {
            b = random_hypertree(rng, 7, 3);
            rb = static_cast<Vertex>(uniform_index(rng, b.num_vertices()));
        } else {
            // relabeled copy of a, rooted anywhere
            std::vector<Vertex> perm(a.num_vertices());
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
            std::vector<std::vector<Vertex>> edges;
            for (const auto& e : a.edges()) {
                std::vector<Vertex> f;
                for (Vertex v : e) f.push_back(perm[v]);
                edges.push_back(std::move(f));
            }
            b = Hypergraph(a.num_vertices(), std::move(edges));
            rb = static_cast<Vertex>(uniform_index(rng, b.num_vertices()));
        }
        bool same_code = canonical_code(a, ra) == canonical_code(b, rb);
        bool brute = oracle::rooted_isomorphic(a, ra, b, rb);
        REQUIRE(same_code == brute);
        (brute ? iso : non_iso) += 1;
    }
    CHECK(iso > 200);
    CHECK(non_iso > 200);
}

TEST_CASE("induced sub-hypergraph") {
    std::vector<Vertex> keep{3, 1, 2};
    Hypergraph s = induced(fig1(), keep);
    CHECK(s.num_vertices() == 3);
    CHECK(s.num_edges() == 2);
}

TEST_CASE("multihypergraph and baseload formats") {
    MultiHypergraph m = parse_multihypergraph(R"({"n":3,"multi":true,"edges":[[0,0],[1,2],[1,2]]})");
    CHECK(m.edges.size() == 3);
    MultiHypergraph round = multihypergraph_from_json(to_json(m));
    CHECK(round.edges == m.edges);
    Baseload b = parse_baseload(R"({"b":[0.3, 0.7]})", 2);
    CHECK(b[1] == doctest::Approx(0.7));
    CHECK_THROWS(parse_baseload(R"({"b":[0.3]})", 2));
}

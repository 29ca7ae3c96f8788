#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rml/constructions.hpp"
#include "rml/core/hypergraph.hpp"
#include "rml/core/io.hpp"
#include "rml/lab/random_instances.hpp"

using namespace rml;

namespace {

VertexId V(int cls, int pos) { return {cls, pos}; }

}  // namespace

TEST_CASE("degree of a U1 vertex in H3(10;1,1,1)")
{
    auto h = build_extremal({3, 3, 10, {1, 1, 1}});
    // Partner pairs (b, c) with b in W2 or c in W3: 10 + 10 - 1.
    CHECK(degree(h, VertexSet{V(0, 5)}) == 19);
    CHECK(degree(h, VertexSet{}) == h.num_edges());
    CHECK(degree(h, VertexSet{V(0, 1), V(0, 2)}) == 0);
    CHECK_THROWS_AS(degree(h, VertexSet{V(0, 10)}), InputError);
}

TEST_CASE("min_l_degree examples")
{
    auto h = build_extremal({3, 3, 10, {1, 1, 1}});
    CHECK(min_l_degree(h, 1) == 19);
    CHECK(min_l_degree(h, 1) == oracle::min_vertex_degree(h));
    CHECK(min_l_degree(complete_hypergraph({2, 2, 2}, 3), 1) == 4);
    CHECK(min_l_degree(KPartiteHypergraph({2, 2, 2}, 3), 1) == 0);
    CHECK_THROWS_AS(min_l_degree(h, 3), InputError);
    CHECK_THROWS_AS(min_l_degree(h, 0), InputError);
}

TEST_CASE("min_l_degree for pairs matches a direct count")
{
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto h = lab::random_hypergraph({2, 3, 2}, 3, 0.6, rng);
        std::size_t best = SIZE_MAX;
        for_each_legal_tuple(h.class_sizes(), 2, [&](const Edge& t) {
            std::size_t d = 0;
            for (const auto& e : h.edges()) d += (e.contains(t[0]) && e.contains(t[1])) ? 1 : 0;
            best = std::min(best, d);
        });
        CHECK(min_l_degree(h, 2) == best);
    }
}

TEST_CASE("neighborhood examples")
{
    KPartiteHypergraph single({2, 2, 2}, 3, {Edge{V(0, 0), V(1, 1), V(2, 0)}});
    auto n1 = neighborhood(single, VertexSet{V(0, 0), V(1, 1), V(2, 0)});
    REQUIRE(n1.size() == 1);
    CHECK(n1[0].empty());

    auto h = build_extremal({3, 3, 3, {1, 1, 1}});
    auto nw = neighborhood(h, VertexSet{V(0, 0)});
    CHECK(nw.size() == 9);
    CHECK(neighborhood(single, VertexSet{V(0, 1)}).empty());
}

TEST_CASE("neighborhood size equals degree, degree antitone")
{
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto h = lab::random_hypergraph({3, 2, 3, 2}, 3, 0.4, rng);
        for_each_legal_tuple(h.class_sizes(), 1, [&](const Edge& a) {
            VertexSet t{a[0]};
            CHECK(neighborhood(h, t).size() == degree(h, t));
            for (const auto& u : h.vertices()) {
                if (u.cls == a[0].cls) continue;
                VertexSet t2{a[0], u};
                CHECK(degree(h, t2) <= degree(h, t));
                CHECK(neighborhood(h, t2).size() == degree(h, t2));
            }
        });
    }
}

TEST_CASE("remove_vertices examples")
{
    auto k = complete_hypergraph({2, 2, 2}, 3);
    auto same = remove_vertices(k, {});
    CHECK(same.graph == k);
    auto one = remove_vertices(k, VertexSet{V(1, 0)});
    CHECK(one.graph.num_edges() == 4);
    CHECK(one.graph.class_sizes() == std::vector<int>{2, 1, 2});
    CHECK(one.to_old(V(1, 0)) == V(1, 1));

    auto h = build_extremal({3, 3, 3, {1, 1, 1}});
    auto r = remove_vertices(h, VertexSet{V(0, 0), V(1, 0), V(2, 0)});
    CHECK(r.graph.num_edges() == 0);
}

TEST_CASE("remove_vertices composes")
{
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto h = lab::random_hypergraph({4, 4, 4}, 3, 0.5, rng);
        VertexSet s1{V(0, 1), V(2, 3)};
        auto a = remove_vertices(h, s1);
        // V(1,2) in the original is still at (1,2) after s1.
        auto b = remove_vertices(a.graph, VertexSet{V(1, 2), V(0, 0)});
        auto c = remove_vertices(h, VertexSet{V(0, 1), V(2, 3), V(1, 2), V(0, 0)});
        CHECK(b.graph == c.graph);
        for (const auto& e : c.graph.edges()) CHECK(h.contains(c.to_old(e)));
    }
}

TEST_CASE("is_stable examples")
{
    CHECK(is_stable(complete_hypergraph({3, 2, 2}, 3)));
    CHECK_FALSE(is_stable(KPartiteHypergraph({2, 2, 2}, 3, {Edge{V(0, 1), V(1, 0), V(2, 0)}})));
    CHECK(is_stable(KPartiteHypergraph({2, 2, 2}, 3)));
    // The balanced construction with W at the lowest positions is stable.
    CHECK(is_stable(build_balanced(4, 3)));
}

TEST_CASE("is_stable survives removing a top vertex")
{
    auto h = build_balanced(4, 5);
    REQUIRE(is_stable(h));
    for (int c = 0; c < 3; ++c) CHECK(is_stable(remove_vertices(h, VertexSet{V(c, 3)}).graph));
}

TEST_CASE("max_codegree examples")
{
    CHECK(max_codegree(complete_hypergraph({3, 3, 3}, 3)) == 3);
    CHECK(max_codegree(KPartiteHypergraph({2, 2, 2}, 3, {Edge{V(0, 0), V(1, 0), V(2, 0)}})) == 1);
    CHECK(max_codegree(KPartiteHypergraph({2, 2, 2}, 3)) == 0);
}

TEST_CASE("edges and vertex sets reject illegal input")
{
    CHECK_THROWS_AS((Edge{V(0, 0), V(0, 1)}), InputError);
    CHECK_THROWS_AS(KPartiteHypergraph({2, 2}, 2, {Edge{V(0, 0), V(1, 2)}}), InputError);
    CHECK_THROWS_AS(KPartiteHypergraph({2, 0}, 2), InputError);
    CHECK_THROWS_AS(KPartiteHypergraph({2, 2}, 2, {Edge{V(0, 0)}}), InputError);
    CHECK((VertexSet{V(0, 0), V(1, 0), V(2, 1)}).is_balanced(3));
    CHECK_FALSE((VertexSet{V(0, 0), V(0, 1), V(2, 1)}).is_legal());
}

TEST_CASE("serialization round-trips")
{
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto sizes = lab::random_class_sizes(3, 1, 4, rng);
        auto h = lab::random_hypergraph(sizes, 2 + static_cast<int>(rng.below(2)), 0.4, rng);
        CHECK(parse_hypergraph(serialize(h)) == h);
    }
}

TEST_CASE("parser errors carry line numbers")
{
    CHECK_THROWS_AS(parse_hypergraph(""), InputError);
    CHECK_THROWS_AS(parse_hypergraph("3 3 2 2\n"), InputError);
    try {
        parse_hypergraph("3 3 2 2 2\n1:1 2:1 3:3\n");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

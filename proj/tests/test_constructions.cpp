#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rml/constructions.hpp"
#include "rml/solvers.hpp"

using namespace rml;

TEST_CASE("delta_threshold by direct substitution")
{
    auto t10 = delta_threshold(10);
    CHECK((t10.r == 3 && t10.s == 1 && t10.delta == 51));
    auto t11 = delta_threshold(11);
    CHECK((t11.r == 3 && t11.s == 2 && t11.delta == 58));
    auto t12 = delta_threshold(12);
    CHECK((t12.r == 3 && t12.s == 3 && t12.delta == 72));
    CHECK(delta_threshold(4).delta == 7);
    CHECK_THROWS_AS(delta_threshold(0), InputError);
}

TEST_CASE("d3_threshold examples")
{
    CHECK(d3_threshold(10, 3) == 19);
    CHECK(d3_threshold(10, 2) == 10);
    CHECK(d3_threshold(10, 4) == 19);
    CHECK(oracle::min_vertex_degree(build_extremal({3, 3, 10, {2, 1, 1}})) == 19);
    CHECK_THROWS_AS(d3_threshold(3, 4), InputError);
}

TEST_CASE("d3_threshold equals brute-force min degree of H3(n,m)")
{
    for (int n = 2; n <= 8; ++n)
        for (int m = 0; m <= n; ++m) {
            INFO("n=" << n << " m=" << m);
            CHECK(static_cast<std::int64_t>(oracle::min_vertex_degree(build_balanced(n, m))) == d3_threshold(n, m));
        }
}

TEST_CASE("delta threshold matches H3(n,n-1) away from s = 2")
{
    for (int n = 2; n <= 8; ++n) {
        auto t = delta_threshold(n);
        auto brute = static_cast<std::int64_t>(oracle::min_vertex_degree(build_balanced(n, n - 1)));
        INFO("n=" << n << " s=" << t.s);
        if (t.s == 2)
            CHECK(t.delta == brute + 1);
        else
            CHECK(t.delta == brute);
    }
}

TEST_CASE("extremal edge counts")
{
    CHECK(build_extremal({3, 3, 3, {1, 1, 1}}).num_edges() == 19);
    CHECK(build_extremal({3, 3, 3, {1, 1, 1}, ExtremalVariant::WAndUHitting}).num_edges() == 18);
    CHECK(build_extremal({4, 3, 3, {0, 0, 0, 0}}).num_edges() == 0);
    CHECK_THROWS_AS(build_extremal({3, 3, 3, {4, 0, 0}}), InputError);
    CHECK_THROWS_AS(build_extremal({3, 3, 3, {1, 1}}), InputError);
}

TEST_CASE("primed construction is a subgraph")
{
    for (int n = 1; n <= 4; ++n)
        for (int m = 0; m <= n; ++m) {
            auto h = build_balanced(n, m);
            auto hp = build_balanced(n, m, ExtremalVariant::WAndUHitting);
            for (const auto& e : hp.edges()) CHECK(h.contains(e));
        }
}

TEST_CASE("balanced parts")
{
    CHECK(balanced_parts(3, 3) == std::vector<int>{1, 1, 1});
    CHECK(balanced_parts(4, 3) == std::vector<int>{2, 1, 1});
    CHECK(build_balanced(5, 0).num_edges() == 0);
    // Every edge of H3(n,m) meets W = lowest positions.
    auto h = build_balanced(6, 4);
    for (const auto& e : h.edges()) CHECK((e[0].pos < 2 || e[1].pos < 1 || e[2].pos < 1));
}

TEST_CASE("matching number of H3(n,m) is m")
{
    for (int n = 2; n <= 4; ++n)
        for (int m = 0; m <= n; ++m) CHECK(oracle::max_matching(build_balanced(n, m)) == m);
}

TEST_CASE("star member")
{
    auto s = build_star_member(3, 1);
    CHECK(s.num_edges() == 9);
    CHECK(oracle::max_matching(s) == 1);
    CHECK(oracle::max_matching(build_star_member(4, 2)) == 2);
    std::vector<Edge> tri{Edge{{0, 2}, {1, 2}, {2, 2}}, Edge{{0, 2}, {1, 1}, {2, 0}}};
    CHECK(build_star_member(3, 1, tri).num_edges() == 2);
    std::vector<Edge> bad{Edge{{0, 2}, {1, 2}, {2, 2}}, Edge{{0, 1}, {1, 1}, {2, 1}}};
    CHECK_THROWS_AS(build_star_member(3, 1, bad), InputError);
}

TEST_CASE("lift_family")
{
    auto k = complete_hypergraph({2, 2, 2}, 3);
    auto lifted = lift_family({k, k});
    CHECK(lifted.num_edges() == 16);
    CHECK(lifted.class_sizes() == std::vector<int>{2, 2, 2, 2});
    CHECK(lift_family({KPartiteHypergraph({2, 2, 2}, 3)}).num_edges() == 0);
    for (const auto& e : lifted.edges()) {
        auto [color, orig] = unlift_edge(e);
        CHECK(color == e[0].pos);
        CHECK(k.contains(orig));
    }
    CHECK(build_h13(3) == lift_family(repeat_family(build_balanced(3, 3), 3)));
    CHECK(build_h13(3, ExtremalVariant::WAndUHitting).num_edges() == 3 * build_balanced(3, 3, ExtremalVariant::WAndUHitting).num_edges());
}

TEST_CASE("H32 is a 3-partite 2-graph hitting W")
{
    auto g = build_h32(6);
    CHECK(g.uniformity() == 2);
    // 3 class pairs, each with 36 - 4*4 edges meeting W.
    CHECK(g.num_edges() == 3 * (36 - 16));
}

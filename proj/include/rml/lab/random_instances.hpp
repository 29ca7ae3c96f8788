#pragma once

// Seeded random hypergraphs and families.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rml/core/hypergraph.hpp"
#include "rml/error.hpp"
#include "rml/random.hpp"

namespace rml::lab {

/// Each legal l-tuple independently with probability p (canonical order of
/// draws). Vertices below `degree_floor` then receive uniformly random
/// extra edges through them, in vertex order, until they reach it.
inline KPartiteHypergraph random_hypergraph(const std::vector<int>& class_sizes, int l, double p, Rng& rng, int degree_floor = 0)
{
    if (p < 0 || p > 1) throw InputError("random_hypergraph: p must lie in [0,1]");
    if (degree_floor < 0) throw InputError("random_hypergraph: degree floor must be nonnegative");
    std::vector<Edge> edges;
    for_each_legal_tuple(class_sizes, l, [&](const Edge& e) {
        if (rng.bernoulli(p)) edges.push_back(e);
    });
    if (degree_floor == 0) return KPartiteHypergraph(class_sizes, l, std::move(edges));

    KPartiteHypergraph h(class_sizes, l, edges);
    const int k = static_cast<int>(class_sizes.size());
    for (const auto& v : h.vertices()) {
        // Edges through v: v's class plus l-1 of the others.
        std::vector<Edge> through;
        std::vector<int> others;
        for (int c = 0; c < k; ++c)
            if (c != v.cls) others.push_back(c);
        std::vector<int> sub_sizes;
        for (int c : others) sub_sizes.push_back(class_sizes[c]);
        for_each_legal_tuple(sub_sizes, l - 1, [&](const Edge& rest) {
            std::vector<VertexId> vs{v};
            for (const auto& u : rest) vs.push_back({others[u.cls], u.pos});
            Edge e{std::span<const VertexId>(vs)};
            if (!h.contains(e)) through.push_back(e);
        });
        std::size_t have = h.vertex_degree(v);
        while (have < static_cast<std::size_t>(degree_floor) && !through.empty()) {
            std::size_t i = static_cast<std::size_t>(rng.below(through.size()));
            edges.push_back(through[i]);
            through.erase(through.begin() + static_cast<std::ptrdiff_t>(i));
            ++have;
        }
        h = KPartiteHypergraph(class_sizes, l, edges);
    }
    return h;
}

inline Family random_family(const std::vector<int>& class_sizes, int colors, double p, Rng& rng, int degree_floor = 0)
{
    Family f;
    for (int i = 0; i < colors; ++i) f.push_back(random_hypergraph(class_sizes, static_cast<int>(class_sizes.size()), p, rng, degree_floor));
    return f;
}

/// Class sizes each uniform in [lo, hi], redrawn until max ≤ (3/2)·min.
inline std::vector<int> random_class_sizes(int k, int lo, int hi, Rng& rng)
{
    for (;;) {
        std::vector<int> s(static_cast<std::size_t>(k));
        for (auto& x : s) x = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        auto [mn, mx] = std::minmax_element(s.begin(), s.end());
        if (2 * *mx <= 3 * *mn) return s;
    }
}

}  // namespace rml::lab

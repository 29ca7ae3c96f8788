#pragma once

// Extremal constructions H_{k,l}(n; d_1..d_k) and their primed variants,
// the balanced members H_k(n, m), the star member of the intersecting
// family class, the 4-partite color lift, and the closed-form degree
// thresholds.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rml/core/hypergraph.hpp"

namespace rml {

enum class ExtremalVariant
{
    WHitting,      ///< every edge meets W
    WAndUHitting,  ///< every edge meets both W and V \ W
};

/// Parameters naming H_{k,l}(n; d) or H'_{k,l}(n; d). W_i occupies the
/// lowest d_i positions of class i.
struct ExtremalSpec
{
    int k = 3;
    int l = 3;
    int n = 1;
    std::vector<int> d;
    ExtremalVariant variant = ExtremalVariant::WHitting;

    void validate() const
    {
        if (k < 2 || k > kMaxClasses) throw InputError("ExtremalSpec: k must be in [2, " + std::to_string(kMaxClasses) + "]");
        if (l < 2 || l > k) throw InputError("ExtremalSpec: l must be in [2, k]");
        if (n < 1) throw InputError("ExtremalSpec: n must be >= 1");
        if (static_cast<int>(d.size()) != k) throw InputError("ExtremalSpec: need exactly k values d_i");
        for (int di : d)
            if (di < 0 || di > n) throw InputError("ExtremalSpec: d_i must lie in [0, n]");
    }
};

/// Which quantity a (r, s) decomposition splits: the class size n (main
/// threshold) or the matching size m (small rainbow matchings).
enum class Decomposed
{
    ClassSize,
    MatchingSize,
};

struct ThresholdParams
{
    Decomposed of = Decomposed::ClassSize;
    int value = 0;  ///< = 3r + s
    int r = 0;
    int s = 1;      ///< in {1, 2, 3}
};

inline ThresholdParams decompose(int value, Decomposed of)
{
    if (value < 1) throw InputError("threshold decomposition needs a positive value");
    int r = (value - 1) / 3;
    return {of, value, r, value - 3 * r};
}

/// δ(n, r, s) evaluated for arbitrary n and a decomposition (r, s).
inline std::int64_t delta_value(std::int64_t n, std::int64_t r, int s)
{
    switch (s) {
    case 1: return n * n - (n - r) * (n - r);
    case 2: return n * n - (n - r + 1) * (n - r - 1);
    case 3: return n * n - (n - r) * (n - r - 1);
    default: throw InputError("s must be in {1, 2, 3}");
    }
}

struct DeltaThreshold
{
    int r = 0;
    int s = 1;
    std::int64_t delta = 0;
};

/// n = 3r + s with s in {1,2,3}, and the vertex-degree threshold δ(n, r, s).
inline DeltaThreshold delta_threshold(int n)
{
    auto p = decompose(n, Decomposed::ClassSize);
    return {p.r, p.s, delta_value(n, p.r, p.s)};
}

/// δ(n, r, s) with m = 3r + s: the bound for rainbow matchings of size m.
inline std::int64_t delta_threshold_for_size(int n, int m)
{
    auto p = decompose(m, Decomposed::MatchingSize);
    return delta_value(n, p.r, p.s);
}

/// d₃(n, m). The m ≡ 1 (mod 3) branch reads n² − (n − (m−1)/3)².
inline std::int64_t d3_threshold(int n, int m)
{
    if (m < 0 || m > n) throw InputError("d3_threshold: need 0 <= m <= n");
    const std::int64_t nn = n;
    if (m % 3 == 1) {
        const std::int64_t t = (m - 1) / 3;
        return nn * nn - (nn - t) * (nn - t);
    }
    return nn * nn - (nn - m / 3) * (nn - (m + 1) / 3);
}

/// d_i in {⌈m/k⌉, ⌊m/k⌋} summing to m, larger parts first.
inline std::vector<int> balanced_parts(int m, int k)
{
    std::vector<int> d(static_cast<std::size_t>(k), m / k);
    for (int i = 0; i < m % k; ++i) ++d[i];
    return d;
}

namespace detail {

inline bool edge_qualifies(const Edge& e, const std::vector<std::vector<bool>>& in_w, ExtremalVariant variant)
{
    bool meets_w = false;
    bool meets_u = false;
    for (const auto& v : e) (in_w[v.cls][v.pos] ? meets_w : meets_u) = true;
    return variant == ExtremalVariant::WHitting ? meets_w : (meets_w && meets_u);
}

inline std::vector<std::vector<bool>> canonical_w(const std::vector<int>& sizes, const std::vector<int>& d)
{
    std::vector<std::vector<bool>> in_w(sizes.size());
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        in_w[c].assign(static_cast<std::size_t>(sizes[c]), false);
        for (int p = 0; p < d[c]; ++p) in_w[c][p] = true;
    }
    return in_w;
}

}  // namespace detail

/// Construction with an explicit W membership table `in_w[class][pos]`.
inline KPartiteHypergraph build_extremal_placed(const std::vector<int>& class_sizes, int l, const std::vector<std::vector<bool>>& in_w, ExtremalVariant variant)
{
    std::vector<Edge> edges;
    for_each_legal_tuple(class_sizes, l, [&](const Edge& e) {
        if (detail::edge_qualifies(e, in_w, variant)) edges.push_back(e);
    });
    return KPartiteHypergraph(class_sizes, l, std::move(edges));
}

inline KPartiteHypergraph build_extremal(const ExtremalSpec& spec)
{
    spec.validate();
    std::vector<int> sizes(static_cast<std::size_t>(spec.k), spec.n);
    return build_extremal_placed(sizes, spec.l, detail::canonical_w(sizes, spec.d), spec.variant);
}

/// H_k(n, m) or H'_k(n, m).
inline KPartiteHypergraph build_balanced(int n, int m, ExtremalVariant variant = ExtremalVariant::WHitting, int k = 3)
{
    if (m < 0 || m > k * n) throw InputError("build_balanced: need 0 <= m <= k*n");
    return build_extremal({k, k, n, balanced_parts(m, k), variant});
}

/// H_3(n, m-1) together with an intersecting family. Without an explicit
/// family, the star of all edges through the first U-vertex of class 1 is
/// used.
inline KPartiteHypergraph build_star_member(int n, int m, const std::optional<std::vector<Edge>>& intersecting = std::nullopt)
{
    if (m < 1) throw InputError("build_star_member: m must be >= 1");
    const auto base = build_balanced(n, m - 1);
    std::vector<Edge> edges = base.edges();
    if (intersecting) {
        const auto& fam = *intersecting;
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = i + 1; j < fam.size(); ++j)
                if (!fam[i].intersects(fam[j])) throw InputError("build_star_member: supplied edges are not pairwise intersecting");
        edges.insert(edges.end(), fam.begin(), fam.end());
    } else {
        const int first_u = balanced_parts(m - 1, 3)[0];
        if (first_u >= n) throw InputError("build_star_member: class 1 has no U-vertex");
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) edges.push_back(Edge{{0, first_u}, {1, b}, {2, c}});
    }
    return KPartiteHypergraph(base.class_sizes(), 3, std::move(edges));
}

/// Color lift: a new first class Q = {q_1..q_m}; each edge e of F_i becomes
/// e ∪ {q_i}.
inline KPartiteHypergraph lift_family(const Family& family)
{
    if (family.empty()) throw InputError("lift_family: empty family");
    require_shared_vertex_set(family);
    const auto& shape = family.front();
    if (shape.num_classes() + 1 > kMaxClasses) throw InputError("lift_family: too many classes");
    if (shape.uniformity() != shape.num_classes()) throw InputError("lift_family: members must be k-partite k-graphs");
    std::vector<int> sizes{static_cast<int>(family.size())};
    sizes.insert(sizes.end(), shape.class_sizes().begin(), shape.class_sizes().end());
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (const auto& e : family[i].edges()) {
            std::vector<VertexId> vs{{0, static_cast<int>(i)}};
            for (const auto& v : e) vs.push_back({v.cls + 1, v.pos});
            edges.emplace_back(std::span<const VertexId>(vs));
        }
    return KPartiteHypergraph(std::move(sizes), shape.uniformity() + 1, std::move(edges));
}

/// Inverse of the lift on one edge: (color index, original edge).
inline std::pair<int, Edge> unlift_edge(const Edge& lifted)
{
    std::vector<VertexId> vs;
    int color = -1;
    for (const auto& v : lifted) {
        if (v.cls == 0)
            color = v.pos;
        else
            vs.push_back({v.cls - 1, v.pos});
    }
    if (color < 0) throw InputError("unlift_edge: edge has no color vertex");
    return {color, Edge(std::span<const VertexId>(vs))};
}

inline Family repeat_family(const KPartiteHypergraph& h, int copies)
{
    return Family(static_cast<std::size_t>(copies), h);
}

/// H_{1,3}(n) (or the primed variant): the lift of n copies of H_3(n, n).
inline KPartiteHypergraph build_h13(int n, ExtremalVariant variant = ExtremalVariant::WHitting)
{
    return lift_family(repeat_family(build_balanced(n, n, variant), n));
}

/// H_{3,2}(n; d, d, d) with the d_i balanced to sum to n.
inline KPartiteHypergraph build_h32(int n)
{
    return build_extremal({3, 2, n, balanced_parts(n, 3), ExtremalVariant::WHitting});
}

}  // namespace rml

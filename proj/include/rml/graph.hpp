#pragma once

// Ordinary graphs (2-graphs): Edmonds' blossom maximum matching, König
// covers for bipartite graphs, and Tutte–Berge deficiency certificates.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "rml/core/hypergraph.hpp"

namespace rml {

/// Simple undirected graph on vertices 0..n-1.
class Graph
{
public:
    explicit Graph(int n = 0) : adj_(static_cast<std::size_t>(n)) {}

    /// Hypergraph of uniformity 2, vertices numbered by dense index.
    static Graph from_hypergraph(const KPartiteHypergraph& h)
    {
        if (h.uniformity() != 2) throw InputError("Graph::from_hypergraph needs a 2-uniform hypergraph");
        Graph g(h.num_vertices());
        for (const auto& e : h.edges()) g.add_edge(h.index_of(e[0]), h.index_of(e[1]));
        return g;
    }

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int u, int v) const
    {
        const auto& a = adj_[static_cast<std::size_t>(u)];
        return std::find(a.begin(), a.end(), v) != a.end();
    }

    /// Duplicate edges are ignored; loops are rejected.
    void add_edge(int u, int v)
    {
        if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) throw InputError("graph edge endpoint out of range");
        if (u == v) throw InputError("graph loops are not allowed");
        if (has_edge(u, v)) return;
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }

    /// G - removed, keeping vertex numbering (removed vertices become isolated).
    Graph without(const std::vector<bool>& removed) const
    {
        Graph g(num_vertices());
        for (auto [u, v] : edges_)
            if (!removed[static_cast<std::size_t>(u)] && !removed[static_cast<std::size_t>(v)]) g.add_edge(u, v);
        return g;
    }

private:
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

struct GraphMatching
{
    int size = 0;
    std::vector<int> mate;                   ///< -1 when unmatched
    std::vector<std::pair<int, int>> edges;  ///< (u < v), sorted
};

namespace detail {

// Edmonds' algorithm with explicit blossom contraction via base labels;
// one BFS per exposed vertex, O(V^3).
class BlossomMatcher
{
public:
    explicit BlossomMatcher(const Graph& g)
        : g_(g), n_(g.num_vertices()), match_(static_cast<std::size_t>(n_), -1), parent_(static_cast<std::size_t>(n_)), base_(static_cast<std::size_t>(n_)),
          used_(static_cast<std::size_t>(n_)), blossom_(static_cast<std::size_t>(n_))
    {
    }

    GraphMatching run()
    {
        for (int v = 0; v < n_; ++v) {
            if (match_[v] != -1) continue;
            for (int u = find_augmenting_path(v); u != -1;) {
                int pv = parent_[u];
                int ppv = match_[pv];
                match_[u] = pv;
                match_[pv] = u;
                u = ppv;
            }
        }
        GraphMatching out;
        out.mate = match_;
        for (int v = 0; v < n_; ++v)
            if (match_[v] > v) out.edges.emplace_back(v, match_[v]);
        out.size = static_cast<int>(out.edges.size());
        return out;
    }

private:
    int lowest_common_base(int a, int b)
    {
        std::vector<bool> seen(static_cast<std::size_t>(n_), false);
        for (;;) {
            a = base_[a];
            seen[a] = true;
            if (match_[a] == -1) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(int v, int b, int child)
    {
        while (base_[v] != b) {
            blossom_[base_[v]] = true;
            blossom_[base_[match_[v]]] = true;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    int find_augmenting_path(int root)
    {
        std::fill(used_.begin(), used_.end(), false);
        std::fill(parent_.begin(), parent_.end(), -1);
        for (int i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : g_.neighbors(v)) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
                    int cur = lowest_common_base(v, to);
                    std::fill(blossom_.begin(), blossom_.end(), false);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n_; ++i) {
                        if (!blossom_[base_[i]]) continue;
                        base_[i] = cur;
                        if (!used_[i]) {
                            used_[i] = true;
                            q.push(i);
                        }
                    }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (match_[to] == -1) return to;
                    used_[match_[to]] = true;
                    q.push(match_[to]);
                }
            }
        }
        return -1;
    }

    const Graph& g_;
    int n_;
    std::vector<int> match_, parent_, base_;
    std::vector<bool> used_, blossom_;
};

}  // namespace detail

inline GraphMatching blossom_max_matching(const Graph& g)
{
    return detail::BlossomMatcher(g).run();
}

/// Proper 2-coloring (component roots get side 0); InputError on an odd cycle.
inline std::vector<int> bipartition(const Graph& g)
{
    std::vector<int> side(static_cast<std::size_t>(g.num_vertices()), -1);
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : g.neighbors(v)) {
                if (side[w] == -1) {
                    side[w] = 1 - side[v];
                    q.push(w);
                } else if (side[w] == side[v]) {
                    throw InputError("graph is not bipartite");
                }
            }
        }
    }
    return side;
}

/// Minimum vertex cover of a bipartite graph via König's construction:
/// Z = vertices reachable from exposed left vertices by alternating paths,
/// cover = (L \ Z) ∪ (R ∩ Z). Returned sorted.
inline std::vector<int> konig_min_cover(const Graph& g, std::vector<int> side = {})
{
    if (side.empty()) side = bipartition(g);
    for (auto [u, v] : g.edges())
        if (side[u] == side[v]) throw InputError("graph is not bipartite for the given sides");
    const int n = g.num_vertices();
    std::vector<int> mate(static_cast<std::size_t>(n), -1);
    // Kuhn's augmenting paths from the left side.
    for (int s = 0; s < n; ++s) {
        if (side[s] != 0) continue;
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        auto augment = [&](auto& self, int u) -> bool {
            for (int w : g.neighbors(u)) {
                if (seen[w]) continue;
                seen[w] = true;
                if (mate[w] == -1 || self(self, mate[w])) {
                    mate[w] = u;
                    mate[u] = w;
                    return true;
                }
            }
            return false;
        };
        augment(augment, s);
    }
    std::vector<bool> reached(static_cast<std::size_t>(n), false);
    std::queue<int> q;
    for (int v = 0; v < n; ++v)
        if (side[v] == 0 && mate[v] == -1) {
            reached[v] = true;
            q.push(v);
        }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.neighbors(u)) {
            if (reached[w] || mate[u] == w) continue;
            reached[w] = true;
            if (mate[w] != -1 && !reached[mate[w]]) {
                reached[mate[w]] = true;
                q.push(mate[w]);
            }
        }
    }
    std::vector<int> cover;
    for (int v = 0; v < n; ++v)
        if ((side[v] == 0 && !reached[v]) || (side[v] == 1 && reached[v])) cover.push_back(v);
    return cover;
}

/// König cover of a bipartite 2-graph given as a hypergraph.
inline VertexSet konig_min_cover(const KPartiteHypergraph& h)
{
    Graph g = Graph::from_hypergraph(h);
    std::vector<int> side;
    if (h.num_classes() == 2)
        for (const auto& v : h.vertices()) side.push_back(v.cls);
    VertexSet out;
    for (int v : konig_min_cover(g, side)) out.insert(h.vertex_at(v));
    return out;
}

/// Number of odd components of G - S.
inline int odd_components(const Graph& g, const std::vector<bool>& removed)
{
    const int n = g.num_vertices();
    std::vector<bool> seen(removed);
    int odd = 0;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        int size = 0;
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++size;
            for (int w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        odd += size % 2;
    }
    return odd;
}

struct TutteBergeCertificate
{
    std::vector<int> s;  ///< the barrier S, sorted
    int odd_components = 0;
    int deficiency = 0;  ///< odd_components - |S|
    int num_vertices = 0;

    /// ν(G) = (|V| - deficiency) / 2.
    int matching_number() const { return (num_vertices - deficiency) / 2; }
};

/// Barrier S maximizing c_odd(G - S) - |S|. Up to `exhaustive_limit`
/// vertices every S is tried (ties: larger |S|, then smaller bitmask);
/// beyond that the Gallai–Edmonds set A(G) is returned, which attains the
/// maximum.
inline TutteBergeCertificate tutte_berge_certificate(const Graph& g, int exhaustive_limit = 20)
{
    const int n = g.num_vertices();
    TutteBergeCertificate best;
    best.num_vertices = n;
    if (n <= exhaustive_limit && n <= 30) {
        std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
        for (auto [u, v] : g.edges()) {
            adj[u] |= 1u << v;
            adj[v] |= 1u << u;
        }
        const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1u);
        int best_def = -1 - n;
        int best_size = -1;
        std::uint32_t best_mask = 0;
        int best_odd = 0;
        for (std::uint64_t m = 0; m <= all; ++m) {
            const auto mask = static_cast<std::uint32_t>(m);
            std::uint32_t left = all & ~mask;
            int odd = 0;
            while (left) {
                std::uint32_t comp = left & (~left + 1u);
                std::uint32_t frontier = comp;
                while (frontier) {
                    int v = std::countr_zero(frontier);
                    frontier &= frontier - 1;
                    std::uint32_t fresh = adj[v] & left & ~comp;
                    comp |= fresh;
                    frontier |= fresh;
                }
                odd += std::popcount(comp) & 1;
                left &= ~comp;
            }
            const int size = std::popcount(mask);
            const int def = odd - size;
            if (def > best_def || (def == best_def && size > best_size)) {
                best_def = def;
                best_size = size;
                best_mask = mask;
                best_odd = odd;
            }
        }
        for (int v = 0; v < n; ++v)
            if (best_mask >> v & 1u) best.s.push_back(v);
        best.odd_components = best_odd;
        best.deficiency = best_def;
        return best;
    }
    // Gallai–Edmonds: D = vertices missed by some maximum matching,
    // A = N(D) \ D.
    const int nu = blossom_max_matching(g).size;
    std::vector<bool> in_d(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v) {
        std::vector<bool> removed(static_cast<std::size_t>(n), false);
        removed[v] = true;
        in_d[v] = blossom_max_matching(g.without(removed)).size == nu;
    }
    std::vector<bool> in_a(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v)
        if (in_d[v])
            for (int w : g.neighbors(v))
                if (!in_d[w]) in_a[w] = true;
    for (int v = 0; v < n; ++v)
        if (in_a[v]) best.s.push_back(v);
    best.odd_components = odd_components(g, in_a);
    best.deficiency = best.odd_components - static_cast<int>(best.s.size());
    return best;
}

}  // namespace rml

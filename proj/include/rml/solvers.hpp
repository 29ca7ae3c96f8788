#pragma once

// Exact and heuristic matching solvers for k-partite hypergraphs and
// families of them: branch-and-bound maximum / perfect matching, rainbow
// matching (direct and through the color lift), and the high-degree-vertex
// greedy construction for rainbow matchings.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rml/constructions.hpp"
#include "rml/core/hypergraph.hpp"
#include "rml/core/io.hpp"

namespace rml {

struct Matching
{
    std::vector<Edge> edges;

    std::size_t size() const { return edges.size(); }
    void normalize() { std::sort(edges.begin(), edges.end()); }

    VertexSet covered() const
    {
        std::vector<VertexId> vs;
        for (const auto& e : edges) vs.insert(vs.end(), e.begin(), e.end());
        return VertexSet(std::move(vs));
    }
};

struct RainbowPick
{
    int color = 0;  ///< zero-based index into the family
    Edge edge;

    friend auto operator<=>(const RainbowPick&, const RainbowPick&) = default;
};

struct RainbowMatching
{
    std::vector<RainbowPick> picks;  ///< sorted by color

    std::size_t size() const { return picks.size(); }
};

/// First violated matching invariant, or nullopt when `m` is a matching of `h`.
inline std::optional<std::string> check_matching(const KPartiteHypergraph& h, const Matching& m)
{
    std::vector<std::optional<std::size_t>> owner(static_cast<std::size_t>(h.num_vertices()));
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
        const Edge& e = m.edges[i];
        for (const auto& v : e)
            if (!h.in_bounds(v)) return "edge {" + format_edge(e) + "} has out-of-bounds vertex " + format_vertex(v);
        if (!h.contains(e)) return "edge {" + format_edge(e) + "} is not an edge of the hypergraph";
        for (const auto& v : e) {
            auto& slot = owner[static_cast<std::size_t>(h.index_of(v))];
            if (slot) return "edges {" + format_edge(m.edges[*slot]) + "} and {" + format_edge(e) + "} share vertex " + format_vertex(v);
            slot = i;
        }
    }
    return std::nullopt;
}

inline std::optional<std::string> check_perfect_matching(const KPartiteHypergraph& h, const Matching& m)
{
    if (auto err = check_matching(h, m)) return err;
    auto cov = m.covered();
    for (const auto& v : h.vertices())
        if (!cov.contains(v)) return "vertex " + format_vertex(v) + " is not covered";
    return std::nullopt;
}

inline std::optional<std::string> check_rainbow_matching(const Family& family, const RainbowMatching& rm)
{
    if (family.empty()) return "empty family";
    std::vector<bool> color_used(family.size(), false);
    Matching plain;
    for (const auto& pick : rm.picks) {
        if (pick.color < 0 || pick.color >= static_cast<int>(family.size())) return "color " + std::to_string(pick.color + 1) + " out of range";
        if (color_used[static_cast<std::size_t>(pick.color)]) return "color " + std::to_string(pick.color + 1) + " used twice";
        color_used[static_cast<std::size_t>(pick.color)] = true;
        const auto& fi = family[static_cast<std::size_t>(pick.color)];
        for (const auto& v : pick.edge)
            if (!fi.in_bounds(v)) return "edge {" + format_edge(pick.edge) + "} has out-of-bounds vertex " + format_vertex(v);
        if (!fi.contains(pick.edge)) return "edge {" + format_edge(pick.edge) + "} is not in color " + std::to_string(pick.color + 1);
        plain.edges.push_back(pick.edge);
    }
    // Disjointness against the shared vertex set; membership is per color so
    // check only overlaps here.
    std::vector<std::optional<std::size_t>> owner(static_cast<std::size_t>(family[0].num_vertices()));
    for (std::size_t i = 0; i < plain.edges.size(); ++i)
        for (const auto& v : plain.edges[i]) {
            auto& slot = owner[static_cast<std::size_t>(family[0].index_of(v))];
            if (slot) return "edges {" + format_edge(plain.edges[*slot]) + "} and {" + format_edge(plain.edges[i]) + "} share vertex " + format_vertex(v);
            slot = i;
        }
    return std::nullopt;
}

/// Node and wall-clock limits for exhaustive searches. Zero means unlimited.
struct SearchBudget
{
    std::uint64_t max_nodes = 0;
    std::int64_t max_ms = 0;
};

struct MatchingResult
{
    Matching matching;
    bool complete = true;  ///< false when the budget stopped the search
    std::uint64_t nodes = 0;

    std::size_t size() const { return matching.size(); }
};

struct PerfectMatchingResult
{
    std::optional<Matching> matching;
    bool complete = true;
    std::uint64_t nodes = 0;

    bool found() const { return matching.has_value(); }
};

struct RainbowResult
{
    std::optional<RainbowMatching> matching;
    bool complete = true;
    std::uint64_t nodes = 0;

    bool found() const { return matching.has_value(); }
};

namespace detail {

class BudgetClock
{
public:
    explicit BudgetClock(SearchBudget b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

    /// Counts a node; true once the budget is exhausted.
    bool tick()
    {
        ++nodes_;
        if (budget_.max_nodes && nodes_ > budget_.max_nodes) exhausted_ = true;
        if (budget_.max_ms && (nodes_ & 1023u) == 0) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
            if (ms > budget_.max_ms) exhausted_ = true;
        }
        return exhausted_;
    }

    bool exhausted() const { return exhausted_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

/// Greedy max-degree vertex cover of the given edge lists (dense vertex ids).
inline std::vector<char> greedy_cover(int num_vertices, const std::vector<std::vector<int>>& edge_vertices)
{
    std::vector<std::vector<int>> inc(static_cast<std::size_t>(num_vertices));
    std::vector<int> deg(static_cast<std::size_t>(num_vertices), 0);
    for (std::size_t e = 0; e < edge_vertices.size(); ++e)
        for (int v : edge_vertices[e]) {
            inc[v].push_back(static_cast<int>(e));
            ++deg[v];
        }
    std::vector<char> covered(edge_vertices.size(), 0);
    std::vector<char> in_cover(static_cast<std::size_t>(num_vertices), 0);
    for (;;) {
        int best = -1;
        for (int v = 0; v < num_vertices; ++v)
            if (deg[v] > 0 && (best < 0 || deg[v] > deg[best])) best = v;
        if (best < 0) break;
        in_cover[best] = 1;
        for (int e : inc[best]) {
            if (covered[e]) continue;
            covered[e] = 1;
            for (int u : edge_vertices[e]) --deg[u];
        }
    }
    return in_cover;
}

/// Shared incremental state for searches over one or more edge lists on a
/// common dense vertex set: which vertices are taken and which edges are
/// still live (all vertices free).
class LiveState
{
public:
    LiveState(int num_vertices, std::vector<std::vector<std::vector<int>>> edge_lists)
        : lists_(std::move(edge_lists)), used_(static_cast<std::size_t>(num_vertices), 0), live_deg_(static_cast<std::size_t>(num_vertices), 0)
    {
        inc_.resize(lists_.size());
        dead_.resize(lists_.size());
        live_count_.resize(lists_.size());
        std::vector<std::vector<int>> all;
        for (std::size_t c = 0; c < lists_.size(); ++c) {
            inc_[c].assign(static_cast<std::size_t>(num_vertices), {});
            dead_[c].assign(lists_[c].size(), 0);
            live_count_[c] = static_cast<int>(lists_[c].size());
            for (std::size_t e = 0; e < lists_[c].size(); ++e) {
                for (int v : lists_[c][e]) {
                    inc_[c][v].push_back(static_cast<int>(e));
                    ++live_deg_[v];
                }
                all.push_back(lists_[c][e]);
            }
        }
        in_cover_ = greedy_cover(num_vertices, all);
        for (int v = 0; v < num_vertices; ++v) cover_free_ += in_cover_[v];
    }

    int num_vertices() const { return static_cast<int>(used_.size()); }
    bool used(int v) const { return used_[v] != 0; }
    int live_degree(int v) const { return live_deg_[v]; }
    int live_count(std::size_t list) const { return live_count_[list]; }
    bool live(std::size_t list, int e) const { return dead_[list][e] == 0; }
    const std::vector<int>& incident(std::size_t list, int v) const { return inc_[list][v]; }
    const std::vector<int>& edge(std::size_t list, int e) const { return lists_[list][e]; }
    std::size_t num_edges(std::size_t list) const { return lists_[list].size(); }
    std::size_t num_lists() const { return lists_.size(); }

    /// Free cover vertices: an upper bound on how many disjoint live edges remain.
    int cover_bound() const { return cover_free_; }

    void take(int v)
    {
        used_[v] = 1;
        cover_free_ -= in_cover_[v];
        for (std::size_t c = 0; c < lists_.size(); ++c)
            for (int e : inc_[c][v])
                if (dead_[c][e]++ == 0) {
                    --live_count_[c];
                    for (int u : lists_[c][e]) --live_deg_[u];
                }
    }

    void release(int v)
    {
        for (std::size_t c = 0; c < lists_.size(); ++c)
            for (int e : inc_[c][v])
                if (--dead_[c][e] == 0) {
                    ++live_count_[c];
                    for (int u : lists_[c][e]) ++live_deg_[u];
                }
        cover_free_ += in_cover_[v];
        used_[v] = 0;
    }

    void take_edge(std::size_t list, int e)
    {
        for (int v : lists_[list][e]) take(v);
    }

    void release_edge(std::size_t list, int e)
    {
        const auto& vs = lists_[list][e];
        for (auto it = vs.rbegin(); it != vs.rend(); ++it) release(*it);
    }

private:
    std::vector<std::vector<std::vector<int>>> lists_;
    std::vector<std::vector<std::vector<int>>> inc_;
    std::vector<std::vector<int>> dead_;
    std::vector<int> live_count_;
    std::vector<char> used_;
    std::vector<int> live_deg_;
    std::vector<char> in_cover_;
    int cover_free_ = 0;
};

inline std::vector<std::vector<int>> dense_edges(const KPartiteHypergraph& h)
{
    std::vector<std::vector<int>> out;
    out.reserve(h.num_edges());
    for (const auto& e : h.edges()) {
        std::vector<int> vs;
        for (const auto& v : e) vs.push_back(h.index_of(v));
        out.push_back(std::move(vs));
    }
    return out;
}

}  // namespace detail

/// Maximum matching by branch and bound. Branches on the free vertex of
/// smallest live degree (ties: lowest index): each live edge through it in
/// canonical order, then leaving it unmatched. Bounds: free vertices of a
/// root greedy cover, and free live vertices per class.
inline MatchingResult max_matching(const KPartiteHypergraph& h, SearchBudget budget = {})
{
    detail::LiveState st(h.num_vertices(), {detail::dense_edges(h)});
    detail::BudgetClock clock(budget);
    const int k = h.num_classes();
    const bool spanning = h.uniformity() == k;

    // Greedy incumbent in canonical order.
    std::vector<int> best;
    {
        std::vector<char> taken(static_cast<std::size_t>(h.num_vertices()), 0);
        for (std::size_t e = 0; e < h.num_edges(); ++e) {
            const auto& vs = st.edge(0, static_cast<int>(e));
            if (std::any_of(vs.begin(), vs.end(), [&](int v) { return taken[v]; })) continue;
            for (int v : vs) taken[v] = 1;
            best.push_back(static_cast<int>(e));
        }
    }
    std::vector<int> current;

    auto upper_bound = [&]() {
        int bound = st.cover_bound();
        int live_vertices = 0;
        std::vector<int> per_class(static_cast<std::size_t>(k), 0);
        for (int v = 0; v < h.num_vertices(); ++v)
            if (!st.used(v) && st.live_degree(v) > 0) {
                ++live_vertices;
                ++per_class[h.vertex_at(v).cls];
            }
        bound = std::min(bound, live_vertices / h.uniformity());
        if (spanning) bound = std::min(bound, *std::min_element(per_class.begin(), per_class.end()));
        return bound;
    };

    auto search = [&](auto& self) -> void {
        if (clock.tick()) return;
        if (current.size() > best.size()) best = current;
        if (static_cast<int>(current.size()) + upper_bound() <= static_cast<int>(best.size())) return;
        int pick = -1;
        for (int v = 0; v < h.num_vertices(); ++v)
            if (!st.used(v) && st.live_degree(v) > 0 && (pick < 0 || st.live_degree(v) < st.live_degree(pick))) pick = v;
        if (pick < 0) return;
        for (int e : st.incident(0, pick)) {
            if (!st.live(0, e)) continue;
            st.take_edge(0, e);
            current.push_back(e);
            self(self);
            current.pop_back();
            st.release_edge(0, e);
            if (clock.exhausted()) return;
        }
        st.take(pick);
        self(self);
        st.release(pick);
    };
    search(search);

    MatchingResult out;
    for (int e : best) out.matching.edges.push_back(h.edge(static_cast<std::size_t>(e)));
    out.matching.normalize();
    out.complete = !clock.exhausted();
    out.nodes = clock.nodes();
    return out;
}

/// Perfect matching search: branch on the free vertex with the fewest live
/// edges; prune when any free vertex is isolated or the free cover vertices
/// cannot host the edges still needed.
inline PerfectMatchingResult has_perfect_matching(const KPartiteHypergraph& h, SearchBudget budget = {})
{
    PerfectMatchingResult out;
    const int l = h.uniformity();
    if (h.num_vertices() % l != 0 || (l == h.num_classes() && !h.is_balanced())) return out;
    detail::LiveState st(h.num_vertices(), {detail::dense_edges(h)});
    detail::BudgetClock clock(budget);
    int free_count = h.num_vertices();
    std::vector<int> current;

    auto search = [&](auto& self) -> bool {
        if (clock.tick()) return false;
        if (free_count == 0) return true;
        if (st.cover_bound() < free_count / l) return false;
        int pick = -1;
        for (int v = 0; v < h.num_vertices(); ++v)
            if (!st.used(v) && (pick < 0 || st.live_degree(v) < st.live_degree(pick))) pick = v;
        if (st.live_degree(pick) == 0) return false;
        for (int e : st.incident(0, pick)) {
            if (!st.live(0, e)) continue;
            st.take_edge(0, e);
            free_count -= l;
            current.push_back(e);
            if (self(self)) return true;
            current.pop_back();
            free_count += l;
            st.release_edge(0, e);
            if (clock.exhausted()) return false;
        }
        return false;
    };
    if (search(search)) {
        Matching m;
        for (int e : current) m.edges.push_back(h.edge(static_cast<std::size_t>(e)));
        m.normalize();
        out.matching = std::move(m);
    }
    out.complete = out.found() || !clock.exhausted();
    out.nodes = clock.nodes();
    return out;
}

/// Rainbow matching with `target` distinct colors, by exhaustive search.
/// Colors are taken fail-first (fewest live edges, ties lowest index);
/// edges within a color in canonical order; a color may be skipped while
/// the remaining colors can still reach the target. Bounds: root cover of
/// the union of all colors, free vertices per class, and colors with live
/// edges.
inline RainbowResult rainbow_matching(const Family& family, int target, SearchBudget budget = {})
{
    RainbowResult out;
    if (family.empty()) throw InputError("rainbow_matching: empty family");
    require_shared_vertex_set(family);
    const int m = static_cast<int>(family.size());
    if (target < 0 || target > m) throw InputError("rainbow_matching: target must lie in [0, |F|]");
    const auto& shape = family.front();
    std::vector<std::vector<std::vector<int>>> lists;
    for (const auto& f : family) lists.push_back(detail::dense_edges(f));
    detail::LiveState st(shape.num_vertices(), std::move(lists));
    detail::BudgetClock clock(budget);
    const bool spanning = shape.uniformity() == shape.num_classes();

    std::vector<char> decided(static_cast<std::size_t>(m), 0);
    std::vector<std::pair<int, int>> current;  // (color, edge index)
    int skips_left = m - target;

    auto bound_ok = [&]() {
        const int need = target - static_cast<int>(current.size());
        if (need <= 0) return true;
        int colors_alive = 0;
        for (int c = 0; c < m; ++c)
            if (!decided[c] && st.live_count(static_cast<std::size_t>(c)) > 0) ++colors_alive;
        if (colors_alive < need || st.cover_bound() < need) return false;
        if (spanning) {
            std::vector<int> per_class(static_cast<std::size_t>(shape.num_classes()), 0);
            for (int v = 0; v < shape.num_vertices(); ++v)
                if (!st.used(v)) ++per_class[shape.vertex_at(v).cls];
            if (*std::min_element(per_class.begin(), per_class.end()) < need) return false;
        }
        return true;
    };

    auto search = [&](auto& self) -> bool {
        if (clock.tick()) return false;
        if (static_cast<int>(current.size()) == target) return true;
        if (!bound_ok()) return false;
        int color = -1;
        for (int c = 0; c < m; ++c)
            if (!decided[c] && (color < 0 || st.live_count(static_cast<std::size_t>(c)) < st.live_count(static_cast<std::size_t>(color)))) color = c;
        if (color < 0) return false;
        const auto cl = static_cast<std::size_t>(color);
        decided[cl] = 1;
        for (std::size_t e = 0; e < st.num_edges(cl); ++e) {
            if (!st.live(cl, static_cast<int>(e))) continue;
            st.take_edge(cl, static_cast<int>(e));
            current.emplace_back(color, static_cast<int>(e));
            if (self(self)) return true;
            current.pop_back();
            st.release_edge(cl, static_cast<int>(e));
            if (clock.exhausted()) {
                decided[cl] = 0;
                return false;
            }
        }
        if (skips_left > 0) {
            --skips_left;
            bool ok = self(self);
            ++skips_left;
            if (ok) return true;
        }
        decided[cl] = 0;
        return false;
    };

    if (search(search)) {
        RainbowMatching rm;
        for (auto [c, e] : current) rm.picks.push_back({c, family[static_cast<std::size_t>(c)].edge(static_cast<std::size_t>(e))});
        std::sort(rm.picks.begin(), rm.picks.end());
        out.matching = std::move(rm);
    }
    out.complete = out.found() || !clock.exhausted();
    out.nodes = clock.nodes();
    return out;
}

/// Rainbow matching of size |F| via a perfect matching of the color lift.
/// Requires |F| to equal every class size.
inline RainbowResult rainbow_via_lift(const Family& family, SearchBudget budget = {})
{
    if (family.empty()) throw InputError("rainbow_via_lift: empty family");
    require_shared_vertex_set(family);
    for (int s : family.front().class_sizes())
        if (s != static_cast<int>(family.size())) throw InputError("rainbow_via_lift: |F| must equal every class size");
    auto lifted = lift_family(family);
    auto pm = has_perfect_matching(lifted, budget);
    RainbowResult out;
    out.complete = pm.complete;
    out.nodes = pm.nodes;
    if (pm.matching) {
        RainbowMatching rm;
        for (const auto& e : pm.matching->edges) {
            auto [color, edge] = unlift_edge(e);
            rm.picks.push_back({color, edge});
        }
        std::sort(rm.picks.begin(), rm.picks.end());
        out.matching = std::move(rm);
    }
    return out;
}

/// High-degree construction: A_i = vertices of classes 1-2 with degree in
/// F_i above 2mn; distinct representatives v_i ∈ A_i are chosen by
/// bipartite matching, then colors are processed from last to first, each
/// taking the first edge through v_i that avoids the representatives of
/// the colors not yet processed and all previously chosen edges. Sound but
/// incomplete: nullopt whenever a step fails.
inline std::optional<RainbowMatching> greedy_rainbow_heuristic(const Family& family)
{
    if (family.empty()) throw InputError("greedy_rainbow_heuristic: empty family");
    require_shared_vertex_set(family);
    const auto& shape = family.front();
    if (shape.num_classes() < 2) return std::nullopt;
    const int m = static_cast<int>(family.size());
    const std::size_t threshold = 2 * static_cast<std::size_t>(m) * static_cast<std::size_t>(shape.max_class_size());

    std::vector<std::vector<VertexId>> high(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < 2; ++c)
            for (int p = 0; p < shape.class_size(c); ++p)
                if (family[i].vertex_degree({c, p}) > threshold) high[i].push_back({c, p});

    // Kuhn's algorithm: colors on the left, vertices of V1 ∪ V2 on the right.
    std::vector<int> owner(static_cast<std::size_t>(shape.num_vertices()), -1);
    for (int i = 0; i < m; ++i) {
        std::vector<char> seen(static_cast<std::size_t>(shape.num_vertices()), 0);
        auto augment = [&](auto& self, int color) -> bool {
            for (const auto& v : high[color]) {
                int idx = shape.index_of(v);
                if (seen[idx]) continue;
                seen[idx] = 1;
                if (owner[idx] == -1 || self(self, owner[idx])) {
                    owner[idx] = color;
                    return true;
                }
            }
            return false;
        };
        if (!augment(augment, i)) return std::nullopt;
    }
    std::vector<VertexId> rep(static_cast<std::size_t>(m));
    for (int idx = 0; idx < shape.num_vertices(); ++idx)
        if (owner[idx] >= 0) rep[owner[idx]] = shape.vertex_at(idx);

    std::vector<char> blocked(static_cast<std::size_t>(shape.num_vertices()), 0);
    RainbowMatching rm;
    for (int i = m - 1; i >= 0; --i) {
        std::vector<char> avoid = blocked;
        for (int j = 0; j < i; ++j) avoid[shape.index_of(rep[j])] = 1;
        std::optional<Edge> chosen;
        for (int ei : family[i].incident(rep[i])) {
            const Edge& e = family[i].edge(static_cast<std::size_t>(ei));
            if (std::none_of(e.begin(), e.end(), [&](VertexId v) { return avoid[shape.index_of(v)] != 0; })) {
                chosen = e;
                break;
            }
        }
        if (!chosen) return std::nullopt;
        for (const auto& v : *chosen) blocked[shape.index_of(v)] = 1;
        rm.picks.push_back({i, *chosen});
    }
    std::sort(rm.picks.begin(), rm.picks.end());
    return rm;
}

}  // namespace rml

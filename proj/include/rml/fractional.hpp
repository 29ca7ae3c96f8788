#pragma once

// Fractional matchings and covers over exact rationals: ν_f and μ_f as two
// separate LPs, sparse fractional perfect matchings (basic solutions),
// closure under a cover, monotone relabeling, greedy edge-disjoint FPM
// sequences with pair-load control, and a small-scale rainbow fractional
// matching search.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rml/core/hypergraph.hpp"
#include "rml/core/io.hpp"
#include "rml/error.hpp"
#include "rml/lp/simplex.hpp"
#include "rml/rational.hpp"
#include "rml/solvers.hpp"

namespace rml {

struct FractionalAssignment
{
    std::map<Edge, Rational> weights;  ///< zero weights omitted

    Rational size() const
    {
        Rational s = 0;
        for (const auto& [e, w] : weights) s += w;
        return s;
    }

    std::size_t support_size() const { return weights.size(); }

    Rational load(VertexId v) const
    {
        Rational s = 0;
        for (const auto& [e, w] : weights)
            if (e.contains(v)) s += w;
        return s;
    }
};

struct FractionalCover
{
    std::map<VertexId, Rational> weights;  ///< every vertex of the host listed

    Rational size() const
    {
        Rational s = 0;
        for (const auto& [v, w] : weights) s += w;
        return s;
    }

    Rational weight(VertexId v) const
    {
        auto it = weights.find(v);
        return it == weights.end() ? Rational(0) : it->second;
    }

    Rational weight(const Edge& e) const
    {
        Rational s = 0;
        for (const auto& v : e) s += weight(v);
        return s;
    }

    static FractionalCover constant(const KPartiteHypergraph& h, const Rational& w)
    {
        FractionalCover c;
        for (const auto& v : h.vertices()) c.weights.emplace(v, w);
        return c;
    }
};

struct LpLimits
{
    int max_vertices = 200;
};

struct FractionalMatchingResult
{
    Rational value;
    FractionalAssignment assignment;  ///< basic optimal solution
    FractionalCover dual;             ///< LP duals of the vertex rows
    std::size_t pivots = 0;
};

struct FractionalCoverResult
{
    Rational value;
    FractionalCover cover;
    std::size_t pivots = 0;
};

namespace detail {

inline void check_lp_ceiling(const KPartiteHypergraph& h, const LpLimits& limits)
{
    if (h.num_vertices() > limits.max_vertices)
        throw ResourceError("LP ceiling exceeded: " + std::to_string(h.num_vertices()) + " vertices > " + std::to_string(limits.max_vertices));
}

/// Vertex rows over edge variables: Σ_{e ∋ v} x_e (sense) 1.
inline lp::Problem vertex_rows(const KPartiteHypergraph& h, lp::Sense sense)
{
    lp::Problem p;
    p.num_vars = static_cast<int>(h.num_edges());
    p.rows.resize(static_cast<std::size_t>(h.num_vertices()));
    for (int v = 0; v < h.num_vertices(); ++v) {
        auto& row = p.rows[v];
        row.sense = sense;
        row.rhs = 1;
        for (int e : h.incident(h.vertex_at(v))) row.coeffs.emplace_back(e, Rational(1));
    }
    return p;
}

inline FractionalAssignment assignment_from(const KPartiteHypergraph& h, const std::vector<Rational>& x)
{
    FractionalAssignment f;
    for (std::size_t e = 0; e < x.size(); ++e)
        if (!x[e].is_zero()) f.weights.emplace(h.edge(e), x[e]);
    return f;
}

}  // namespace detail

/// Maximum fractional matching: maximize Σ f(e) subject to vertex loads ≤ 1.
inline FractionalMatchingResult nu_f(const KPartiteHypergraph& h, LpLimits limits = {})
{
    detail::check_lp_ceiling(h, limits);
    auto p = detail::vertex_rows(h, lp::Sense::LessEq);
    p.objective.assign(h.num_edges(), Rational(1));
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) throw std::logic_error("nu_f: matching LP not optimal");
    FractionalMatchingResult out;
    out.value = sol.value;
    out.assignment = detail::assignment_from(h, sol.x);
    for (int v = 0; v < h.num_vertices(); ++v) out.dual.weights.emplace(h.vertex_at(v), sol.duals[v]);
    out.pivots = sol.pivots;
    return out;
}

/// Minimum fractional vertex cover, solved as its own LP over vertex
/// variables (one ≥ row per edge), independently of nu_f.
inline FractionalCoverResult mu_f(const KPartiteHypergraph& h, LpLimits limits = {})
{
    detail::check_lp_ceiling(h, limits);
    lp::Problem p;
    p.num_vars = h.num_vertices();
    p.objective.assign(static_cast<std::size_t>(h.num_vertices()), Rational(-1));
    for (const auto& e : h.edges()) {
        lp::Row row;
        row.sense = lp::Sense::GreaterEq;
        row.rhs = 1;
        for (const auto& v : e) row.coeffs.emplace_back(h.index_of(v), Rational(1));
        p.rows.push_back(std::move(row));
    }
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) throw std::logic_error("mu_f: cover LP not optimal");
    FractionalCoverResult out;
    out.value = -sol.value;
    for (int v = 0; v < h.num_vertices(); ++v) out.cover.weights.emplace(h.vertex_at(v), sol.x[v]);
    out.pivots = sol.pivots;
    return out;
}

inline std::optional<std::string> check_fractional_matching(const KPartiteHypergraph& h, const FractionalAssignment& f, bool perfect = false)
{
    std::vector<Rational> load(static_cast<std::size_t>(h.num_vertices()), Rational(0));
    for (const auto& [e, w] : f.weights) {
        for (const auto& v : e)
            if (!h.in_bounds(v)) return "edge {" + format_edge(e) + "} has out-of-bounds vertex " + format_vertex(v);
        if (!h.contains(e)) return "edge {" + format_edge(e) + "} is not an edge of the hypergraph";
        if (w < 0 || w > 1) return "weight " + to_string(w) + " on edge {" + format_edge(e) + "} outside [0,1]";
        for (const auto& v : e) load[h.index_of(v)] += w;
    }
    for (int v = 0; v < h.num_vertices(); ++v) {
        if (load[v] > 1) return "vertex " + format_vertex(h.vertex_at(v)) + " has load " + to_string(load[v]) + " > 1";
        if (perfect && load[v] != 1) return "vertex " + format_vertex(h.vertex_at(v)) + " has load " + to_string(load[v]) + " != 1";
    }
    return std::nullopt;
}

inline std::optional<std::string> check_fractional_cover(const KPartiteHypergraph& h, const FractionalCover& c)
{
    for (const auto& [v, w] : c.weights) {
        if (!h.in_bounds(v)) return "vertex " + format_vertex(v) + " out of bounds";
        if (w < 0) return "vertex " + format_vertex(v) + " has negative weight " + to_string(w);
    }
    for (const auto& e : h.edges()) {
        Rational s = c.weight(e);
        if (s < 1) return "edge {" + format_edge(e) + "} has cover weight " + to_string(s) + " < 1";
    }
    return std::nullopt;
}

/// ω(v) > 0 ⇒ v saturated, and f(e) > 0 ⇒ e tight.
inline std::optional<std::string> check_complementary_slackness(const KPartiteHypergraph& h, const FractionalAssignment& f, const FractionalCover& c)
{
    std::vector<Rational> load(static_cast<std::size_t>(h.num_vertices()), Rational(0));
    for (const auto& [e, w] : f.weights)
        for (const auto& v : e) load[h.index_of(v)] += w;
    for (const auto& [v, w] : c.weights)
        if (w > 0 && load[h.index_of(v)] != 1) return "vertex " + format_vertex(v) + " has positive cover weight but load " + to_string(load[h.index_of(v)]);
    for (const auto& [e, w] : f.weights)
        if (w > 0 && c.weight(e) != 1) return "edge {" + format_edge(e) + "} carries weight but has cover sum " + to_string(c.weight(e));
    return std::nullopt;
}

/// A basic fractional perfect matching (support ≤ |V|), or nullopt when
/// none exists. An optional per-edge cost (indexed like h.edges()) is
/// minimized among perfect ones.
inline std::optional<FractionalAssignment> sparse_fpm(const KPartiteHypergraph& h, const std::vector<Rational>* cost = nullptr, LpLimits limits = {})
{
    if (h.uniformity() == h.num_classes() && !h.is_balanced()) return std::nullopt;
    if (h.num_vertices() % h.uniformity() != 0) return std::nullopt;
    for (const auto& v : h.vertices())
        if (h.vertex_degree(v) == 0) return std::nullopt;
    detail::check_lp_ceiling(h, limits);
    auto p = detail::vertex_rows(h, lp::Sense::Equal);
    if (cost) {
        if (cost->size() != h.num_edges()) throw InputError("sparse_fpm: cost vector length differs from edge count");
        p.objective.reserve(cost->size());
        for (const auto& c : *cost) p.objective.push_back(-c);
    }
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) return std::nullopt;
    return detail::assignment_from(h, sol.x);
}

/// All legal l-tuples (l = uniformity of h) whose ω-sum is at least 1.
inline KPartiteHypergraph closure(const KPartiteHypergraph& h, const FractionalCover& omega)
{
    for (const auto& [v, w] : omega.weights) h.check_vertex(v);
    std::vector<Edge> edges;
    for_each_legal_tuple(h.class_sizes(), h.uniformity(), [&](const Edge& e) {
        if (omega.weight(e) >= 1) edges.push_back(e);
    });
    return KPartiteHypergraph(h.class_sizes(), h.uniformity(), std::move(edges));
}

struct SortedCover
{
    KPartiteHypergraph graph;
    FractionalCover cover;
    std::vector<std::vector<int>> new_position;  ///< [class][old position]
};

/// Relabels each class so cover weights are non-increasing in position
/// (ties keep the original order).
inline SortedCover sort_cover_monotone(const KPartiteHypergraph& h, const FractionalCover& omega)
{
    SortedCover out;
    out.new_position.resize(static_cast<std::size_t>(h.num_classes()));
    for (int c = 0; c < h.num_classes(); ++c) {
        std::vector<int> order(static_cast<std::size_t>(h.class_size(c)));
        for (int p = 0; p < h.class_size(c); ++p) order[p] = p;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return omega.weight(VertexId{c, a}) > omega.weight(VertexId{c, b}); });
        out.new_position[c].resize(order.size());
        for (std::size_t np = 0; np < order.size(); ++np) out.new_position[c][order[np]] = static_cast<int>(np);
    }
    auto map_vertex = [&](VertexId v) { return VertexId{v.cls, out.new_position[v.cls][v.pos]}; };
    std::vector<Edge> edges;
    edges.reserve(h.num_edges());
    for (const auto& e : h.edges()) {
        std::vector<VertexId> vs;
        for (const auto& v : e) vs.push_back(map_vertex(v));
        edges.emplace_back(std::span<const VertexId>(vs));
    }
    out.graph = KPartiteHypergraph(h.class_sizes(), h.uniformity(), std::move(edges));
    for (const auto& [v, w] : omega.weights) out.cover.weights.emplace(map_vertex(v), w);
    return out;
}

/// Accumulated Σ_i Σ_{e ⊇ {x,y}} f_i(e) for every vertex pair that occurs.
inline std::map<std::pair<VertexId, VertexId>, Rational> pair_loads(const std::vector<FractionalAssignment>& fpms)
{
    std::map<std::pair<VertexId, VertexId>, Rational> loads;
    for (const auto& f : fpms)
        for (const auto& [e, w] : f.weights)
            for (std::size_t a = 0; a < e.size(); ++a)
                for (std::size_t b = a + 1; b < e.size(); ++b) loads[{e[a], e[b]}] += w;
    return loads;
}

inline Rational max_pair_load(const std::vector<FractionalAssignment>& fpms)
{
    Rational best = 0;
    for (const auto& [pair, load] : pair_loads(fpms)) best = std::max(best, load);
    return best;
}

struct DecompositionParams
{
    int t = 1;
    Rational pair_cap = 3;
    Rational exclusion_threshold = 2;  ///< edges with a pair loaded above this are dropped
    int max_t = 64;
};

struct DecompositionResult
{
    std::vector<FractionalAssignment> fpms;
    std::string stop_reason;  ///< "reached t" or why the loop stopped early
};

/// Greedy sequence of fractional perfect matchings with pairwise-disjoint
/// supports. Before each step the supports found so far and every edge
/// containing a pair with load above the exclusion threshold are removed;
/// the LP then prefers edges whose pairs carry little load.
inline DecompositionResult edge_disjoint_fpm(const KPartiteHypergraph& h, const DecompositionParams& params, LpLimits limits = {})
{
    if (params.t < 0 || params.t > params.max_t) throw InputError("edge_disjoint_fpm: t must lie in [0, " + std::to_string(params.max_t) + "]");
    if (params.exclusion_threshold > params.pair_cap) throw InputError("edge_disjoint_fpm: exclusion threshold above pair cap");
    DecompositionResult out;
    std::set<Edge> used;
    std::map<std::pair<VertexId, VertexId>, Rational> loads;
    for (int step = 0; step < params.t; ++step) {
        std::vector<Edge> remaining;
        std::vector<Rational> cost;
        for (const auto& e : h.edges()) {
            if (used.count(e)) continue;
            bool excluded = false;
            Rational c = 0;
            for (std::size_t a = 0; a < e.size() && !excluded; ++a)
                for (std::size_t b = a + 1; b < e.size(); ++b) {
                    auto it = loads.find({e[a], e[b]});
                    if (it == loads.end()) continue;
                    if (it->second > params.exclusion_threshold) {
                        excluded = true;
                        break;
                    }
                    c += it->second;
                }
            if (excluded) continue;
            remaining.push_back(e);
            cost.push_back(c);
        }
        KPartiteHypergraph sub(h.class_sizes(), h.uniformity(), remaining);
        // `sub` re-sorts edges; `remaining` is already in canonical order.
        auto f = sparse_fpm(sub, &cost, limits);
        if (!f) {
            out.stop_reason = "no fractional perfect matching after step " + std::to_string(step);
            return out;
        }
        for (const auto& [e, w] : f->weights) {
            used.insert(e);
            for (std::size_t a = 0; a < e.size(); ++a)
                for (std::size_t b = a + 1; b < e.size(); ++b) loads[{e[a], e[b]}] += w;
        }
        out.fpms.push_back(std::move(*f));
    }
    out.stop_reason = "reached t";
    return out;
}

struct RainbowFractionalPM
{
    std::vector<RainbowPick> picks;  ///< one per color, by color
    std::vector<Rational> weights;   ///< parallel to picks

    Rational size() const
    {
        Rational s = 0;
        for (const auto& w : weights) s += w;
        return s;
    }
};

inline std::optional<std::string> check_rainbow_fractional(const Family& family, const RainbowFractionalPM& r, const Rational& size, bool perfect)
{
    if (family.empty()) return "empty family";
    if (r.picks.size() != r.weights.size()) return "picks and weights differ in length";
    const auto& shape = family.front();
    std::vector<bool> seen(family.size(), false);
    std::vector<Rational> load(static_cast<std::size_t>(shape.num_vertices()), Rational(0));
    for (std::size_t i = 0; i < r.picks.size(); ++i) {
        const auto& pick = r.picks[i];
        if (pick.color < 0 || pick.color >= static_cast<int>(family.size())) return "color " + std::to_string(pick.color + 1) + " out of range";
        if (seen[pick.color]) return "color " + std::to_string(pick.color + 1) + " used twice";
        seen[pick.color] = true;
        if (!family[pick.color].contains(pick.edge)) return "edge {" + format_edge(pick.edge) + "} is not in color " + std::to_string(pick.color + 1);
        if (r.weights[i] < 0 || r.weights[i] > 1) return "weight outside [0,1] at color " + std::to_string(pick.color + 1);
        for (const auto& v : pick.edge) load[shape.index_of(v)] += r.weights[i];
    }
    for (int v = 0; v < shape.num_vertices(); ++v) {
        if (load[v] > 1) return "vertex " + format_vertex(shape.vertex_at(v)) + " has load " + to_string(load[v]) + " > 1";
        if (perfect && load[v] != 1) return "vertex " + format_vertex(shape.vertex_at(v)) + " has load " + to_string(load[v]) + " != 1";
    }
    if (r.size() != size) return "size " + to_string(r.size()) + " differs from " + to_string(size);
    return std::nullopt;
}

struct RainbowFpmLimits
{
    int max_colors = 12;
    int max_class_size = 4;
    std::uint64_t max_nodes = 0;  ///< 0 = unlimited
};

struct RainbowFpmResult
{
    std::optional<RainbowFractionalPM> witness;
    bool hypothesis_holds = false;  ///< |F| = ⌈r·size⌉ and every ν_f(F_i) ≥ size
    std::vector<std::string> warnings;
    bool complete = true;
    std::uint64_t nodes = 0;
};

/// Searches one-edge-per-color selections for a fractional matching of the
/// requested size. The answer depends only on the set of distinct edges
/// chosen, so each color either adds a new edge or contributes weight 0.
/// Colors go by ascending edge count; within a color, edges carrying
/// weight in an LP over the chosen edges plus all remaining colors come
/// first. Prunes by that LP and by LP(chosen) + remaining colors.
inline RainbowFpmResult rainbow_fpm(const Family& family, const Rational& size, RainbowFpmLimits limits = {})
{
    if (family.empty()) throw InputError("rainbow_fpm: empty family");
    require_shared_vertex_set(family);
    if (size <= 0) throw InputError("rainbow_fpm: size must be positive");
    const auto& shape = family.front();
    if (static_cast<int>(family.size()) > limits.max_colors || shape.max_class_size() > limits.max_class_size)
        throw ResourceError("rainbow_fpm: instance too large (at most " + std::to_string(limits.max_colors) + " colors, classes of size " + std::to_string(limits.max_class_size) + ")");

    RainbowFpmResult out;
    const int r = shape.uniformity();
    const int m = static_cast<int>(family.size());
    {
        Rational rs = size * r;
        Integer ceil_rs = boost::multiprecision::numerator(rs) / boost::multiprecision::denominator(rs);
        if (Rational(ceil_rs) < rs) ceil_rs += 1;
        out.hypothesis_holds = Integer(m) == ceil_rs;
        if (!out.hypothesis_holds) out.warnings.push_back("hypothesis violated: |F| = " + std::to_string(m) + " but ceil(r*size) = " + ceil_rs.str());
        for (int i = 0; i < m; ++i) {
            auto nf = nu_f(family[i]).value;
            if (nf < size) {
                out.hypothesis_holds = false;
                out.warnings.push_back("hypothesis violated: nu_f(F" + std::to_string(i + 1) + ") = " + to_string(nf) + " < " + to_string(size));
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return family[a].num_edges() < family[b].num_edges(); });

    auto lp_over = [&](const std::vector<Edge>& edges) { return nu_f(KPartiteHypergraph(shape.class_sizes(), r, edges)); };

    std::set<std::pair<int, std::vector<Edge>>> failed;
    std::vector<Edge> chosen;            // sorted distinct edges
    std::vector<std::optional<Edge>> pick_of(static_cast<std::size_t>(m));
    std::optional<FractionalMatchingResult> final_lp;

    auto search = [&](auto& self, int depth) -> bool {
        ++out.nodes;
        if (limits.max_nodes && out.nodes > limits.max_nodes) {
            out.complete = false;
            return false;
        }
        auto here = lp_over(chosen);
        if (here.value >= size) {
            final_lp = std::move(here);
            return true;
        }
        if (depth == m) return false;
        if (here.value + (m - depth) < size) return false;
        if (failed.count({depth, chosen})) return false;
        std::vector<Edge> pool = chosen;
        for (int d = depth; d < m; ++d) pool.insert(pool.end(), family[order[d]].edges().begin(), family[order[d]].edges().end());
        auto guide = lp_over(pool);
        if (guide.value < size) {
            failed.insert({depth, chosen});
            return false;
        }
        const int color = order[depth];
        std::vector<Edge> candidates;
        for (const auto& e : family[color].edges())
            if (!std::binary_search(chosen.begin(), chosen.end(), e)) candidates.push_back(e);
        auto weight_of = [&](const Edge& e) {
            auto it = guide.assignment.weights.find(e);
            return it == guide.assignment.weights.end() ? Rational(0) : it->second;
        };
        std::stable_sort(candidates.begin(), candidates.end(), [&](const Edge& a, const Edge& b) { return weight_of(a) > weight_of(b); });
        for (const auto& e : candidates) {
            auto pos = std::lower_bound(chosen.begin(), chosen.end(), e);
            chosen.insert(pos, e);
            pick_of[color] = e;
            if (self(self, depth + 1)) return true;
            chosen.erase(std::lower_bound(chosen.begin(), chosen.end(), e));
            pick_of[color].reset();
            if (!out.complete) return false;
        }
        if (self(self, depth + 1)) return true;
        if (out.complete) failed.insert({depth, chosen});
        return false;
    };

    if (search(search, 0)) {
        const Rational scale = size / final_lp->value;
        RainbowFractionalPM w;
        for (int c = 0; c < m; ++c) {
            if (pick_of[c]) {
                auto it = final_lp->assignment.weights.find(*pick_of[c]);
                w.picks.push_back({c, *pick_of[c]});
                w.weights.push_back(it == final_lp->assignment.weights.end() ? Rational(0) : Rational(it->second * scale));
            } else if (family[c].num_edges() > 0) {
                w.picks.push_back({c, family[c].edge(0)});
                w.weights.push_back(0);
            }
        }
        out.witness = std::move(w);
    }
    return out;
}

}  // namespace rml

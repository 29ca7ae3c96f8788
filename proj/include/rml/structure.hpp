#pragma once

// Structural predicates and randomized constructions: closeness to an
// extremal target (labeled and optimized over W-placements), α-bad
// vertices, U/W edge types, absorbing-matching verification and search,
// Bernoulli sparsification from fractional matchings, and nibble covers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rml/constructions.hpp"
#include "rml/core/hypergraph.hpp"
#include "rml/core/io.hpp"
#include "rml/error.hpp"
#include "rml/fractional.hpp"
#include "rml/random.hpp"
#include "rml/rational.hpp"
#include "rml/solvers.hpp"

namespace rml {

/// W positions per class, each list sorted.
using Placement = std::vector<std::vector<int>>;

/// A construction to measure closeness against. With `lifted` set, a color
/// class of `colors` vertices is prepended; its vertices count as U and
/// every target edge takes exactly one of them. H'_{1,3}(n) is the lifted
/// W-and-U-hitting H_3(n, n).
struct TargetSpec
{
    ExtremalSpec base;
    bool lifted = false;
    int colors = 0;

    static TargetSpec plain(ExtremalSpec spec) { return {std::move(spec), false, 0}; }

    static TargetSpec h13(int n, ExtremalVariant variant = ExtremalVariant::WAndUHitting)
    {
        return {{3, 3, n, balanced_parts(n, 3), variant}, true, n};
    }

    void validate() const
    {
        base.validate();
        if (lifted && base.l != base.k) throw InputError("lifted target needs l = k");
        if (lifted && colors < 1) throw InputError("lifted target needs at least one color");
        if (lifted && base.k + 1 > kMaxClasses) throw InputError("lifted target has too many classes");
    }

    int offset() const { return lifted ? 1 : 0; }

    std::vector<int> class_sizes() const
    {
        std::vector<int> sizes;
        if (lifted) sizes.push_back(colors);
        sizes.insert(sizes.end(), static_cast<std::size_t>(base.k), base.n);
        return sizes;
    }

    int uniformity() const { return base.l + offset(); }

    Placement canonical_placement() const
    {
        Placement p(static_cast<std::size_t>(base.k));
        for (int c = 0; c < base.k; ++c)
            for (int i = 0; i < base.d[c]; ++i) p[c].push_back(i);
        return p;
    }

    /// in_w[class][pos] over all classes of the target (color class all U).
    std::vector<std::vector<bool>> membership(const Placement& p) const
    {
        auto sizes = class_sizes();
        std::vector<std::vector<bool>> in_w(sizes.size());
        for (std::size_t c = 0; c < sizes.size(); ++c) in_w[c].assign(static_cast<std::size_t>(sizes[c]), false);
        for (int c = 0; c < base.k; ++c)
            for (int pos : p[c]) in_w[c + offset()][pos] = true;
        return in_w;
    }

    bool qualifies(const Edge& e, const std::vector<std::vector<bool>>& in_w) const
    {
        bool meets_w = false;
        bool meets_u = false;
        int color_vertices = 0;
        for (const auto& v : e) {
            if (lifted && v.cls == 0) {
                ++color_vertices;
                continue;
            }
            (in_w[v.cls][v.pos] ? meets_w : meets_u) = true;
        }
        if (lifted && color_vertices != 1) return false;
        return base.variant == ExtremalVariant::WHitting ? meets_w : (meets_w && meets_u);
    }

    KPartiteHypergraph build(const Placement& p) const
    {
        validate();
        auto in_w = membership(p);
        std::vector<Edge> edges;
        for_each_legal_tuple(class_sizes(), uniformity(), [&](const Edge& e) {
            if (qualifies(e, in_w)) edges.push_back(e);
        });
        return KPartiteHypergraph(class_sizes(), uniformity(), std::move(edges));
    }

    KPartiteHypergraph build() const { return build(canonical_placement()); }
};

struct ClosenessReport
{
    std::uint64_t missing_edges = 0;
    Integer normalizer = 1;  ///< n^k, k the uniformity
    Rational epsilon = 0;
    std::optional<Placement> witness_w;
    bool upper_bound = false;  ///< true when found by local search
};

namespace detail {

inline Integer power(std::int64_t base, int exp)
{
    Integer out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

inline void require_same_shape(const KPartiteHypergraph& a, const KPartiteHypergraph& b, const char* what)
{
    if (!a.same_shape(b) || a.uniformity() != b.uniformity()) throw InputError(std::string(what) + ": hypergraph and target differ in classes or uniformity");
}

}  // namespace detail

/// Labeled comparison: target edges absent from H, over n^k.
inline ClosenessReport edit_distance_to(const KPartiteHypergraph& h, const KPartiteHypergraph& target)
{
    detail::require_same_shape(h, target, "edit_distance_to");
    ClosenessReport r;
    for (const auto& e : target.edges())
        if (!h.contains(e)) ++r.missing_edges;
    r.normalizer = detail::power(h.max_class_size(), h.uniformity());
    r.epsilon = Rational(Integer(r.missing_edges), r.normalizer);
    return r;
}

struct ClosenessOptions
{
    int max_exhaustive_class = 12;
    std::uint64_t max_placements = 200000;
    int restarts = 8;
    std::uint64_t seed = 1;
};

/// Minimum closeness over all W-placements with the spec's class counts d_i.
/// Exhaustive (lexicographically first optimum) when every class has at
/// most `max_exhaustive_class` vertices and the placement count is within
/// `max_placements`; otherwise swap-based local search from the canonical
/// placement plus seeded random restarts, reported as an upper bound.
inline ClosenessReport min_closeness(const KPartiteHypergraph& h, const TargetSpec& spec, ClosenessOptions opts = {})
{
    spec.validate();
    if (h.class_sizes() != spec.class_sizes() || h.uniformity() != spec.uniformity()) throw InputError("min_closeness: hypergraph shape differs from the target spec");
    const std::uint64_t target_edges = spec.build().num_edges();
    const int k = spec.base.k;
    const int n = spec.base.n;

    auto missing_for = [&](const Placement& p) {
        auto in_w = spec.membership(p);
        std::uint64_t hit = 0;
        for (const auto& e : h.edges())
            if (spec.qualifies(e, in_w)) ++hit;
        return target_edges - hit;
    };

    ClosenessReport r;
    r.normalizer = detail::power(h.max_class_size(), h.uniformity());

    // Number of placements, saturating.
    std::uint64_t placements = 1;
    bool exhaustive = n <= opts.max_exhaustive_class;
    for (int c = 0; c < k && exhaustive; ++c) {
        std::uint64_t binom = 1;
        for (int i = 0; i < spec.base.d[c]; ++i) binom = binom * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
        if (binom != 0 && placements > opts.max_placements / binom) exhaustive = false;
        placements *= binom;
    }
    if (placements > opts.max_placements) exhaustive = false;

    if (exhaustive) {
        Placement cur(static_cast<std::size_t>(k));
        std::optional<std::uint64_t> best;
        auto choose = [&](auto& self, int cls, int start) -> void {
            if (cls == k) {
                auto miss = missing_for(cur);
                if (!best || miss < *best) {
                    best = miss;
                    r.witness_w = cur;
                }
                return;
            }
            if (static_cast<int>(cur[cls].size()) == spec.base.d[cls]) {
                self(self, cls + 1, 0);
                return;
            }
            for (int p = start; p <= n - (spec.base.d[cls] - static_cast<int>(cur[cls].size())); ++p) {
                cur[cls].push_back(p);
                self(self, cls, p + 1);
                cur[cls].pop_back();
            }
        };
        choose(choose, 0, 0);
        r.missing_edges = *best;
    } else {
        Rng rng(opts.seed);
        auto climb = [&](Placement p) {
            auto miss = missing_for(p);
            for (bool improved = true; improved;) {
                improved = false;
                for (int c = 0; c < k; ++c) {
                    std::vector<bool> in(static_cast<std::size_t>(n), false);
                    for (int pos : p[c]) in[pos] = true;
                    for (std::size_t i = 0; i < p[c].size(); ++i)
                        for (int u = 0; u < n; ++u) {
                            if (in[u]) continue;
                            Placement q = p;
                            q[c][i] = u;
                            std::sort(q[c].begin(), q[c].end());
                            auto m2 = missing_for(q);
                            if (m2 < miss) {
                                miss = m2;
                                p = std::move(q);
                                improved = true;
                                goto next_round;
                            }
                        }
                }
            next_round:;
            }
            return std::make_pair(miss, p);
        };
        auto [miss, p] = climb(spec.canonical_placement());
        r.missing_edges = miss;
        r.witness_w = p;
        for (int t = 0; t < opts.restarts; ++t) {
            Placement start(static_cast<std::size_t>(k));
            for (int c = 0; c < k; ++c) {
                std::vector<int> all(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) all[i] = i;
                rng.shuffle(all);
                start[c].assign(all.begin(), all.begin() + spec.base.d[c]);
                std::sort(start[c].begin(), start[c].end());
            }
            auto [m2, p2] = climb(std::move(start));
            if (m2 < r.missing_edges) {
                r.missing_edges = m2;
                r.witness_w = p2;
            }
        }
        r.upper_bound = true;
    }
    r.epsilon = Rational(Integer(r.missing_edges), r.normalizer);
    return r;
}

/// Vertices v with |N_target(v) \ N_H(v)| > α·n^{k-1}.
inline VertexSet bad_vertices(const KPartiteHypergraph& h, const KPartiteHypergraph& target, const Rational& alpha)
{
    detail::require_same_shape(h, target, "bad_vertices");
    std::vector<std::uint64_t> missing(static_cast<std::size_t>(h.num_vertices()), 0);
    for (const auto& e : target.edges())
        if (!h.contains(e))
            for (const auto& v : e) ++missing[h.index_of(v)];
    const Rational limit = alpha * Rational(detail::power(h.max_class_size(), h.uniformity() - 1));
    std::vector<VertexId> bad;
    for (int v = 0; v < h.num_vertices(); ++v)
        if (Rational(Integer(missing[v])) > limit) bad.push_back(h.vertex_at(v));
    return VertexSet(std::move(bad));
}

/// "UUUW"-style type of an edge: its U vertices, then its W vertices.
inline std::string edge_type(const Edge& e, const std::vector<std::vector<bool>>& in_w)
{
    int w = 0;
    for (const auto& v : e) w += in_w[v.cls][v.pos] ? 1 : 0;
    return std::string(e.size() - static_cast<std::size_t>(w), 'U') + std::string(static_cast<std::size_t>(w), 'W');
}

/// Whether x1..x4 together with the vertices of three matching edges split
/// into four disjoint UUUW edges of H, each holding one x and one vertex of
/// each matching edge (the augmenting configuration used for close
/// hypergraphs). The four edges are searched exhaustively.
inline bool is_good_triple(const KPartiteHypergraph& h, const std::vector<std::vector<bool>>& in_w, const std::vector<VertexId>& xs, const std::vector<Edge>& triple)
{
    if (xs.size() != 4 || triple.size() != 3) throw InputError("is_good_triple: need four vertices and three edges");
    std::vector<VertexId> pool(xs.begin(), xs.end());
    for (const auto& e : triple) pool.insert(pool.end(), e.begin(), e.end());
    std::vector<bool> used(pool.size(), false);
    auto group_of = [&](std::size_t i) { return i < 4 ? 0 : 1 + static_cast<int>((i - 4) / 4); };
    auto rec = [&](auto& self, std::size_t x) -> bool {
        if (x == 4) return true;
        used[x] = true;
        // one vertex from each matching edge, all classes distinct
        std::vector<std::size_t> pick{x};
        auto extend = [&](auto& ext, int group) -> bool {
            if (group == 4) {
                std::vector<VertexId> vs;
                for (auto i : pick) vs.push_back(pool[i]);
                std::sort(vs.begin(), vs.end());
                for (std::size_t a = 1; a < vs.size(); ++a)
                    if (vs[a].cls == vs[a - 1].cls) return false;
                Edge e{std::span<const VertexId>(vs)};
                if (!h.contains(e) || edge_type(e, in_w) != "UUUW") return false;
                return self(self, x + 1);
            }
            for (std::size_t i = 4; i < pool.size(); ++i) {
                if (used[i] || group_of(i) != group) continue;
                used[i] = true;
                pick.push_back(i);
                if (ext(ext, group + 1)) return true;
                pick.pop_back();
                used[i] = false;
            }
            return false;
        };
        bool ok = extend(extend, 1);
        if (!ok) used[x] = false;
        return ok;
    };
    return rec(rec, 0);
}

struct AbsorbingCheck
{
    bool ok = true;
    std::optional<VertexSet> counterexample;
    std::uint64_t sets_checked = 0;
};

struct AbsorbingLimits
{
    std::uint64_t max_sets = 2000000;
    SearchBudget pm_budget{};
};

/// Every balanced S ⊆ V \ V(M) with |S| ≤ b must leave H[S ∪ V(M)] with a
/// perfect matching. Sets are visited by size, then lexicographically; the
/// first failure is returned.
inline AbsorbingCheck verify_absorbing(const KPartiteHypergraph& h, const Matching& m, int b, AbsorbingLimits limits = {})
{
    if (h.uniformity() != h.num_classes()) throw InputError("verify_absorbing: needs a k-partite k-graph");
    if (auto err = check_matching(h, m)) throw InputError("verify_absorbing: " + *err);
    if (b < 0) throw InputError("verify_absorbing: b must be nonnegative");
    const int k = h.num_classes();
    const auto covered = m.covered();
    std::vector<std::vector<VertexId>> free(static_cast<std::size_t>(k));
    for (const auto& v : h.vertices())
        if (!covered.contains(v)) free[v.cls].push_back(v);

    AbsorbingCheck out;
    // Total count for the progress message.
    std::uint64_t total = 0;
    for (int j = 0; j * k <= b; ++j) {
        std::uint64_t prod = 1;
        for (int c = 0; c < k; ++c) {
            std::uint64_t binom = 1;
            const auto avail = static_cast<std::uint64_t>(free[c].size());
            if (static_cast<std::uint64_t>(j) > avail) {
                binom = 0;
            } else {
                for (int i = 0; i < j; ++i) binom = binom * (avail - static_cast<std::uint64_t>(i)) / static_cast<std::uint64_t>(i + 1);
            }
            prod = binom == 0 ? 0 : (prod > UINT64_MAX / binom ? UINT64_MAX : prod * binom);
        }
        total = total > UINT64_MAX - prod ? UINT64_MAX : total + prod;
    }

    auto check_set = [&](const std::vector<VertexId>& s) {
        if (out.sets_checked >= limits.max_sets)
            throw ResourceError("verify_absorbing: enumeration budget exhausted after " + std::to_string(out.sets_checked) + " of " + std::to_string(total) + " balanced sets");
        ++out.sets_checked;
        VertexSet keep = covered.united(VertexSet(s));
        if (keep.empty()) return true;
        auto sub = induced_subhypergraph(h, keep);
        auto pm = has_perfect_matching(sub.graph, limits.pm_budget);
        if (!pm.complete) throw ResourceError("verify_absorbing: perfect matching search budget exhausted");
        return pm.found();
    };

    for (int j = 0; j * k <= b; ++j) {
        bool feasible = true;
        for (int c = 0; c < k; ++c) feasible &= static_cast<int>(free[c].size()) >= j;
        if (!feasible) break;
        std::vector<std::vector<int>> idx(static_cast<std::size_t>(k));
        std::vector<VertexId> s;
        // Product over classes of j-combinations, lexicographic.
        auto rec = [&](auto& self, int cls, int start) -> bool {
            if (cls == k) {
                if (!check_set(s)) {
                    out.ok = false;
                    out.counterexample = VertexSet(s);
                    return false;
                }
                return true;
            }
            if (static_cast<int>(idx[cls].size()) == j) return self(self, cls + 1, 0);
            const int avail = static_cast<int>(free[cls].size());
            for (int p = start; p <= avail - (j - static_cast<int>(idx[cls].size())); ++p) {
                idx[cls].push_back(p);
                s.push_back(free[cls][p]);
                bool cont = self(self, cls, p + 1);
                s.pop_back();
                idx[cls].pop_back();
                if (!cont) return false;
            }
            return true;
        };
        if (!rec(rec, 0, 0)) return out;
    }
    return out;
}

struct AbsorbingSearch
{
    int attempts = 200;
    std::uint64_t seed = 1;
    AbsorbingLimits limits{};
};

/// The empty matching first, then seeded random greedy matchings of random
/// size in [1, size_cap]; the first one passing verify_absorbing is returned.
inline std::optional<Matching> find_absorbing(const KPartiteHypergraph& h, int size_cap, int b, AbsorbingSearch opts = {})
{
    if (verify_absorbing(h, {}, b, opts.limits).ok) return Matching{};
    if (size_cap < 1 || h.num_edges() == 0) return std::nullopt;
    Rng rng(opts.seed);
    for (int attempt = 0; attempt < opts.attempts; ++attempt) {
        const int want = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(size_cap)));
        std::vector<int> order(h.num_edges());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        rng.shuffle(order);
        Matching m;
        std::vector<char> taken(static_cast<std::size_t>(h.num_vertices()), 0);
        for (int ei : order) {
            if (static_cast<int>(m.size()) == want) break;
            const Edge& e = h.edge(static_cast<std::size_t>(ei));
            if (std::any_of(e.begin(), e.end(), [&](VertexId v) { return taken[h.index_of(v)] != 0; })) continue;
            for (const auto& v : e) taken[h.index_of(v)] = 1;
            m.edges.push_back(e);
        }
        m.normalize();
        if (verify_absorbing(h, m, b, opts.limits).ok) return m;
    }
    return std::nullopt;
}

struct SparsifierProfile
{
    std::map<Edge, Rational> edge_probabilities;
    std::uint64_t seed = 0;
};

inline SparsifierProfile sparsifier_profile(const KPartiteHypergraph& h, const std::vector<FractionalAssignment>& fpms, std::uint64_t seed)
{
    SparsifierProfile prof;
    prof.seed = seed;
    for (const auto& f : fpms)
        for (const auto& [e, w] : f.weights) {
            if (!h.contains(e)) throw InputError("sparsify: edge {" + format_edge(e) + "} is not in the hypergraph");
            prof.edge_probabilities[e] += w;
        }
    for (const auto& [e, p] : prof.edge_probabilities)
        if (p > 1 || p < 0) throw InputError("sparsify: probability " + to_string(p) + " on edge {" + format_edge(e) + "} outside [0,1]");
    return prof;
}

/// Keeps each edge independently with probability Σ_i f_i(e), drawn
/// exactly, in canonical edge order.
inline KPartiteHypergraph sparsify(const KPartiteHypergraph& h, const std::vector<FractionalAssignment>& fpms, std::uint64_t seed)
{
    auto prof = sparsifier_profile(h, fpms, seed);
    Rng rng(seed);
    std::vector<Edge> kept;
    for (const auto& [e, p] : prof.edge_probabilities)
        if (rng.bernoulli(p)) kept.push_back(e);
    return KPartiteHypergraph(h.class_sizes(), h.uniformity(), std::move(kept));
}

struct NibbleParams
{
    double bite = 0.1;
    std::uint64_t seed = 1;
    int max_rounds = 100000;
};

struct NibbleResult
{
    std::vector<Edge> cover;     ///< canonical order
    std::vector<Edge> matching;  ///< cover edges avoiding doubly covered vertices
    int rounds = 0;
    std::size_t greedy_edges = 0;
};

/// Random-bite edge cover. Each round keeps every edge inside the
/// uncovered set with probability bite / (max uncovered degree), discards
/// selected edges that meet another selected edge, and marks the rest's
/// vertices covered. Below k·ln|V| uncovered vertices the cover is finished
/// greedily by edges covering the most uncovered vertices. The matching
/// drops every cover edge with a vertex covered twice.
inline NibbleResult nibble_cover(const KPartiteHypergraph& h, NibbleParams params = {})
{
    for (const auto& v : h.vertices())
        if (h.vertex_degree(v) == 0) throw InputError("nibble_cover: vertex " + format_vertex(v) + " has degree 0");
    if (!(params.bite > 0)) throw InputError("nibble_cover: bite must be positive");
    Rng rng(params.seed);
    NibbleResult out;
    const int nv = h.num_vertices();
    std::vector<char> covered(static_cast<std::size_t>(nv), 0);
    int uncovered = nv;
    const double stop_below = h.uniformity() * std::log(static_cast<double>(nv));
    std::vector<Edge> chosen;

    auto edge_free = [&](const Edge& e) {
        return std::none_of(e.begin(), e.end(), [&](VertexId v) { return covered[h.index_of(v)] != 0; });
    };

    while (uncovered >= stop_below && out.rounds < params.max_rounds) {
        std::vector<int> live;
        std::vector<int> deg(static_cast<std::size_t>(nv), 0);
        for (std::size_t ei = 0; ei < h.num_edges(); ++ei)
            if (edge_free(h.edge(ei))) {
                live.push_back(static_cast<int>(ei));
                for (const auto& v : h.edge(ei)) ++deg[h.index_of(v)];
            }
        if (live.empty()) break;
        ++out.rounds;
        const double p = params.bite / static_cast<double>(*std::max_element(deg.begin(), deg.end()));
        std::vector<int> picked;
        std::vector<int> hits(static_cast<std::size_t>(nv), 0);
        for (int ei : live)
            if (rng.bernoulli(p)) {
                picked.push_back(ei);
                for (const auto& v : h.edge(static_cast<std::size_t>(ei))) ++hits[h.index_of(v)];
            }
        for (int ei : picked) {
            const Edge& e = h.edge(static_cast<std::size_t>(ei));
            if (std::any_of(e.begin(), e.end(), [&](VertexId v) { return hits[h.index_of(v)] > 1; })) continue;
            chosen.push_back(e);
            for (const auto& v : e) {
                covered[h.index_of(v)] = 1;
                --uncovered;
            }
        }
    }
    while (uncovered > 0) {
        int best = -1;
        int best_gain = 0;
        for (std::size_t ei = 0; ei < h.num_edges(); ++ei) {
            int gain = 0;
            for (const auto& v : h.edge(ei)) gain += covered[h.index_of(v)] ? 0 : 1;
            if (gain > best_gain) {
                best_gain = gain;
                best = static_cast<int>(ei);
            }
        }
        const Edge& e = h.edge(static_cast<std::size_t>(best));
        chosen.push_back(e);
        ++out.greedy_edges;
        for (const auto& v : e)
            if (!covered[h.index_of(v)]) {
                covered[h.index_of(v)] = 1;
                --uncovered;
            }
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    std::vector<int> times(static_cast<std::size_t>(nv), 0);
    for (const auto& e : chosen)
        for (const auto& v : e) ++times[h.index_of(v)];
    for (const auto& e : chosen)
        if (std::all_of(e.begin(), e.end(), [&](VertexId v) { return times[h.index_of(v)] == 1; })) out.matching.push_back(e);
    out.cover = std::move(chosen);
    return out;
}

}  // namespace rml

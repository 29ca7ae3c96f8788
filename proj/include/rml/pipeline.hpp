#pragma once

// Toy-scale composition of the rainbow perfect matching argument on the
// color lift H of a family: a closeness dichotomy against H'_{1,3}(n),
// staged greedy matchings in the close case, and absorbing matching +
// nibble near-perfect matching + absorption otherwise. Every stage is
// recorded in a JSON trace; greedy stages fall back to the exact solver
// and the fallback is logged.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rml/constructions.hpp"
#include "rml/core/hypergraph.hpp"
#include "rml/core/io.hpp"
#include "rml/error.hpp"
#include "rml/fractional.hpp"
#include "rml/rational.hpp"
#include "rml/solvers.hpp"
#include "rml/structure.hpp"

namespace rml {

struct PipelineConfig
{
    Rational epsilon{1, 10};
    Rational gamma{1, 100};
    Rational beta{1, 1000};
    Rational eta{1, 10000};
    std::uint64_t seed = 1;
    SearchBudget budget{20000000, 0};
    int absorb_size_cap = 2;
    int absorb_b = 4;
    int absorb_attempts = 50;
    int sparsify_t = 2;
    double nibble_bite = 0.1;

    /// ε given; γ = ε/10, β = γ/10, η = β/10.
    static PipelineConfig with_epsilon(const Rational& eps)
    {
        PipelineConfig c;
        c.epsilon = eps;
        c.gamma = eps / 10;
        c.beta = c.gamma / 10;
        c.eta = c.beta / 10;
        return c;
    }

    void validate() const
    {
        if (!(0 < eta && eta < beta && beta < gamma && gamma < epsilon && epsilon < 1))
            throw InputError("pipeline config: need 0 < eta < beta < gamma < epsilon < 1");
        if (absorb_size_cap < 0 || absorb_b < 0 || absorb_attempts < 0 || sparsify_t < 0) throw InputError("pipeline config: counts must be nonnegative");
        if (!(nibble_bite > 0)) throw InputError("pipeline config: nibble bite must be positive");
    }
};

struct DegreeHypothesis
{
    bool holds = false;
    int worst_color = 0;       ///< zero-based
    VertexId worst_vertex{};   ///< in the family's vertex set
    std::size_t worst_value = 0;
    std::int64_t delta = 0;    ///< δ(n, r, s)
};

/// Minimum over colors i and vertices y of the lifted pair degree
/// d_H({q_i, y}), compared strictly against δ(n, r, s). Ties go to the
/// lowest color, then the lowest vertex.
inline DegreeHypothesis degree_hypothesis_check(const Family& family)
{
    if (family.empty()) throw InputError("degree_hypothesis_check: empty family");
    const auto lifted = lift_family(family);
    const int n = family.front().max_class_size();
    DegreeHypothesis out;
    out.delta = delta_threshold(n).delta;
    bool first = true;
    for (int i = 0; i < static_cast<int>(family.size()); ++i)
        for (const auto& y : family.front().vertices()) {
            VertexSet pair{{0, i}, {y.cls + 1, y.pos}};
            auto d = degree(lifted, pair);
            if (first || d < out.worst_value) {
                first = false;
                out.worst_value = d;
                out.worst_color = i;
                out.worst_vertex = y;
            }
        }
    out.holds = static_cast<std::int64_t>(out.worst_value) > out.delta;
    return out;
}

struct PipelineStage
{
    std::string name;
    nlohmann::json data;
};

struct PipelineReport
{
    std::string branch;  ///< "close", "absorbing" or "precheck"
    bool success = false;
    std::string diagnostic;
    std::vector<std::string> fallbacks;
    std::vector<PipelineStage> stages;
    std::optional<RainbowMatching> witness;

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["branch"] = branch;
        j["success"] = success;
        j["diagnostic"] = diagnostic;
        j["fallbacks"] = fallbacks;
        j["stages"] = nlohmann::json::array();
        for (const auto& s : stages) j["stages"].push_back({{"stage", s.name}, {"data", s.data}});
        if (witness) {
            nlohmann::json picks = nlohmann::json::array();
            for (const auto& p : witness->picks) picks.push_back({{"color", p.color + 1}, {"edge", format_edge(p.edge)}});
            j["witness"] = picks;
        } else {
            j["witness"] = nullptr;
        }
        return j;
    }
};

namespace detail {

/// Mutable bookkeeping of a partial matching inside the lift.
class PartialMatching
{
public:
    explicit PartialMatching(const KPartiteHypergraph& h) : h_(h), used_(static_cast<std::size_t>(h.num_vertices()), 0) {}

    bool free(VertexId v) const { return used_[h_.index_of(v)] == 0; }
    bool free(const Edge& e) const
    {
        return std::all_of(e.begin(), e.end(), [&](VertexId v) { return free(v); });
    }

    void add(const Edge& e)
    {
        for (const auto& v : e) used_[h_.index_of(v)] = 1;
        edges_.push_back(e);
    }

    const std::vector<Edge>& edges() const { return edges_; }

    VertexSet used_set() const
    {
        std::vector<VertexId> vs;
        for (int i = 0; i < h_.num_vertices(); ++i)
            if (used_[i]) vs.push_back(h_.vertex_at(i));
        return VertexSet(std::move(vs));
    }

    int free_in_class(int cls) const
    {
        int c = 0;
        for (int p = 0; p < h_.class_size(cls); ++p) c += free({cls, p}) ? 1 : 0;
        return c;
    }

    /// First free edge (canonical order) accepted by `pred`.
    template <class Pred>
    std::optional<Edge> first_free(Pred&& pred) const
    {
        for (const auto& e : h_.edges())
            if (free(e) && pred(e)) return e;
        return std::nullopt;
    }

private:
    const KPartiteHypergraph& h_;
    std::vector<char> used_;
    std::vector<Edge> edges_;
};

inline Rational sqrt_floor(const Rational& x, int digits = 6)
{
    const double s = std::sqrt(boost::multiprecision::mpq_rational(x).convert_to<double>());
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    auto num = Integer(static_cast<long long>(std::floor(s * scale.convert_to<double>())));
    return Rational(num, scale);
}

inline nlohmann::json edge_list(const std::vector<Edge>& edges)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : edges) out.push_back(format_edge(e));
    return out;
}

}  // namespace detail

/// Runs the composition on H = lift(F). Success is not guaranteed at toy
/// scale; the report names the stage that failed and any fallback used.
inline PipelineReport run_pipeline(const Family& family, const PipelineConfig& cfg)
{
    cfg.validate();
    if (family.empty()) throw InputError("run_pipeline: empty family");
    require_shared_vertex_set(family);
    const auto& shape = family.front();
    const int n = shape.max_class_size();
    if (!shape.is_balanced() || static_cast<int>(family.size()) != n)
        throw InputError("run_pipeline: need balanced classes of size n and |F| = n");
    if (shape.num_classes() != 3 || shape.uniformity() != 3) throw InputError("run_pipeline: members must be 3-partite 3-graphs");

    PipelineReport rep;
    const KPartiteHypergraph h = lift_family(family);
    rep.stages.push_back({"lift", {{"classes", h.class_sizes()}, {"edges", h.num_edges()}}});

    auto dh = degree_hypothesis_check(family);
    rep.stages.push_back({"degree-hypothesis",
                          {{"holds", dh.holds},
                           {"delta", dh.delta},
                           {"min_pair_degree", dh.worst_value},
                           {"color", dh.worst_color + 1},
                           {"vertex", format_vertex(dh.worst_vertex)}}});

    // Matching numbers: ν of the union bounds every rainbow matching.
    std::vector<Edge> union_edges;
    bool identical = true;
    for (const auto& f : family) {
        union_edges.insert(union_edges.end(), f.edges().begin(), f.edges().end());
        identical &= f == family.front();
    }
    const KPartiteHypergraph uni(shape.class_sizes(), 3, std::move(union_edges));
    auto nu_union = max_matching(uni, cfg.budget);
    rep.stages.push_back({"matching-number", {{"nu_union", nu_union.size()}, {"complete", nu_union.complete}, {"identical_colors", identical}}});
    if (nu_union.complete && static_cast<int>(nu_union.size()) < n) {
        rep.branch = "precheck";
        rep.diagnostic = std::string("obstruction: nu(") + (identical ? "F1" : "F1 u ... u Fn") + ") = " + std::to_string(nu_union.size()) + " < n = " + std::to_string(n) + ", so no rainbow perfect matching exists";
        return rep;
    }

    auto finish = [&](const std::vector<Edge>& pm_edges) {
        RainbowMatching rm;
        for (const auto& e : pm_edges) {
            auto [c, edge] = unlift_edge(e);
            rm.picks.push_back({c, edge});
        }
        std::sort(rm.picks.begin(), rm.picks.end());
        if (auto err = check_rainbow_matching(family, rm); err || static_cast<int>(rm.size()) != n)
            throw std::logic_error("run_pipeline: produced witness failed re-verification: " + err.value_or("wrong size"));
        rep.witness = std::move(rm);
        rep.success = true;
    };

    auto exact_remainder = [&](const detail::PartialMatching& pm, const std::string& why) -> bool {
        rep.fallbacks.push_back(why);
        auto used = pm.used_set();
        std::vector<Edge> edges = pm.edges();
        bool ok = false;
        std::uint64_t nodes = 0;
        bool complete = true;
        if (static_cast<int>(used.size()) == h.num_vertices()) {
            ok = true;
        } else {
            std::vector<VertexId> keep;
            for (const auto& v : h.vertices())
                if (!used.contains(v)) keep.push_back(v);
            auto sub = induced_subhypergraph(h, VertexSet(std::move(keep)));
            auto res = has_perfect_matching(sub.graph, cfg.budget);
            nodes = res.nodes;
            complete = res.complete;
            if (res.matching) {
                ok = true;
                for (const auto& e : res.matching->edges) edges.push_back(sub.to_old(e));
            }
        }
        rep.stages.push_back({"exact-remainder", {{"reason", why}, {"found", ok}, {"complete", complete}, {"nodes", nodes}}});
        if (ok) {
            finish(edges);
            return true;
        }
        if (pm.edges().empty()) {
            rep.diagnostic = complete ? "no perfect matching of H exists (exact search)" : "staged matching failed (" + why + ") and the exact search ran out of budget";
            return false;
        }
        auto full = has_perfect_matching(h, cfg.budget);
        rep.fallbacks.push_back("exact-full");
        rep.stages.push_back({"exact-full", {{"found", full.found()}, {"complete", full.complete}, {"nodes", full.nodes}}});
        if (full.matching) {
            finish(full.matching->edges);
            rep.diagnostic = "staged matching could not be completed (" + why + "); the exact solver found a perfect matching of H";
        } else if (!full.complete) {
            rep.diagnostic = "staged matching failed (" + why + ") and the exact search ran out of budget";
        } else {
            rep.diagnostic = "no perfect matching of H exists (exact search)";
        }
        return rep.success;
    };

    // Closeness dichotomy.
    const auto target_spec = TargetSpec::h13(n);
    auto close = min_closeness(h, target_spec, {12, 200000, 8, cfg.seed});
    rep.stages.push_back({"closeness",
                          {{"missing_edges", close.missing_edges},
                           {"normalizer", close.normalizer.str()},
                           {"epsilon_achieved", to_string(close.epsilon)},
                           {"epsilon", to_string(cfg.epsilon)},
                           {"upper_bound", close.upper_bound}}});

    if (close.epsilon <= cfg.epsilon) {
        rep.branch = "close";
        const auto in_w = target_spec.membership(*close.witness_w);
        const auto target = target_spec.build(*close.witness_w);
        const Rational alpha = detail::sqrt_floor(cfg.epsilon);
        const auto bad = bad_vertices(h, target, alpha);
        detail::PartialMatching pm(h);

        // M1: cover every bad vertex.
        for (const auto& v : bad) {
            if (!pm.free(v)) continue;
            auto e = pm.first_free([&](const Edge& e) { return e.contains(v); });
            if (!e) {
                rep.stages.push_back({"match-bad", {{"bad_vertices", bad.size()}, {"failed_at", format_vertex(v)}}});
                exact_remainder(pm, "match-bad: no free edge through bad vertex " + format_vertex(v));
                return rep;
            }
            pm.add(*e);
        }
        rep.stages.push_back({"match-bad", {{"bad_vertices", bad.size()}, {"alpha", to_string(alpha)}, {"matching_size", pm.edges().size()}}});

        auto w_free = [&]() {
            std::vector<int> per(3, 0);
            for (int c = 1; c <= 3; ++c)
                for (int p = 0; p < n; ++p)
                    if (in_w[c][p] && pm.free({c, p})) ++per[c - 1];
            return per;
        };
        auto w_count = [&](const Edge& e) {
            int w = 0;
            for (const auto& v : e) w += in_w[v.cls][v.pos] ? 1 : 0;
            return w;
        };

        // M3a: restore #free W = #free per class by UUWW (or UUUU) edges.
        std::size_t m3a = 0;
        for (;;) {
            auto per = w_free();
            const int wsum = per[0] + per[1] + per[2];
            const int remaining = pm.free_in_class(0);
            if (wsum == remaining) break;
            const int want_w = wsum > remaining ? 2 : 0;
            auto e = pm.first_free([&](const Edge& e) { return w_count(e) == want_w; });
            if (!e) {
                rep.stages.push_back({"uuww", {{"matching_size", m3a}, {"stuck", true}}});
                exact_remainder(pm, std::string("uuww: no free edge of type ") + (want_w == 2 ? "UUWW" : "UUUU"));
                return rep;
            }
            pm.add(*e);
            ++m3a;
        }
        rep.stages.push_back({"uuww", {{"matching_size", m3a}}});

        // M3b: equalize free W across the three classes with UUUW edges
        // whose W vertex lies in the fullest class.
        std::size_t m3b = 0;
        for (;;) {
            auto per = w_free();
            auto [lo, hi] = std::minmax_element(per.begin(), per.end());
            if (*hi - *lo <= 1) break;
            const int cls = static_cast<int>(hi - per.begin()) + 1;
            auto e = pm.first_free([&](const Edge& e) {
                if (w_count(e) != 1) return false;
                auto v = e.in_class(cls);
                return v && in_w[cls][v->pos];
            });
            if (!e) {
                rep.stages.push_back({"w-balance", {{"matching_size", m3b}, {"stuck", true}}});
                exact_remainder(pm, "w-balance: no free UUUW edge with W in class " + std::to_string(cls + 1));
                return rep;
            }
            pm.add(*e);
            ++m3b;
        }
        rep.stages.push_back({"w-balance", {{"matching_size", m3b}, {"free_w", w_free()}}});

        // M4: greedy UUUW completion, exact fallback.
        const std::size_t before = pm.edges().size();
        for (int p = 0; p < n; ++p) {
            if (!pm.free({0, p})) continue;
            auto e = pm.first_free([&](const Edge& e) { return e.contains({0, p}) && w_count(e) == 1; });
            if (e) pm.add(*e);
        }
        const bool complete = static_cast<int>(pm.edges().size()) == n;
        rep.stages.push_back({"final-pm", {{"greedy_edges", pm.edges().size() - before}, {"complete", complete}}});
        if (complete) {
            finish(pm.edges());
            return rep;
        }
        exact_remainder(pm, "final-pm: greedy UUUW completion left vertices uncovered");
        return rep;
    }

    // Far from the extremal construction: absorbing route.
    rep.branch = "absorbing";
    AbsorbingSearch search;
    search.attempts = cfg.absorb_attempts;
    search.seed = Rng(cfg.seed).split(1).next();
    search.limits.pm_budget = cfg.budget;
    std::optional<Matching> absorber;
    try {
        absorber = find_absorbing(h, cfg.absorb_size_cap, cfg.absorb_b, search);
    } catch (const ResourceError& err) {
        rep.stages.push_back({"absorbing", {{"error", err.what()}}});
    }
    detail::PartialMatching pm(h);
    if (!absorber) {
        rep.stages.push_back({"absorbing", {{"found", false}, {"size_cap", cfg.absorb_size_cap}, {"b", cfg.absorb_b}}});
        exact_remainder(pm, "absorbing: no absorbing matching found within the attempt budget");
        return rep;
    }
    for (const auto& e : absorber->edges) pm.add(e);
    rep.stages.push_back({"absorbing", {{"found", true}, {"size", absorber->size()}, {"b", cfg.absorb_b}, {"edges", detail::edge_list(absorber->edges)}}});

    // Near-perfect matching of H - V(M1): sparsify by FPMs, then nibble.
    std::vector<Edge> near;
    {
        std::vector<VertexId> keep;
        for (const auto& v : h.vertices())
            if (pm.free(v)) keep.push_back(v);
        if (keep.empty()) {
            finish(pm.edges());
            return rep;
        }
        auto rest = induced_subhypergraph(h, VertexSet(std::move(keep)));
        KPartiteHypergraph host = rest.graph;
        nlohmann::json data;
        try {
            auto dec = edge_disjoint_fpm(rest.graph, {cfg.sparsify_t});
            data["fpms"] = dec.fpms.size();
            if (!dec.fpms.empty()) {
                auto sparse = sparsify(rest.graph, dec.fpms, Rng(cfg.seed).split(2).next());
                bool positive = true;
                for (const auto& v : sparse.vertices()) positive &= sparse.vertex_degree(v) > 0;
                data["sparsified_edges"] = sparse.num_edges();
                if (positive)
                    host = std::move(sparse);
                else
                    rep.fallbacks.push_back("sparsify: isolated vertex, nibble runs on the unsparsified remainder");
            }
        } catch (const ResourceError& err) {
            data["sparsify_error"] = err.what();
        }
        try {
            auto nib = nibble_cover(host, {cfg.nibble_bite, Rng(cfg.seed).split(3).next(), 100000});
            for (const auto& e : nib.matching) near.push_back(rest.to_old(e));
            data["cover_size"] = nib.cover.size();
            data["matching_size"] = nib.matching.size();
            data["rounds"] = nib.rounds;
        } catch (const InputError& err) {
            data["nibble_error"] = err.what();
            rep.fallbacks.push_back("nibble: remainder has an isolated vertex");
        }
        rep.stages.push_back({"near-perfect", data});
    }
    for (const auto& e : near) pm.add(e);

    // Absorb the leftover S inside S ∪ V(M1).
    std::vector<VertexId> leftover;
    for (const auto& v : h.vertices())
        if (pm.free(v)) leftover.push_back(v);
    const bool within = static_cast<int>(leftover.size()) <= cfg.absorb_b;
    VertexSet keep = absorber->covered().united(VertexSet(leftover));
    std::vector<Edge> final_edges = near;
    bool absorbed = keep.empty();
    std::uint64_t nodes = 0;
    if (!keep.empty()) {
        auto sub = induced_subhypergraph(h, keep);
        auto res = has_perfect_matching(sub.graph, cfg.budget);
        nodes = res.nodes;
        if (res.matching) {
            absorbed = true;
            for (const auto& e : res.matching->edges) final_edges.push_back(sub.to_old(e));
        }
    }
    if (!within) rep.fallbacks.push_back("absorb: leftover of size " + std::to_string(leftover.size()) + " exceeds b = " + std::to_string(cfg.absorb_b) + ", exact attempt");
    rep.stages.push_back({"absorb", {{"leftover", leftover.size()}, {"within_capacity", within}, {"absorbed", absorbed}, {"nodes", nodes}}});
    if (absorbed) {
        finish(final_edges);
        return rep;
    }
    detail::PartialMatching empty(h);
    exact_remainder(empty, "absorb: leftover could not be absorbed");
    return rep;
}

}  // namespace rml

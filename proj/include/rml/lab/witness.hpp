#pragma once

// JSON witnesses and their independent re-verification.
//
//   {"kind":"matching","perfect":bool,"edges":["1:1 2:1 3:1", ...]}
//   {"kind":"rainbow","picks":[{"color":1,"edge":"..."}, ...]}
//   {"kind":"fractional-matching","perfect":bool,"size":"p/q","weights":{"<edge>":"p/q"}}
//   {"kind":"fractional-cover","size":"p/q","weights":{"c:p":"p/q"}}
//   {"kind":"rainbow-fractional","size":"p/q","perfect":bool,"picks":[{"color":1,"edge":"...","weight":"p/q"}]}
//
// Colors are 1-based in files.

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "rml/core/hypergraph.hpp"
#include "rml/core/io.hpp"
#include "rml/error.hpp"
#include "rml/fractional.hpp"
#include "rml/rational.hpp"
#include "rml/solvers.hpp"

namespace rml::lab {

using nlohmann::json;

inline json to_json(const Matching& m, bool perfect)
{
    json edges = json::array();
    for (const auto& e : m.edges) edges.push_back(format_edge(e));
    return {{"kind", "matching"}, {"perfect", perfect}, {"size", m.size()}, {"edges", edges}};
}

inline json to_json(const RainbowMatching& rm)
{
    json picks = json::array();
    for (const auto& p : rm.picks) picks.push_back({{"color", p.color + 1}, {"edge", format_edge(p.edge)}});
    return {{"kind", "rainbow"}, {"size", rm.size()}, {"picks", picks}};
}

inline json to_json(const FractionalAssignment& f, bool perfect)
{
    json w = json::object();
    for (const auto& [e, x] : f.weights) w[format_edge(e)] = to_string(x);
    return {{"kind", "fractional-matching"}, {"perfect", perfect}, {"size", to_string(f.size())}, {"support", f.support_size()}, {"weights", w}};
}

inline json to_json(const FractionalCover& c)
{
    json w = json::object();
    for (const auto& [v, x] : c.weights) w[format_vertex(v)] = to_string(x);
    return {{"kind", "fractional-cover"}, {"size", to_string(c.size())}, {"weights", w}};
}

inline json to_json(const RainbowFractionalPM& r, bool perfect)
{
    json picks = json::array();
    for (std::size_t i = 0; i < r.picks.size(); ++i)
        picks.push_back({{"color", r.picks[i].color + 1}, {"edge", format_edge(r.picks[i].edge)}, {"weight", to_string(r.weights[i])}});
    return {{"kind", "rainbow-fractional"}, {"perfect", perfect}, {"size", to_string(r.size())}, {"picks", picks}};
}

namespace detail {

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("witness: missing field '") + key + "'");
    return j.at(key);
}

inline std::string text(const json& j, const char* key)
{
    const auto& f = field(j, key);
    if (!f.is_string()) throw InputError(std::string("witness: field '") + key + "' must be a string");
    return f.get<std::string>();
}

inline bool flag(const json& j, const char* key)
{
    if (!j.contains(key)) return false;
    if (!j.at(key).is_boolean()) throw InputError(std::string("witness: field '") + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

inline int color(const json& pick)
{
    const auto& c = field(pick, "color");
    if (!c.is_number_integer()) throw InputError("witness: color must be an integer");
    return c.get<int>() - 1;
}

}  // namespace detail

inline Matching matching_from_json(const json& j)
{
    Matching m;
    const auto& edges = detail::field(j, "edges");
    if (!edges.is_array()) throw InputError("witness: 'edges' must be an array");
    for (const auto& e : edges) {
        if (!e.is_string()) throw InputError("witness: edges must be strings");
        m.edges.push_back(parse_edge(e.get<std::string>()));
    }
    return m;
}

inline RainbowMatching rainbow_from_json(const json& j)
{
    RainbowMatching rm;
    const auto& picks = detail::field(j, "picks");
    if (!picks.is_array()) throw InputError("witness: 'picks' must be an array");
    for (const auto& p : picks) rm.picks.push_back({detail::color(p), parse_edge(detail::text(p, "edge"))});
    return rm;
}

inline FractionalAssignment fractional_from_json(const json& j)
{
    FractionalAssignment f;
    const auto& w = detail::field(j, "weights");
    if (!w.is_object()) throw InputError("witness: 'weights' must be an object");
    for (const auto& [k, v] : w.items()) {
        if (!v.is_string()) throw InputError("witness: weights must be rational strings");
        Rational x = parse_rational(v.get<std::string>());
        if (!x.is_zero()) f.weights[parse_edge(k)] += x;
    }
    return f;
}

inline FractionalCover cover_from_json(const json& j)
{
    FractionalCover c;
    const auto& w = detail::field(j, "weights");
    if (!w.is_object()) throw InputError("witness: 'weights' must be an object");
    for (const auto& [k, v] : w.items()) {
        if (!v.is_string()) throw InputError("witness: weights must be rational strings");
        c.weights[parse_vertex(k)] = parse_rational(v.get<std::string>());
    }
    return c;
}

inline RainbowFractionalPM rainbow_fractional_from_json(const json& j)
{
    RainbowFractionalPM r;
    const auto& picks = detail::field(j, "picks");
    if (!picks.is_array()) throw InputError("witness: 'picks' must be an array");
    for (const auto& p : picks) {
        r.picks.push_back({detail::color(p), parse_edge(detail::text(p, "edge"))});
        r.weights.push_back(parse_rational(detail::text(p, "weight")));
    }
    return r;
}

/// A single hypergraph or a family, whichever the witness refers to.
using Instance = std::variant<KPartiteHypergraph, Family>;

/// First violated invariant, or nullopt when the witness is valid for the
/// instance. Malformed witnesses raise InputError.
inline std::optional<std::string> verify_witness(const Instance& inst, const json& w)
{
    const std::string kind = detail::text(w, "kind");
    auto need_graph = [&]() -> const KPartiteHypergraph& {
        if (auto* h = std::get_if<KPartiteHypergraph>(&inst)) return *h;
        const auto& fam = std::get<Family>(inst);
        if (fam.size() == 1) return fam.front();
        throw InputError("witness kind '" + kind + "' needs a single hypergraph, not a family");
    };
    auto need_family = [&]() -> Family {
        if (auto* f = std::get_if<Family>(&inst)) return *f;
        return Family{std::get<KPartiteHypergraph>(inst)};
    };
    auto bounds = [](const KPartiteHypergraph& h, const Edge& e) -> std::optional<std::string> {
        for (const auto& v : e)
            if (!h.in_bounds(v)) return "edge {" + format_edge(e) + "} has out-of-bounds vertex " + format_vertex(v);
        if (static_cast<int>(e.size()) != h.uniformity()) return "edge {" + format_edge(e) + "} has the wrong size";
        return std::nullopt;
    };

    if (kind == "matching") {
        const auto& h = need_graph();
        auto m = matching_from_json(w);
        for (const auto& e : m.edges)
            if (auto err = bounds(h, e)) return err;
        return detail::flag(w, "perfect") ? check_perfect_matching(h, m) : check_matching(h, m);
    }
    if (kind == "rainbow") {
        auto fam = need_family();
        auto rm = rainbow_from_json(w);
        for (const auto& p : rm.picks)
            if (auto err = bounds(fam.front(), p.edge)) return err;
        if (w.contains("size") && w.at("size").is_number_integer() && w.at("size").get<std::size_t>() != rm.size())
            return "declared size " + std::to_string(w.at("size").get<std::size_t>()) + " differs from " + std::to_string(rm.size()) + " picks";
        return check_rainbow_matching(fam, rm);
    }
    if (kind == "fractional-matching") {
        const auto& h = need_graph();
        auto f = fractional_from_json(w);
        for (const auto& [e, x] : f.weights)
            if (auto err = bounds(h, e)) return err;
        if (auto err = check_fractional_matching(h, f, detail::flag(w, "perfect"))) return err;
        if (w.contains("size") && parse_rational(detail::text(w, "size")) != f.size()) return "declared size differs from the weight total " + to_string(f.size());
        return std::nullopt;
    }
    if (kind == "fractional-cover") {
        const auto& h = need_graph();
        auto c = cover_from_json(w);
        if (auto err = check_fractional_cover(h, c)) return err;
        if (w.contains("size") && parse_rational(detail::text(w, "size")) != c.size()) return "declared size differs from the weight total " + to_string(c.size());
        return std::nullopt;
    }
    if (kind == "rainbow-fractional") {
        auto fam = need_family();
        auto r = rainbow_fractional_from_json(w);
        for (const auto& p : r.picks)
            if (auto err = bounds(fam.front(), p.edge)) return err;
        return check_rainbow_fractional(fam, r, parse_rational(detail::text(w, "size")), detail::flag(w, "perfect"));
    }
    throw InputError("unknown witness kind '" + kind + "'");
}

}  // namespace rml::lab

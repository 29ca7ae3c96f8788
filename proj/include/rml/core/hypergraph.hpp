#pragma once

// Data model for k-partite hypergraphs: vertices are addressed by
// (class, position), edges are legal vertex sets (at most one vertex per
// class) of a fixed uniformity l <= k.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rml/error.hpp"

namespace rml {

inline constexpr int kMaxClasses = 8;

/// Zero-based (class, position) address. Ordered lexicographically.
struct VertexId
{
    int cls = 0;
    int pos = 0;

    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// A legal vertex set stored sorted by class. Used both for hyperedges and
/// for the partial sets returned by neighborhood queries.
class Edge
{
public:
    Edge() = default;

    explicit Edge(std::span<const VertexId> vertices)
    {
        if (vertices.size() > static_cast<std::size_t>(kMaxClasses))
            throw InputError("edge has more than " + std::to_string(kMaxClasses) + " vertices");
        size_ = static_cast<std::uint8_t>(vertices.size());
        std::copy(vertices.begin(), vertices.end(), v_.begin());
        std::sort(v_.begin(), v_.begin() + size_);
        for (int i = 0; i < size_; ++i) {
            if (v_[i].cls < 0 || v_[i].pos < 0) throw InputError("negative vertex index in edge");
            if (i > 0 && v_[i].cls == v_[i - 1].cls)
                throw InputError("illegal edge: two vertices in class " + std::to_string(v_[i].cls + 1));
        }
    }

    Edge(std::initializer_list<VertexId> vertices) : Edge(std::span<const VertexId>(vertices.begin(), vertices.size())) {}

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const VertexId* begin() const { return v_.data(); }
    const VertexId* end() const { return v_.data() + size_; }
    const VertexId& operator[](std::size_t i) const { return v_[i]; }

    bool contains(VertexId v) const
    {
        return std::find(begin(), end(), v) != end();
    }

    bool intersects(const Edge& other) const
    {
        return std::any_of(begin(), end(), [&](VertexId v) { return other.contains(v); });
    }

    /// Vertex of this edge in class `cls`, if any.
    std::optional<VertexId> in_class(int cls) const
    {
        for (const auto& v : *this)
            if (v.cls == cls) return v;
        return std::nullopt;
    }

    /// Edge with `v` replaced (class must match).
    Edge with(VertexId v) const
    {
        Edge e = *this;
        for (int i = 0; i < e.size_; ++i)
            if (e.v_[i].cls == v.cls) e.v_[i] = v;
        return e;
    }

    friend bool operator==(const Edge& a, const Edge& b)
    {
        return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
    }

    friend std::strong_ordering operator<=>(const Edge& a, const Edge& b)
    {
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

private:
    std::array<VertexId, kMaxClasses> v_{};
    std::uint8_t size_ = 0;
};

struct EdgeHash
{
    std::size_t operator()(const Edge& e) const noexcept
    {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ e.size();
        for (const auto& v : e) {
            h ^= static_cast<std::uint64_t>(v.cls) * 0x100000001b3ULL + static_cast<std::uint64_t>(v.pos);
            h *= 0x9e3779b97f4a7c15ULL;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Sorted, duplicate-free set of vertices.
class VertexSet
{
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<VertexId> vs) : members_(vs) { normalize(); }
    explicit VertexSet(std::vector<VertexId> vs) : members_(std::move(vs)) { normalize(); }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }
    const std::vector<VertexId>& members() const { return members_; }

    bool contains(VertexId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

    void insert(VertexId v)
    {
        auto it = std::lower_bound(members_.begin(), members_.end(), v);
        if (it == members_.end() || *it != v) members_.insert(it, v);
    }

    /// At most one member per class.
    bool is_legal() const
    {
        for (std::size_t i = 1; i < members_.size(); ++i)
            if (members_[i].cls == members_[i - 1].cls) return false;
        return true;
    }

    std::size_t count_in_class(int cls) const
    {
        return static_cast<std::size_t>(std::count_if(members_.begin(), members_.end(), [&](VertexId v) { return v.cls == cls; }));
    }

    /// Same number of members in each of the k classes.
    bool is_balanced(int k) const
    {
        for (int c = 1; c < k; ++c)
            if (count_in_class(c) != count_in_class(0)) return false;
        return true;
    }

    VertexSet united(const VertexSet& other) const
    {
        std::vector<VertexId> out;
        std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(), std::back_inserter(out));
        return VertexSet(std::move(out));
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    void normalize()
    {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<VertexId> members_;
};

/// Immutable k-partite l-uniform hypergraph. Edges are kept in canonical
/// (sorted) order with a hash index and per-vertex incidence lists.
class KPartiteHypergraph
{
public:
    KPartiteHypergraph() = default;

    KPartiteHypergraph(std::vector<int> class_sizes, int uniformity, std::vector<Edge> edges = {})
        : class_sizes_(std::move(class_sizes)), uniformity_(uniformity), edges_(std::move(edges))
    {
        const int k = num_classes();
        if (k < 1 || k > kMaxClasses) throw InputError("class count must be in [1, " + std::to_string(kMaxClasses) + "]");
        if (uniformity_ < 1 || uniformity_ > k) throw InputError("uniformity must be in [1, k]");
        offsets_.resize(k + 1, 0);
        for (int c = 0; c < k; ++c) {
            if (class_sizes_[c] < 1) throw InputError("class sizes must be >= 1");
            offsets_[c + 1] = offsets_[c] + class_sizes_[c];
        }
        for (const auto& e : edges_) {
            if (static_cast<int>(e.size()) != uniformity_)
                throw InputError("edge of size " + std::to_string(e.size()) + " in " + std::to_string(uniformity_) + "-uniform hypergraph");
            for (const auto& v : e) check_vertex(v);
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        index_.reserve(edges_.size());
        incidence_.assign(static_cast<std::size_t>(offsets_[k]), {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            index_.emplace(edges_[i], static_cast<int>(i));
            for (const auto& v : edges_[i]) incidence_[index_of(v)].push_back(static_cast<int>(i));
        }
    }

    int num_classes() const { return static_cast<int>(class_sizes_.size()); }
    int uniformity() const { return uniformity_; }
    const std::vector<int>& class_sizes() const { return class_sizes_; }
    int class_size(int cls) const { return class_sizes_.at(static_cast<std::size_t>(cls)); }
    int max_class_size() const { return class_sizes_.empty() ? 0 : *std::max_element(class_sizes_.begin(), class_sizes_.end()); }
    int num_vertices() const { return offsets_.empty() ? 0 : offsets_.back(); }

    bool is_balanced() const
    {
        return std::all_of(class_sizes_.begin(), class_sizes_.end(), [&](int s) { return s == class_sizes_.front(); });
    }

    bool in_bounds(VertexId v) const
    {
        return v.cls >= 0 && v.cls < num_classes() && v.pos >= 0 && v.pos < class_sizes_[v.cls];
    }

    void check_vertex(VertexId v) const
    {
        if (!in_bounds(v))
            throw InputError("vertex " + std::to_string(v.cls + 1) + ":" + std::to_string(v.pos + 1) + " out of bounds");
    }

    /// Dense index in [0, num_vertices()).
    int index_of(VertexId v) const { return offsets_[v.cls] + v.pos; }

    VertexId vertex_at(int index) const
    {
        auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
        int cls = static_cast<int>(it - offsets_.begin()) - 1;
        return {cls, index - offsets_[cls]};
    }

    std::vector<VertexId> vertices() const
    {
        std::vector<VertexId> out;
        out.reserve(static_cast<std::size_t>(num_vertices()));
        for (int c = 0; c < num_classes(); ++c)
            for (int p = 0; p < class_sizes_[c]; ++p) out.push_back({c, p});
        return out;
    }

    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t num_edges() const { return edges_.size(); }
    const Edge& edge(std::size_t i) const { return edges_[i]; }

    bool contains(const Edge& e) const { return index_.count(e) != 0; }

    std::optional<int> edge_index(const Edge& e) const
    {
        auto it = index_.find(e);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Indices of the edges through v.
    const std::vector<int>& incident(VertexId v) const { return incidence_[index_of(v)]; }
    std::size_t vertex_degree(VertexId v) const { return incident(v).size(); }

    bool same_shape(const KPartiteHypergraph& other) const { return class_sizes_ == other.class_sizes_; }

    friend bool operator==(const KPartiteHypergraph& a, const KPartiteHypergraph& b)
    {
        return a.class_sizes_ == b.class_sizes_ && a.uniformity_ == b.uniformity_ && a.edges_ == b.edges_;
    }

private:
    std::vector<int> class_sizes_;
    int uniformity_ = 0;
    std::vector<int> offsets_;
    std::vector<Edge> edges_;
    std::unordered_map<Edge, int, EdgeHash> index_;
    std::vector<std::vector<int>> incidence_;
};

/// Ordered list of hypergraphs ("colors") on one shared vertex set.
using Family = std::vector<KPartiteHypergraph>;

inline void require_shared_vertex_set(const Family& family)
{
    for (std::size_t i = 1; i < family.size(); ++i)
        if (!family[i].same_shape(family[0]) || family[i].uniformity() != family[0].uniformity())
            throw InputError("family member " + std::to_string(i + 1) + " does not share the vertex set of member 1");
}

/// Every legal l-subset of classes times every position choice, in
/// canonical order. Calls `fn(const Edge&)`.
template <class Fn>
void for_each_legal_tuple(const std::vector<int>& class_sizes, int l, Fn&& fn)
{
    const int k = static_cast<int>(class_sizes.size());
    std::vector<int> classes(static_cast<std::size_t>(l));
    std::vector<VertexId> buf(static_cast<std::size_t>(l));
    auto emit_positions = [&](auto& self, int i) -> void {
        if (i == l) {
            fn(Edge(std::span<const VertexId>(buf)));
            return;
        }
        for (int p = 0; p < class_sizes[classes[i]]; ++p) {
            buf[i] = {classes[i], p};
            self(self, i + 1);
        }
    };
    auto choose = [&](auto& self, int i, int start) -> void {
        if (i == l) {
            emit_positions(emit_positions, 0);
            return;
        }
        for (int c = start; c <= k - (l - i); ++c) {
            classes[i] = c;
            self(self, i + 1, c + 1);
        }
    };
    choose(choose, 0, 0);
}

/// The complete k-partite l-graph on the given classes.
inline KPartiteHypergraph complete_hypergraph(std::vector<int> class_sizes, int l)
{
    std::vector<Edge> edges;
    for_each_legal_tuple(class_sizes, l, [&](const Edge& e) { edges.push_back(e); });
    return KPartiteHypergraph(std::move(class_sizes), l, std::move(edges));
}

/// Number of edges containing T. Non-legal T has degree 0.
inline std::size_t degree(const KPartiteHypergraph& h, const VertexSet& t)
{
    for (const auto& v : t) h.check_vertex(v);
    if (t.empty()) return h.num_edges();
    if (!t.is_legal()) return 0;
    const auto& first = h.incident(*t.begin());
    return static_cast<std::size_t>(std::count_if(first.begin(), first.end(), [&](int ei) {
        const Edge& e = h.edge(static_cast<std::size_t>(ei));
        return std::all_of(t.begin(), t.end(), [&](VertexId v) { return e.contains(v); });
    }));
}

/// min over legal l-sets T of degree(H, T).
inline std::size_t min_l_degree(const KPartiteHypergraph& h, int l)
{
    if (l < 1 || l >= h.uniformity()) throw InputError("min_l_degree: l must satisfy 1 <= l < uniformity");
    if (l == 1) {
        std::size_t best = SIZE_MAX;
        for (const auto& v : h.vertices()) best = std::min(best, h.vertex_degree(v));
        return best;
    }
    // Count every l-subset of every edge; legal l-sets never seen have degree 0.
    std::unordered_map<Edge, std::size_t, EdgeHash> counts;
    std::vector<VertexId> buf(static_cast<std::size_t>(l));
    for (const auto& e : h.edges()) {
        auto rec = [&](auto& self, int i, int start) -> void {
            if (i == l) {
                ++counts[Edge(std::span<const VertexId>(buf))];
                return;
            }
            for (int j = start; j <= static_cast<int>(e.size()) - (l - i); ++j) {
                buf[i] = e[j];
                self(self, i + 1, j + 1);
            }
        };
        rec(rec, 0, 0);
    }
    std::size_t legal_sets = 0;
    std::size_t best = SIZE_MAX;
    for_each_legal_tuple(h.class_sizes(), l, [&](const Edge& t) {
        ++legal_sets;
        auto it = counts.find(t);
        best = std::min(best, it == counts.end() ? std::size_t{0} : it->second);
    });
    return legal_sets == 0 ? 0 : best;
}

/// {e \ T : T ⊆ e ∈ E(H)} in canonical order.
inline std::vector<Edge> neighborhood(const KPartiteHypergraph& h, const VertexSet& t)
{
    for (const auto& v : t) h.check_vertex(v);
    std::vector<Edge> out;
    if (!t.is_legal()) return out;
    auto take = [&](const Edge& e) {
        if (!std::all_of(t.begin(), t.end(), [&](VertexId v) { return e.contains(v); })) return;
        std::vector<VertexId> rest;
        for (const auto& v : e)
            if (!t.contains(v)) rest.push_back(v);
        out.emplace_back(std::span<const VertexId>(rest));
    };
    if (t.empty())
        for (const auto& e : h.edges()) take(e);
    else
        for (int ei : h.incident(*t.begin())) take(h.edge(static_cast<std::size_t>(ei)));
    std::sort(out.begin(), out.end());
    return out;
}

/// Edges containing T whose remaining vertices, listed in class order, lie
/// in pattern[0], pattern[1], ... respectively. Counts expressions such as
/// d_H(x, y, V \ U, U).
inline std::size_t pattern_degree(const KPartiteHypergraph& h, const VertexSet& t, const std::vector<VertexSet>& pattern)
{
    std::size_t count = 0;
    for (const auto& rest : neighborhood(h, t)) {
        if (rest.size() != pattern.size()) continue;
        bool ok = true;
        for (std::size_t i = 0; i < rest.size() && ok; ++i) ok = pattern[i].contains(rest[i]);
        if (ok) ++count;
    }
    return count;
}

/// Result of deleting vertices: the shrunken hypergraph together with the
/// explicit position maps between old and new labels (per class, -1 for
/// deleted vertices).
struct VertexRemoval
{
    KPartiteHypergraph graph;
    std::vector<std::vector<int>> old_to_new;
    std::vector<std::vector<int>> new_to_old;

    VertexId to_new(VertexId v) const { return {v.cls, old_to_new[v.cls][v.pos]}; }
    VertexId to_old(VertexId v) const { return {v.cls, new_to_old[v.cls][v.pos]}; }

    Edge to_old(const Edge& e) const
    {
        std::vector<VertexId> vs;
        for (const auto& v : e) vs.push_back(to_old(v));
        return Edge(std::span<const VertexId>(vs));
    }
};

/// H - S. A class emptied completely is an input error since classes must be
/// non-empty.
inline VertexRemoval remove_vertices(const KPartiteHypergraph& h, const VertexSet& s)
{
    for (const auto& v : s) h.check_vertex(v);
    VertexRemoval r;
    const int k = h.num_classes();
    r.old_to_new.resize(k);
    r.new_to_old.resize(k);
    std::vector<int> sizes(k);
    for (int c = 0; c < k; ++c) {
        r.old_to_new[c].assign(static_cast<std::size_t>(h.class_size(c)), -1);
        for (int p = 0; p < h.class_size(c); ++p) {
            if (s.contains({c, p})) continue;
            r.old_to_new[c][p] = static_cast<int>(r.new_to_old[c].size());
            r.new_to_old[c].push_back(p);
        }
        sizes[c] = static_cast<int>(r.new_to_old[c].size());
        if (sizes[c] == 0) throw InputError("remove_vertices would empty class " + std::to_string(c + 1));
    }
    std::vector<Edge> kept;
    for (const auto& e : h.edges()) {
        if (std::any_of(e.begin(), e.end(), [&](VertexId v) { return s.contains(v); })) continue;
        std::vector<VertexId> vs;
        for (const auto& v : e) vs.push_back(r.to_new(v));
        kept.emplace_back(std::span<const VertexId>(vs));
    }
    r.graph = KPartiteHypergraph(std::move(sizes), h.uniformity(), std::move(kept));
    return r;
}

/// H[S]: the sub-hypergraph induced on `keep`, relabelled.
inline VertexRemoval induced_subhypergraph(const KPartiteHypergraph& h, const VertexSet& keep)
{
    std::vector<VertexId> drop;
    for (const auto& v : h.vertices())
        if (!keep.contains(v)) drop.push_back(v);
    return remove_vertices(h, VertexSet(std::move(drop)));
}

/// Down-closure under position order: every edge with a vertex moved to a
/// lower position in its class is also an edge. Single-step closure suffices.
inline bool is_stable(const KPartiteHypergraph& h)
{
    for (const auto& e : h.edges())
        for (const auto& v : e)
            if (v.pos > 0 && !h.contains(e.with({v.cls, v.pos - 1}))) return false;
    return true;
}

/// Δ₂: the largest number of edges through a legal pair.
inline std::size_t max_codegree(const KPartiteHypergraph& h)
{
    if (h.uniformity() < 2) throw InputError("max_codegree needs uniformity >= 2");
    std::unordered_map<std::uint64_t, std::size_t> counts;
    std::size_t best = 0;
    const auto n = static_cast<std::uint64_t>(h.num_vertices());
    for (const auto& e : h.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                auto key = static_cast<std::uint64_t>(h.index_of(e[i])) * n + static_cast<std::uint64_t>(h.index_of(e[j]));
                best = std::max(best, ++counts[key]);
            }
    return best;
}

}  // namespace rml

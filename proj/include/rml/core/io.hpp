#pragma once

// Line-based text format for hypergraphs (see docs/FORMAT.md):
//
//   # comment
//   k l n1 n2 ... nk
//   c:p c:p ...          one edge per line, 1-based class and position
//
// Edges and the vertices inside an edge may appear in any order.
// A family is a directory of such files, colors ordered by file name.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rml/core/hypergraph.hpp"

namespace rml {

inline std::string format_vertex(VertexId v)
{
    return std::to_string(v.cls + 1) + ":" + std::to_string(v.pos + 1);
}

/// Canonical `c:p c:p ...` token string for an edge.
inline std::string format_edge(const Edge& e)
{
    std::string out;
    for (const auto& v : e) {
        if (!out.empty()) out += ' ';
        out += format_vertex(v);
    }
    return out;
}

namespace detail {

inline int parse_positive_int(std::string_view s, const std::string& context)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value < 1)
        throw InputError(context + ": expected a positive integer, got '" + std::string(s) + "'");
    return value;
}

inline std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

inline VertexId parse_vertex(std::string_view token)
{
    auto colon = token.find(':');
    if (colon == std::string_view::npos) throw InputError("vertex token '" + std::string(token) + "' is not of the form c:p");
    int c = detail::parse_positive_int(token.substr(0, colon), "vertex class");
    int p = detail::parse_positive_int(token.substr(colon + 1), "vertex position");
    return {c - 1, p - 1};
}

inline Edge parse_edge(std::string_view text)
{
    std::vector<VertexId> vs;
    for (auto tok : detail::split_ws(text)) vs.push_back(parse_vertex(tok));
    return Edge(std::span<const VertexId>(vs));
}

inline std::string serialize(const KPartiteHypergraph& h)
{
    std::ostringstream out;
    out << h.num_classes() << ' ' << h.uniformity();
    for (int s : h.class_sizes()) out << ' ' << s;
    out << '\n';
    for (const auto& e : h.edges()) out << format_edge(e) << '\n';
    return out.str();
}

inline KPartiteHypergraph parse_hypergraph(std::string_view text)
{
    std::vector<int> sizes;
    int l = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t stop = text.find('\n', start);
        if (stop == std::string_view::npos) stop = text.size();
        std::string_view line = text.substr(start, stop - start);
        start = stop + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        if (!have_header) {
            if (toks.size() < 3) throw InputError(where + ": header needs k, l and k class sizes");
            int k = detail::parse_positive_int(toks[0], where);
            l = detail::parse_positive_int(toks[1], where);
            if (static_cast<int>(toks.size()) != 2 + k) throw InputError(where + ": header declares k=" + std::to_string(k) + " but lists " + std::to_string(toks.size() - 2) + " class sizes");
            for (int c = 0; c < k; ++c) sizes.push_back(detail::parse_positive_int(toks[2 + c], where));
            have_header = true;
            continue;
        }
        std::vector<VertexId> vs;
        for (auto tok : toks) vs.push_back(parse_vertex(tok));
        try {
            edges.emplace_back(std::span<const VertexId>(vs));
        } catch (const InputError& err) {
            throw InputError(where + ": " + err.what());
        }
        if (static_cast<int>(vs.size()) != l) throw InputError(where + ": edge has " + std::to_string(vs.size()) + " vertices, expected " + std::to_string(l));
        for (const auto& v : vs)
            if (v.cls >= static_cast<int>(sizes.size()) || v.pos >= sizes[v.cls]) throw InputError(where + ": vertex " + format_vertex(v) + " out of bounds");
    }
    if (!have_header) throw InputError("missing header line");
    return KPartiteHypergraph(std::move(sizes), l, std::move(edges));
}

inline std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

inline KPartiteHypergraph read_hypergraph(const std::filesystem::path& path)
{
    try {
        return parse_hypergraph(read_text_file(path));
    } catch (const InputError& err) {
        throw InputError(path.string() + ": " + err.what());
    }
}

inline void write_hypergraph(const std::filesystem::path& path, const KPartiteHypergraph& h)
{
    write_text_file(path, serialize(h));
}

/// Color files are named F001.hg, F002.hg, ...
inline void write_family(const std::filesystem::path& dir, const Family& family)
{
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::string name = std::to_string(i + 1);
        name = "F" + std::string(3 - std::min<std::size_t>(3, name.size()), '0') + name + ".hg";
        write_hypergraph(dir / name, family[i]);
    }
}

/// Every regular file in `dir` (hidden files skipped), sorted by file name.
inline Family read_family(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir)) throw InputError(dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().filename().string().front() != '.') files.push_back(entry.path());
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
    Family family;
    for (const auto& f : files) family.push_back(read_hypergraph(f));
    if (family.empty()) throw InputError(dir.string() + " contains no hypergraph files");
    require_shared_vertex_set(family);
    return family;
}

}  // namespace rml

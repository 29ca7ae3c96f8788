// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "oracles.hpp"
#include "rml/rml.hpp"

using namespace rml;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

struct Criterion
{
    int id;
    double limit_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ---------------------------------------------------------------- 1

Outcome extremal_negative()
{
    std::string bad;
    for (int n = 3; n <= 6; ++n) {
        auto f = repeat_family(build_balanced(n, n - 1), n);
        auto exact = rainbow_matching(f, n);
        auto lifted = rainbow_via_lift(f);
        if (exact.found() || !exact.complete) bad += fmt(" exact(n=%d)", n);
        if (lifted.found() || !lifted.complete) bad += fmt(" lift(n=%d)", n);
        if (oracle::max_matching(f.front()) != n - 1 && n <= 4) bad += fmt(" nu(n=%d)", n);
    }
    return {bad.empty(), bad.empty() ? "n=3..6: exact and lift both return none" : "unexpected:" + bad};
}

// ---------------------------------------------------------------- 2

Outcome thresholds()
{
    int checked = 0;
    std::string bad;
    for (int n = 2; n <= 8; ++n) {
        for (int m = 0; m <= n; ++m) {
            if (m % 3 == 1) continue;
            ++checked;
            auto brute = static_cast<std::int64_t>(oracle::min_vertex_degree(build_balanced(n, m)));
            if (brute != d3_threshold(n, m)) bad += fmt(" d3(%d,%d)", n, m);
        }
        // δ(n) is the minimum degree of H3(n, n-1); n-1 ≡ 1 (mod 3) is s = 2.
        auto t = delta_threshold(n);
        if ((n - 1) % 3 == 1) continue;
        ++checked;
        if (t.delta != static_cast<std::int64_t>(oracle::min_vertex_degree(build_balanced(n, n - 1)))) bad += fmt(" delta(%d)", n);
    }
    return {bad.empty(), fmt("%d formula values equal brute-force min degree", checked) + (bad.empty() ? "" : "; mismatches:" + bad)};
}

// ---------------------------------------------------------------- 3

Outcome lift_equivalence()
{
    Rng rng(3001);
    int agree = 0, yes = 0;
    const int total = 1000;
    for (int i = 0; i < total; ++i) {
        const int n = 1 + static_cast<int>(rng.below(3));
        auto f = lab::random_family({n, n, n}, n, 0.05 + 0.9 * rng.uniform01(), rng);
        auto direct = rainbow_matching(f, n);
        auto lifted = has_perfect_matching(lift_family(f));
        if (direct.complete && lifted.complete && direct.found() == lifted.found()) ++agree;
        if (direct.found()) ++yes;
    }
    return {agree == total, fmt("%d/%d agree (%d with a rainbow perfect matching)", agree, total, yes)};
}

// ---------------------------------------------------------------- 4

bool matching_feasible(const KPartiteHypergraph& h, const FractionalAssignment& f)
{
    for (const auto& [e, w] : f.weights)
        if (w < 0 || !h.contains(e)) return false;
    for (const auto& [v, l] : oracle::loads(f.weights))
        if (l > 1) return false;
    return true;
}

bool cover_feasible(const KPartiteHypergraph& h, const FractionalCover& c)
{
    for (const auto& [v, w] : c.weights)
        if (w < 0) return false;
    for (const auto& e : h.edges()) {
        Rational s = 0;
        for (const auto& v : e) s += c.weight(v);
        if (s < 1) return false;
    }
    return true;
}

bool slack_ok(const KPartiteHypergraph& h, const FractionalAssignment& f, const FractionalCover& c)
{
    for (const auto& [e, w] : f.weights) {
        Rational s = 0;
        for (const auto& v : e) s += c.weight(v);
        if (w > 0 && s != 1) return false;
    }
    auto load = oracle::loads(f.weights);
    for (const auto& v : h.vertices())
        if (c.weight(v) > 0 && load[v] != 1) return false;
    return true;
}

Outcome lp_duality()
{
    Rng rng(4004);
    int equal = 0, slack = 0;
    const int total = 500;
    for (int i = 0; i < total; ++i) {
        const int k = 2 + static_cast<int>(rng.below(3));
        const int l = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k - 1)));
        std::vector<int> sizes(static_cast<std::size_t>(k));
        for (auto& s : sizes) s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(60 / k)));
        // expected edge count between 5 and 200
        double tuples = 0;
        for (int mask = 0; mask < (1 << k); ++mask) {
            if (__builtin_popcount(static_cast<unsigned>(mask)) != l) continue;
            double prod = 1;
            for (int c = 0; c < k; ++c)
                if (mask >> c & 1) prod *= sizes[static_cast<std::size_t>(c)];
            tuples += prod;
        }
        const double p = std::min(1.0, (5 + 195 * rng.uniform01()) / tuples);
        auto h = lab::random_hypergraph(sizes, l, p, rng);
        auto nu = nu_f(h);
        auto mu = mu_f(h);
        const bool feasible = matching_feasible(h, nu.assignment) && cover_feasible(h, mu.cover);
        if (feasible && nu.value == mu.value && nu.assignment.size() == nu.value && mu.cover.size() == mu.value) ++equal;
        if (slack_ok(h, nu.assignment, mu.cover) && slack_ok(h, nu.assignment, nu.dual) && cover_feasible(h, nu.dual)) ++slack;
    }
    return {equal == total && slack == total, fmt("nu_f = mu_f on %d/%d; complementary slackness on %d/%d", equal, total, slack, total)};
}

// ---------------------------------------------------------------- 5

Outcome support_bound()
{
    Rng rng(5005);
    int found = 0, ok = 0, tried = 0;
    while (found < 100 && tried < 3000) {
        ++tried;
        const int n = 2 + static_cast<int>(rng.below(9));
        const double p = std::min(1.0, (1.0 + 3.0 * rng.uniform01()) * n * n / std::pow(n, 4));
        auto h = lab::random_hypergraph({n, n, n, n}, 4, p, rng);
        auto f = sparse_fpm(h);
        if (!f) continue;
        ++found;
        bool perfect = matching_feasible(h, *f);
        for (const auto& [v, l] : oracle::loads(f->weights)) perfect = perfect && l == 1;
        perfect = perfect && oracle::loads(f->weights).size() == static_cast<std::size_t>(4 * n);
        if (perfect && f->support_size() <= static_cast<std::size_t>(4 * n)) ++ok;
    }
    return {found == 100 && ok == 100, fmt("%d/%d FPMs within support 4n (%d instances drawn)", ok, found, tried)};
}

// ---------------------------------------------------------------- 6

Outcome disjoint_fpms()
{
    std::string msg;
    bool pass = true;
    for (int n = 3; n <= 4; ++n) {
        auto k = complete_hypergraph({n, n, n, n}, 4);
        auto d = edge_disjoint_fpm(k, {n});
        bool good = d.fpms.size() == static_cast<std::size_t>(n);
        std::set<Edge> seen;
        std::map<std::pair<VertexId, VertexId>, Rational> load;
        for (const auto& f : d.fpms) {
            good = good && matching_feasible(k, f) && oracle::loads(f.weights).size() == static_cast<std::size_t>(4 * n);
            for (const auto& [v, l] : oracle::loads(f.weights)) good = good && l == 1;
            for (const auto& [e, w] : f.weights) {
                good = good && seen.insert(e).second;
                for (std::size_t i = 0; i < e.size(); ++i)
                    for (std::size_t j = i + 1; j < e.size(); ++j) load[{e[i], e[j]}] += w;
            }
        }
        Rational worst = 0;
        for (const auto& [pr, l] : load) worst = std::max(worst, l);
        good = good && worst <= 3;
        pass = pass && good;
        msg += fmt("n=%d: %zu FPMs, max pair load %s; ", n, d.fpms.size(), to_string(worst).c_str());
    }
    return {pass, msg.substr(0, msg.size() - 2)};
}

// ---------------------------------------------------------------- 7

Outcome two_colour_pairs(const fs::path& dump)
{
    Rng rng(7007);
    const int total = 10000;
    int found = 0, confirmed = 0;
    std::ofstream out;
    for (int i = 0; i < total; ++i) {
        Rng local = rng.split(static_cast<std::uint64_t>(i));
        auto f = lab::sample_pair(local);
        auto r = rainbow_matching(f, 2);
        if (r.found()) {
            ++found;
            continue;
        }
        if (!oracle::rainbow(f, 2)) ++confirmed;
        if (!out.is_open()) out.open(dump);
        out << "# pair " << i << " classes";
        for (int s : f[0].class_sizes()) out << ' ' << s;
        out << " complete=" << r.complete << "\n";
        for (std::size_t c = 0; c < 2; ++c) {
            out << "F" << c + 1 << ":";
            for (const auto& e : f[c].edges()) out << " {" << format_edge(e) << "}";
            out << "\n";
        }
    }
    std::string msg = fmt("%d/%d pairs have a size-2 rainbow matching", found, total);
    if (found < total) msg += fmt("; %d counterexamples (%d confirmed by brute force) dumped to %s", total - found, confirmed, dump.string().c_str());
    return {found == total, msg};
}

// ---------------------------------------------------------------- 8

int odd_components_oracle(int n, const std::vector<std::pair<int, int>>& e, const std::vector<int>& removed)
{
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    for (int r : removed) comp[r] = -2;
    int odd = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        int size = 0;
        std::vector<int> stack{s};
        comp[s] = s;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            ++size;
            for (auto [a, b] : e) {
                int w = a == u ? b : b == u ? a : -1;
                if (w >= 0 && comp[w] == -1) {
                    comp[w] = s;
                    stack.push_back(w);
                }
            }
        }
        odd += size % 2;
    }
    return odd;
}

Outcome graph_oracles()
{
    Rng rng(8008);
    const int total = 100000;
    int mismatches = 0;
    std::vector<std::pair<int, int>> all;
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) all.emplace_back(u, v);
    for (int i = 0; i < total; ++i) {
        const double p = rng.uniform01();
        std::vector<std::pair<int, int>> e, bip;
        Graph g(8), b(8);
        for (auto [u, v] : all)
            if (rng.bernoulli(p)) {
                e.emplace_back(u, v);
                g.add_edge(u, v);
                if ((u < 4) != (v < 4)) {
                    bip.emplace_back(u, v);
                    b.add_edge(u, v);
                }
            }
        const int brute = oracle::graph_matching(8, e);
        const int blossom = blossom_max_matching(g).size;
        auto cert = tutte_berge_certificate(g);
        const int odd = odd_components_oracle(8, e, cert.s);
        const int deficiency = odd - static_cast<int>(cert.s.size());
        bool ok = blossom == brute && cert.deficiency == deficiency && (8 - deficiency) / 2 == blossom;
        auto cover = konig_min_cover(b);
        for (auto [u, v] : bip)
            ok = ok && (std::find(cover.begin(), cover.end(), u) != cover.end() || std::find(cover.begin(), cover.end(), v) != cover.end());
        ok = ok && static_cast<int>(cover.size()) == oracle::graph_matching(8, bip);
        if (!ok) ++mismatches;
    }
    return {mismatches == 0, fmt("%d sampled graphs on 8 vertices, %d mismatches", total, mismatches)};
}

// ---------------------------------------------------------------- 9

Outcome sparsifier_stats()
{
    const int n = 6, t = 5;
    auto k = complete_hypergraph({n, n, n, n}, 4);
    DecompositionParams params{t};
    auto d = edge_disjoint_fpm(k, params);
    if (d.fpms.size() != static_cast<std::size_t>(t)) return {false, "only " + std::to_string(d.fpms.size()) + " FPMs: " + d.stop_reason};
    const std::size_t bound = static_cast<std::size_t>(t) * static_cast<std::size_t>(params.pair_cap.convert_to<double>());
    const int seeds = 1000;
    double degree_sum = 0;
    std::size_t worst = 0;
    for (int s = 1; s <= seeds; ++s) {
        auto sp = sparsify(k, d.fpms, static_cast<std::uint64_t>(s));
        std::map<VertexId, std::size_t> deg;
        std::map<std::pair<VertexId, VertexId>, std::size_t> co;
        for (const auto& e : sp.edges())
            for (std::size_t i = 0; i < e.size(); ++i) {
                ++deg[e[i]];
                for (std::size_t j = i + 1; j < e.size(); ++j) worst = std::max(worst, ++co[{e[i], e[j]}]);
            }
        std::size_t total = 0;
        for (const auto& [v, x] : deg) total += x;
        degree_sum += static_cast<double>(total) / (4 * n);
    }
    const double mean = degree_sum / seeds;
    return {mean >= 4.5 && mean <= 5.5 && worst <= bound, fmt("mean vertex degree %.4f over %d seeds; max pair codegree %zu (bound %zu)", mean, seeds, worst, bound)};
}

// ---------------------------------------------------------------- 10

Outcome nibble()
{
    const int n = 16;
    auto k = complete_hypergraph({n, n, n, n}, 4);
    int small_cover = 0, big_matching = 0, invalid = 0;
    for (int s = 1; s <= 100; ++s) {
        auto r = nibble_cover(k, {0.1, static_cast<std::uint64_t>(s)});
        std::set<VertexId> covered, used;
        for (const auto& e : r.cover) covered.insert(e.begin(), e.end());
        bool valid = covered.size() == static_cast<std::size_t>(4 * n);
        std::set<Edge> in_cover(r.cover.begin(), r.cover.end());
        for (const auto& e : r.matching) {
            valid = valid && in_cover.count(e) && k.contains(e);
            for (const auto& v : e) valid = valid && used.insert(v).second;
        }
        if (!valid) ++invalid;
        if (2 * r.cover.size() <= 3 * static_cast<std::size_t>(n)) ++small_cover;
        if (valid && 2 * r.matching.size() >= static_cast<std::size_t>(n)) ++big_matching;
    }
    return {small_cover >= 90 && big_matching >= 90,
            fmt("cover <= 1.5n in %d/100; valid matching >= 0.5n in %d/100; invalid %d", small_cover, big_matching, invalid)};
}

// ---------------------------------------------------------------- 11

Outcome absorbing()
{
    auto k = complete_hypergraph({3, 3, 3, 3}, 4);
    const auto& edges = k.edges();
    int checked = 0, agree = 0;
    std::vector<std::vector<Edge>> matchings{{}};
    for (std::size_t i = 0; i < edges.size(); i += 7) matchings.push_back({edges[i]});
    for (std::size_t i = 0; i < edges.size(); i += 11)
        for (std::size_t j = i + 1; j < edges.size(); j += 13) {
            std::set<VertexId> vs(edges[i].begin(), edges[i].end());
            bool disjoint = true;
            for (const auto& v : edges[j]) disjoint = disjoint && !vs.count(v);
            if (disjoint) matchings.push_back({edges[i], edges[j]});
        }
    for (const auto& m : matchings)
        for (int b = 0; b <= 4; ++b) {
            ++checked;
            if (verify_absorbing(k, Matching{m}, b).ok == oracle::absorbing(k, m, b)) ++agree;
        }
    // sparser hosts so that both outcomes occur
    Rng rng(1101);
    int rejected = 0;
    for (int trial = 0; trial < 30; ++trial) {
        auto h = lab::random_hypergraph({3, 3, 3, 3}, 4, 0.15 + 0.5 * rng.uniform01(), rng);
        auto mm = max_matching(h).matching;
        if (mm.edges.size() > 1) mm.edges.resize(1);
        ++checked;
        auto r = verify_absorbing(h, mm, 4);
        if (r.ok == oracle::absorbing(h, mm.edges, 4)) ++agree;
        if (!r.ok) ++rejected;
    }
    std::vector<Edge> kept;
    for (const auto& e : edges)
        if (!e.contains({0, 2})) kept.push_back(e);
    KPartiteHypergraph iso({3, 3, 3, 3}, 4, kept);
    Matching one{{Edge{{0, 0}, {1, 0}, {2, 0}, {3, 0}}}};
    auto bad = verify_absorbing(iso, one, 4);
    const bool iso_ok = !bad.ok && bad.counterexample && bad.counterexample->contains({0, 2}) && !oracle::absorbing(iso, one.edges, 4);
    return {agree == checked && iso_ok, fmt("%d/%d checks agree with enumeration (%d random hosts rejected); isolated vertex %s", agree, checked, rejected,
                                            iso_ok ? "rejected" : "NOT rejected")};
}

// ---------------------------------------------------------------- 12

struct CliRun
{
    int code = -1;
    std::string out;
};

CliRun cli(const std::string& args, const fs::path& dir, const std::string& env = "")
{
    auto out = dir / "stdout.txt";
    std::string cmd = "{ " + env + (env.empty() ? "" : " ") + RML_CLI_PATH + " " + args + "; } > " + out.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text_file(out);
    return r;
}

Outcome determinism(const fs::path& root)
{
    std::vector<std::string> setup{
        "gen balanced --k 4 --n 3 --m 12 --out {}/k3.hg",
        "gen balanced --k 4 --n 5 --m 20 --out {}/k5.hg",
        "gen balanced --n 3 --m 2 --colors 3 --out {}/ext",
        "gen random --n 3 --p 0.8 --colors 3 --seed 9 --out {}/rnd",
    };
    std::vector<std::string> commands{
        "gen random --k 4 --n 3 --p 0.4 --seed 5",
        "gen H13 --n 3",
        "solve {}/rnd --witness {}/w.json && cat {}/w.json",
        "solve {}/ext --lift",
        "lp {}/k3.hg",
        "lp {}/k3.hg --perfect",
        "closeness {}/ext --target H13",
        "absorb {}/k3.hg --seed 3",
        "decompose {}/k3.hg --t 3",
        "sparsify {}/k5.hg --t 3 --reps 20 --seed 11",
        "cover {}/k5.hg --reps 10 --seed 2",
        "pipeline {}/rnd --witness {}/p.json && cat {}/p.json",
        "pipeline {}/ext",
        "sweep --kind extremal --n-min 3 --n-max 4",
        "sweep --kind duality --n-min 3 --n-max 5 --seeds 8 --seed 12",
        "sweep --kind pair --seeds 300 --seed 7",
    };
    auto expand = [](std::string s, const fs::path& d) {
        for (std::size_t at; (at = s.find("{}")) != std::string::npos;) s.replace(at, 2, d.string());
        return s;
    };
    std::vector<std::string> outputs[2];
    for (int round = 0; round < 2; ++round) {
        auto dir = root / ("round" + std::to_string(round));
        fs::remove_all(dir);
        fs::create_directories(dir);
        for (const auto& s : setup)
            if (cli(expand(s, dir), dir).code != 0) return {false, "setup failed: " + s};
        // different worker pool sizes must not change the bytes
        const std::string env = round == 0 ? "RML_THREADS=1" : "RML_THREADS=3";
        for (const auto& c : commands) {
            auto r = cli(expand(c, dir), dir, env);
            std::string text = r.out;
            for (std::size_t at; (at = text.find(dir.string())) != std::string::npos;) text.replace(at, dir.string().size(), "{}");
            outputs[round].push_back(std::to_string(r.code) + "\n" + text);
        }
        for (const auto& f : {"k3.hg", "ext/F001.hg", "rnd/F003.hg"}) outputs[round].push_back(read_text_file(dir / f));
    }
    int same = 0;
    std::string diff;
    for (std::size_t i = 0; i < outputs[0].size(); ++i) {
        if (outputs[0][i] == outputs[1][i] && !outputs[0][i].empty())
            ++same;
        else
            diff += " #" + std::to_string(i + 1);
    }
    const int total = static_cast<int>(outputs[0].size());
    return {same == total, fmt("%d/%d outputs byte-identical across two runs", same, total) + (diff.empty() ? "" : "; differing:" + diff)};
}

}  // namespace

int main(int argc, char** argv)
{
    fs::path work = fs::temp_directory_path() / ("rml_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(work);
    const fs::path dump = argc > 1 ? fs::path(argv[1]) : fs::current_path() / "criterion7_counterexamples.txt";
    fs::remove(dump);

    std::vector<Criterion> criteria{
        {1, 10, extremal_negative},
        {2, 5, thresholds},
        {3, 60, lift_equivalence},
        {4, 120, lp_duality},
        {5, 60, support_bound},
        {6, 60, disjoint_fpms},
        {7, 120, [&] { return two_colour_pairs(dump); }},
        {8, 300, graph_oracles},
        {9, 60, sparsifier_stats},
        {10, 120, nibble},
        {11, 30, absorbing},
        {12, 120, [&] { return determinism(work); }},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::cout << fmt("criterion %2d: %s  %s  [%.2f s / limit %.0f s%s]", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs, c.limit_s,
                         in_time ? "" : ", over time")
                  << std::endl;
    }
    fs::remove_all(work);
    std::cout << (failed ? fmt("%d criteria failed", failed) : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}

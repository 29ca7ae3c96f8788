#pragma once

// Experiment sweeps: one CSV row per instance, rows in canonical order
// whatever order workers finish in, resumable through a checkpoint file.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rml/constructions.hpp"
#include "rml/core/io.hpp"
#include "rml/error.hpp"
#include "rml/fractional.hpp"
#include "rml/lab/random_instances.hpp"
#include "rml/random.hpp"
#include "rml/solvers.hpp"

namespace rml::lab {

inline constexpr int kSchemaVersion = 1;

struct ExperimentRow
{
    std::string instance_id;
    std::string kind;
    std::string params;  ///< key=value pairs separated by ';'
    std::string solver;
    std::uint64_t seed = 0;
    std::string answer;
    std::size_t witness_size = 0;
    std::string value = "-";
    std::uint64_t nodes = 0;
    std::string runtime_ms = "-";
    std::string note = "-";
};

inline std::string csv_header()
{
    return "schema_version,instance_id,kind,params,solver,seed,answer,witness_size,value,nodes,runtime_ms,note";
}

inline std::string csv_line(const ExperimentRow& r)
{
    std::ostringstream out;
    out << kSchemaVersion << ',' << r.instance_id << ',' << r.kind << ',' << r.params << ',' << r.solver << ',' << r.seed << ',' << r.answer << ','
        << r.witness_size << ',' << r.value << ',' << r.nodes << ',' << r.runtime_ms << ',' << r.note;
    return out.str();
}

struct SweepSpec
{
    std::string kind;          ///< extremal | duality | pair
    int n_min = 3;
    int n_max = 5;
    int seeds = 1;
    std::uint64_t base_seed = 1;
    std::string solver = "exact";  ///< extremal: exact | lift
    SearchBudget budget{};
    bool timing = false;       ///< fill runtime_ms (makes output run-dependent)
};

/// Worker count: RML_THREADS if set and positive, else hardware concurrency.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("RML_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

inline std::string family_note(const Family& f)
{
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ';';
        out += "F" + std::to_string(i + 1) + "=";
        for (std::size_t j = 0; j < f[i].num_edges(); ++j) {
            if (j) out += '/';
            out += format_edge(f[i].edge(j));
        }
    }
    return out;
}

inline std::string sizes_text(const std::vector<int>& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "x" : "") + std::to_string(s[i]);
    return out;
}

}  // namespace detail

/// Seeded pair (F1, F2) of 3-partite 3-graphs with class sizes in
/// [lo, hi], max ≤ (3/2)·min, and δ₁ ≥ 2 in both. The edge density is
/// drawn per attempt; attempts violating the degree condition are redrawn.
inline Family sample_pair(Rng& rng, int lo = 2, int hi = 4)
{
    for (;;) {
        auto sizes = random_class_sizes(3, lo, hi, rng);
        const double p = 0.15 + 0.7 * rng.uniform01();
        Family f{random_hypergraph(sizes, 3, p, rng), random_hypergraph(sizes, 3, p, rng)};
        if (min_l_degree(f[0], 1) >= 2 && min_l_degree(f[1], 1) >= 2) return f;
    }
}

/// Random hypergraph for the duality sweep: k ∈ {2,3,4}, l ∈ [2,k], class
/// sizes in [1, n], density in [0.1, 0.6].
inline KPartiteHypergraph sample_duality_instance(Rng& rng, int n, std::string& params)
{
    const int k = 2 + static_cast<int>(rng.below(3));
    const int l = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k - 1)));
    std::vector<int> sizes(static_cast<std::size_t>(k));
    for (auto& s : sizes) s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const double p = 0.1 + 0.5 * rng.uniform01();
    auto h = random_hypergraph(sizes, l, p, rng);
    std::ostringstream ps;
    ps << "k=" << k << ";l=" << l << ";classes=" << detail::sizes_text(sizes) << ";edges=" << h.num_edges();
    params = ps.str();
    return h;
}

struct SweepTask
{
    std::string instance_id;
    std::function<ExperimentRow()> run;
};

inline std::vector<SweepTask> sweep_tasks(const SweepSpec& spec)
{
    std::vector<SweepTask> tasks;
    if (spec.kind == "extremal") {
        if (spec.solver != "exact" && spec.solver != "lift") throw InputError("sweep: extremal solver must be exact or lift");
        for (int n = std::max(spec.n_min, 2); n <= spec.n_max; ++n) {
            std::string id = "extremal-n" + std::to_string(n);
            tasks.push_back({id, [spec, n, id]() {
                                 ExperimentRow r;
                                 r.instance_id = id;
                                 r.kind = "extremal";
                                 r.params = "n=" + std::to_string(n) + ";F=H3(n;n-1)";
                                 r.solver = spec.solver;
                                 r.seed = spec.base_seed;
                                 Family f = repeat_family(build_balanced(n, n - 1), n);
                                 auto res = spec.solver == "lift" ? rainbow_via_lift(f, spec.budget) : rainbow_matching(f, n, spec.budget);
                                 r.nodes = res.nodes;
                                 r.answer = res.found() ? "RAINBOW-PM" : (res.complete ? "NO-RAINBOW-PM" : "TIMEOUT");
                                 r.witness_size = res.found() ? res.matching->size() : 0;
                                 return r;
                             }});
        }
    } else if (spec.kind == "duality") {
        for (int n = std::max(spec.n_min, 1); n <= spec.n_max; ++n)
            for (int s = 0; s < spec.seeds; ++s) {
                std::string id = "duality-n" + std::to_string(n) + "-s" + std::to_string(s);
                const std::uint64_t seed = Rng(spec.base_seed).split(static_cast<std::uint64_t>(n) * 1000003ULL + static_cast<std::uint64_t>(s)).next();
                tasks.push_back({id, [n, id, seed]() {
                                     ExperimentRow r;
                                     r.instance_id = id;
                                     r.kind = "duality";
                                     r.solver = "simplex";
                                     r.seed = seed;
                                     Rng rng(seed);
                                     auto h = sample_duality_instance(rng, n, r.params);
                                     auto nu = nu_f(h);
                                     auto mu = mu_f(h);
                                     const bool slack = !check_complementary_slackness(h, nu.assignment, mu.cover).has_value();
                                     r.answer = nu.value == mu.value ? (slack ? "EQUAL" : "EQUAL-NO-CS") : "MISMATCH";
                                     r.witness_size = nu.assignment.support_size();
                                     r.value = to_string(nu.value);
                                     r.nodes = nu.pivots + mu.pivots;
                                     return r;
                                 }});
            }
    } else if (spec.kind == "pair") {
        const int lo = spec.n_min;
        const int hi = std::max(spec.n_max, lo);
        // minimum degree 2 is unreachable with a class of size 1
        if (lo < 2) throw InputError("sweep pair: class sizes must be at least 2");
        for (int s = 0; s < spec.seeds; ++s) {
            std::string id = "pair-s" + std::to_string(s);
            const std::uint64_t seed = Rng(spec.base_seed).split(static_cast<std::uint64_t>(s)).next();
            tasks.push_back({id, [spec, lo, hi, id, seed]() {
                                 ExperimentRow r;
                                 r.instance_id = id;
                                 r.kind = "pair";
                                 r.solver = "exact";
                                 r.seed = seed;
                                 Rng rng(seed);
                                 auto f = sample_pair(rng, lo, hi);
                                 r.params = "classes=" + detail::sizes_text(f[0].class_sizes()) + ";e1=" + std::to_string(f[0].num_edges()) + ";e2=" + std::to_string(f[1].num_edges());
                                 auto res = rainbow_matching(f, 2, spec.budget);
                                 r.nodes = res.nodes;
                                 r.answer = res.found() ? "FOUND" : (res.complete ? "NOT-FOUND" : "TIMEOUT");
                                 r.witness_size = res.found() ? 2 : 0;
                                 if (res.complete && !res.found()) r.note = detail::family_note(f);
                                 return r;
                             }});
        }
    } else {
        throw InputError("sweep: unknown kind '" + spec.kind + "' (expected extremal, duality or pair)");
    }
    return tasks;
}

/// Runs every task not already in the checkpoint on a worker pool and
/// returns the CSV (header plus rows in task order).
inline std::string run_sweep(const SweepSpec& spec, const std::optional<std::filesystem::path>& checkpoint = std::nullopt, unsigned threads = worker_count())
{
    auto tasks = sweep_tasks(spec);
    std::map<std::string, std::string> done;
    if (checkpoint && std::filesystem::exists(*checkpoint)) {
        std::ifstream in(*checkpoint);
        std::string line;
        while (std::getline(in, line)) {
            auto a = line.find(',');
            auto b = a == std::string::npos ? a : line.find(',', a + 1);
            if (b == std::string::npos || line.rfind("schema_version", 0) == 0) continue;
            if (line.substr(0, a) != std::to_string(kSchemaVersion)) continue;
            done[line.substr(a + 1, b - a - 1)] = line;
        }
    }
    std::vector<std::string> lines(tasks.size());
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        auto it = done.find(tasks[i].instance_id);
        if (it != done.end())
            lines[i] = it->second;
        else
            todo.push_back(i);
    }

    std::mutex io;
    std::optional<std::ofstream> ck;
    if (checkpoint) {
        if (checkpoint->has_parent_path()) std::filesystem::create_directories(checkpoint->parent_path());
        ck.emplace(*checkpoint, std::ios::app);
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    auto worker = [&]() {
        for (;;) {
            std::size_t j = next.fetch_add(1);
            if (j >= todo.size()) return;
            const std::size_t i = todo[j];
            try {
                auto start = std::chrono::steady_clock::now();
                ExperimentRow row = tasks[i].run();
                if (spec.timing) {
                    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                    std::ostringstream t;
                    t.setf(std::ios::fixed);
                    t.precision(3);
                    t << ms;
                    row.runtime_ms = t.str();
                }
                std::string line = csv_line(row);
                std::lock_guard<std::mutex> lock(io);
                lines[i] = line;
                if (ck) *ck << line << '\n' << std::flush;
            } catch (...) {
                std::lock_guard<std::mutex> lock(io);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(todo.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::string out = csv_header() + "\n";
    for (const auto& l : lines) out += l + "\n";
    return out;
}

}  // namespace rml::lab

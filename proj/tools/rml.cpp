// rml: command-line lab.
//
// Exit codes: 0 ok / valid, 1 invalid witness, 2 usage or bad instance,
// 3 resource limit hit.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rml/rml.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rml;

namespace {

struct Globals
{
    std::uint64_t seed = 1;
    std::int64_t budget_ms = 0;
    std::uint64_t budget_nodes = 0;
    std::string out;

    SearchBudget budget() const { return {budget_nodes, budget_ms}; }
};

/// Thrown when a witness or a check fails (exit 1).
struct Invalid
{
    std::string message;
};

/// Thrown when a search ran out of budget (exit 3).
struct Timeout
{
    std::string message;
};

void emit(const Globals& g, const std::string& text)
{
    if (g.out.empty())
        std::cout << text;
    else
        write_text_file(g.out, text);
}

lab::Instance read_instance(const std::string& path)
{
    if (fs::is_directory(path)) return read_family(path);
    return read_hypergraph(path);
}

const KPartiteHypergraph& single(const lab::Instance& inst, const char* what)
{
    if (auto* h = std::get_if<KPartiteHypergraph>(&inst)) return *h;
    throw InputError(std::string(what) + " needs a single hypergraph file, not a family directory");
}

std::string summary(const KPartiteHypergraph& h)
{
    std::ostringstream s;
    s << "edges=" << h.num_edges() << " delta1=" << min_l_degree(h, 1) << "\n";
    return s.str();
}

// ---------------------------------------------------------------- gen

struct GenArgs
{
    std::string key;
    int k = 3;
    int l = 0;
    int n = 3;
    int m = -1;
    std::vector<int> d;
    std::vector<int> classes;
    std::string family;
    double p = 0.5;
    int floor = 0;
    int colors = 0;
    bool prime = false;
};

int run_gen(const Globals& g, const GenArgs& a)
{
    const auto variant = a.prime ? ExtremalVariant::WAndUHitting : ExtremalVariant::WHitting;
    std::optional<KPartiteHypergraph> h;
    std::optional<Family> fam;
    if (a.key == "Hkl" || a.key == "Hkl-prime") {
        ExtremalSpec spec{a.k, a.l ? a.l : a.k, a.n, a.d, a.key == "Hkl-prime" ? ExtremalVariant::WAndUHitting : variant};
        if (spec.d.empty()) {
            if (a.m < 0) throw InputError("gen Hkl: give --d or --m");
            spec.d = balanced_parts(a.m, a.k);
        }
        h = build_extremal(spec);
    } else if (a.key == "balanced") {
        if (a.m < 0) throw InputError("gen balanced: --m is required");
        h = build_balanced(a.n, a.m, variant, a.k);
    } else if (a.key == "star") {
        if (a.m < 0) throw InputError("gen star: --m is required");
        h = build_star_member(a.n, a.m);
    } else if (a.key == "lift") {
        if (a.family.empty()) throw InputError("gen lift: --family is required");
        h = lift_family(read_family(a.family));
    } else if (a.key == "H13" || a.key == "H13-prime") {
        h = build_h13(a.n, a.key == "H13-prime" ? ExtremalVariant::WAndUHitting : variant);
    } else if (a.key == "H32") {
        h = build_h32(a.n);
    } else if (a.key == "random") {
        std::vector<int> sizes = a.classes.empty() ? std::vector<int>(static_cast<std::size_t>(a.k), a.n) : a.classes;
        const int l = a.l ? a.l : static_cast<int>(sizes.size());
        Rng rng(g.seed);
        if (a.colors > 0) {
            Family f;
            for (int i = 0; i < a.colors; ++i) f.push_back(lab::random_hypergraph(sizes, l, a.p, rng, a.floor));
            fam = std::move(f);
        } else {
            h = lab::random_hypergraph(sizes, l, a.p, rng, a.floor);
        }
    } else {
        throw InputError("gen: unknown key '" + a.key + "' (Hkl, Hkl-prime, balanced, star, lift, H13, H13-prime, H32, random)");
    }
    if (h && a.colors > 0) fam = repeat_family(*h, a.colors);

    if (fam) {
        if (g.out.empty()) throw InputError("gen --colors needs --out DIR");
        write_family(g.out, *fam);
        std::size_t edges = 0, delta = SIZE_MAX;
        for (const auto& f : *fam) {
            edges += f.num_edges();
            delta = std::min(delta, min_l_degree(f, 1));
        }
        std::cout << "colors=" << fam->size() << " edges=" << edges << " delta1=" << delta << "\n";
        return 0;
    }
    if (g.out.empty()) {
        std::cout << serialize(*h);
        std::cerr << summary(*h);
    } else {
        write_hypergraph(g.out, *h);
        std::cout << summary(*h);
    }
    return 0;
}

// ---------------------------------------------------------------- solve

struct SolveArgs
{
    std::string instance;
    bool exact = false;
    bool lift = false;
    bool greedy = false;
    bool perfect = false;
    int target = 0;
    std::string witness;
};

int run_solve(const Globals& g, const SolveArgs& a)
{
    auto inst = read_instance(a.instance);
    auto write_witness = [&](const json& j) {
        if (!a.witness.empty()) write_text_file(a.witness, j.dump(2) + "\n");
    };
    if (auto* h = std::get_if<KPartiteHypergraph>(&inst)) {
        if (a.perfect) {
            auto r = has_perfect_matching(*h, g.budget());
            if (!r.complete) throw Timeout{"perfect matching search: budget exhausted after " + std::to_string(r.nodes) + " nodes"};
            std::ostringstream s;
            s << (r.found() ? "PERFECT-MATCHING" : "NO-PERFECT-MATCHING") << " nodes=" << r.nodes << "\n";
            emit(g, s.str());
            if (r.found()) write_witness(lab::to_json(*r.matching, true));
            return 0;
        }
        auto r = max_matching(*h, g.budget());
        std::ostringstream s;
        s << "MATCHING size=" << r.matching.size() << (r.complete ? " optimal" : " lower-bound") << " nodes=" << r.nodes << "\n";
        emit(g, s.str());
        write_witness(lab::to_json(r.matching, false));
        if (!r.complete) throw Timeout{"max matching: budget exhausted, size is a lower bound"};
        return 0;
    }
    const auto& fam = std::get<Family>(inst);
    const int target = a.target > 0 ? a.target : static_cast<int>(fam.size());
    if (int(a.exact) + int(a.lift) + int(a.greedy) > 1) throw InputError("solve: choose one of --exact, --lift, --greedy");
    std::optional<RainbowMatching> found;
    std::string solver = "exact";
    std::uint64_t nodes = 0;
    if (a.greedy) {
        solver = "greedy";
        found = greedy_rainbow_heuristic(fam);
        if (found && static_cast<int>(found->size()) < target) found.reset();
    } else {
        RainbowResult r;
        if (a.lift) {
            solver = "lift";
            if (target != static_cast<int>(fam.size())) throw InputError("solve --lift: target must equal the number of colors");
            r = rainbow_via_lift(fam, g.budget());
        } else {
            r = rainbow_matching(fam, target, g.budget());
        }
        nodes = r.nodes;
        if (!r.complete) throw Timeout{"rainbow search (" + solver + "): budget exhausted after " + std::to_string(r.nodes) + " nodes"};
        found = r.matching;
    }
    std::ostringstream s;
    s << (found ? "RAINBOW-MATCHING" : (a.greedy ? "HEURISTIC-FAILED" : "NO-RAINBOW-MATCHING")) << " target=" << target << " solver=" << solver << " nodes=" << nodes
      << "\n";
    emit(g, s.str());
    if (found) write_witness(lab::to_json(*found));
    return 0;
}

// ---------------------------------------------------------------- lp

struct LpArgs
{
    std::string instance;
    bool perfect = false;
    std::string witness;
    std::string cover;
};

int run_lp(const Globals& g, const LpArgs& a)
{
    auto inst = read_instance(a.instance);
    const auto& h = single(inst, "lp");
    json report;
    if (a.perfect) {
        auto f = sparse_fpm(h);
        report["fractional_perfect_matching"] = f.has_value();
        if (f) {
            report["support"] = f->support_size();
            report["support_bound"] = h.num_vertices();
            if (!a.witness.empty()) write_text_file(a.witness, lab::to_json(*f, true).dump(2) + "\n");
        }
    } else {
        auto nu = nu_f(h);
        auto mu = mu_f(h);
        report["nu_f"] = to_string(nu.value);
        report["mu_f"] = to_string(mu.value);
        report["equal"] = nu.value == mu.value;
        report["complementary_slackness"] = !check_complementary_slackness(h, nu.assignment, mu.cover).has_value();
        report["support"] = nu.assignment.support_size();
        report["pivots"] = nu.pivots + mu.pivots;
        if (!a.witness.empty()) write_text_file(a.witness, lab::to_json(nu.assignment, false).dump(2) + "\n");
        if (!a.cover.empty()) write_text_file(a.cover, lab::to_json(mu.cover).dump(2) + "\n");
    }
    emit(g, report.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- closeness

struct ClosenessArgs
{
    std::string instance;
    std::string target = "balanced";
    int m = -1;
    bool prime = false;
    int max_exhaustive = 12;
};

int run_closeness(const Globals& g, const ClosenessArgs& a)
{
    auto inst = read_instance(a.instance);
    KPartiteHypergraph h = std::holds_alternative<Family>(inst) ? lift_family(std::get<Family>(inst)) : std::get<KPartiteHypergraph>(inst);
    const auto variant = a.prime ? ExtremalVariant::WAndUHitting : ExtremalVariant::WHitting;
    TargetSpec spec;
    if (a.target == "H13") {
        const int n = h.class_size(1);
        spec = TargetSpec::h13(n, variant);
    } else if (a.target == "balanced") {
        if (!h.is_balanced()) throw InputError("closeness: balanced target needs equal class sizes");
        const int k = h.num_classes();
        const int n = h.class_size(0);
        spec = TargetSpec::plain({k, h.uniformity(), n, balanced_parts(a.m < 0 ? n : a.m, k), variant});
    } else {
        throw InputError("closeness: --target must be balanced or H13");
    }
    ClosenessOptions opts;
    opts.seed = g.seed;
    opts.max_exhaustive_class = a.max_exhaustive;
    auto r = min_closeness(h, spec, opts);
    json j;
    j["missing_edges"] = r.missing_edges;
    j["normalizer"] = r.normalizer.str();
    j["epsilon"] = to_string(r.epsilon);
    j["upper_bound"] = r.upper_bound;
    if (r.witness_w) {
        json w = json::array();
        for (const auto& cls : *r.witness_w) {
            json c = json::array();
            for (int pos : cls) c.push_back(pos + 1);
            w.push_back(c);
        }
        j["w_positions"] = w;
    }
    emit(g, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- absorb

struct AbsorbArgs
{
    std::string instance;
    std::string matching;
    int b = 4;
    int size_cap = 2;
    std::uint64_t max_sets = 2000000;
};

json absorbing_json(const AbsorbingCheck& c)
{
    json j;
    j["absorbing"] = c.ok;
    j["sets_checked"] = c.sets_checked;
    if (c.counterexample) {
        json s = json::array();
        for (const auto& v : *c.counterexample) s.push_back(format_vertex(v));
        j["counterexample"] = s;
    }
    return j;
}

int run_absorb(const Globals& g, const AbsorbArgs& a)
{
    auto inst = read_instance(a.instance);
    const auto& h = single(inst, "absorb");
    AbsorbingLimits limits{a.max_sets, g.budget()};
    json j;
    if (!a.matching.empty()) {
        auto m = lab::matching_from_json(json::parse(read_text_file(a.matching)));
        j = absorbing_json(verify_absorbing(h, m, a.b, limits));
        emit(g, j.dump(2) + "\n");
        return j["absorbing"].get<bool>() ? 0 : 1;
    }
    AbsorbingSearch opts;
    opts.seed = g.seed;
    opts.limits = limits;
    auto m = find_absorbing(h, a.size_cap, a.b, opts);
    j["found"] = m.has_value();
    if (m) j["matching"] = lab::to_json(*m, false);
    emit(g, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- decompose

struct DecomposeArgs
{
    std::string instance;
    int t = 1;
    std::string pair_cap = "3";
    std::string exclusion = "2";
};

int run_decompose(const Globals& g, const DecomposeArgs& a)
{
    auto inst = read_instance(a.instance);
    const auto& h = single(inst, "decompose");
    auto r = edge_disjoint_fpm(h, {a.t, parse_rational(a.pair_cap), parse_rational(a.exclusion)});
    json j;
    j["requested"] = a.t;
    j["returned"] = r.fpms.size();
    j["stop_reason"] = r.stop_reason;
    j["max_pair_load"] = to_string(max_pair_load(r.fpms));
    j["fpms"] = json::array();
    for (const auto& f : r.fpms) j["fpms"].push_back(lab::to_json(f, true));
    emit(g, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- sparsify / cover

struct SparsifyArgs
{
    std::string instance;
    int t = 1;
    int reps = 1;
};

int run_sparsify(const Globals& g, const SparsifyArgs& a)
{
    auto inst = read_instance(a.instance);
    const auto& h = single(inst, "sparsify");
    auto dec = edge_disjoint_fpm(h, {a.t});
    if (static_cast<int>(dec.fpms.size()) < a.t) throw InputError("sparsify: only " + std::to_string(dec.fpms.size()) + " FPMs available (" + dec.stop_reason + ")");
    std::ostringstream out;
    out << "seed,edges,mean_degree,max_codegree\n";
    for (int i = 0; i < a.reps; ++i) {
        const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
        auto s = sparsify(h, dec.fpms, seed);
        Rational mean(Integer(static_cast<long long>(s.num_edges()) * s.uniformity()), Integer(s.num_vertices()));
        out << seed << ',' << s.num_edges() << ',' << to_string(mean) << ',' << max_codegree(s) << '\n';
    }
    emit(g, out.str());
    return 0;
}

struct CoverArgs
{
    std::string instance;
    double bite = 0.1;
    int reps = 1;
};

int run_cover(const Globals& g, const CoverArgs& a)
{
    auto inst = read_instance(a.instance);
    const auto& h = single(inst, "cover");
    std::ostringstream out;
    out << "seed,cover_size,matching_size,rounds,greedy_edges,matching_valid\n";
    for (int i = 0; i < a.reps; ++i) {
        const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
        auto r = nibble_cover(h, {a.bite, seed});
        const bool valid = !check_matching(h, Matching{r.matching}).has_value();
        out << seed << ',' << r.cover.size() << ',' << r.matching.size() << ',' << r.rounds << ',' << r.greedy_edges << ',' << (valid ? 1 : 0) << '\n';
    }
    emit(g, out.str());
    return 0;
}

// ---------------------------------------------------------------- pipeline

struct PipelineArgs
{
    std::string family;
    std::string epsilon = "1/10";
    std::string witness;
};

int run_pipeline_cmd(const Globals& g, const PipelineArgs& a)
{
    Family fam = read_family(a.family);
    auto cfg = PipelineConfig::with_epsilon(parse_rational(a.epsilon));
    cfg.seed = g.seed;
    if (g.budget_nodes || g.budget_ms) cfg.budget = g.budget();
    auto report = run_pipeline(fam, cfg);
    emit(g, report.to_json().dump(2) + "\n");
    if (report.witness && !a.witness.empty()) write_text_file(a.witness, lab::to_json(*report.witness).dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- sweep / verify

struct SweepArgs
{
    lab::SweepSpec spec;
    std::string checkpoint;
};

int run_sweep_cmd(const Globals& g, SweepArgs a)
{
    a.spec.base_seed = g.seed;
    a.spec.budget = g.budget();
    std::optional<fs::path> ck;
    if (!a.checkpoint.empty()) ck = fs::path(a.checkpoint);
    emit(g, lab::run_sweep(a.spec, ck));
    return 0;
}

struct VerifyArgs
{
    std::string instance;
    std::string witness;
};

int run_verify(const VerifyArgs& a)
{
    auto inst = read_instance(a.instance);
    std::string text = read_text_file(a.witness);
    json w;
    try {
        w = json::parse(text);
    } catch (const json::exception& e) {
        throw Invalid{std::string("malformed witness JSON: ") + e.what()};
    }
    std::optional<std::string> err;
    try {
        err = lab::verify_witness(inst, w);
    } catch (const InputError& e) {
        throw Invalid{e.what()};
    }
    if (err) throw Invalid{*err};
    std::cout << "VALID\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rml: rainbow matching lab"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--budget-ms", g.budget_ms, "Wall-clock budget per search in ms (0 = none; makes results timing-dependent)");
    app.add_option("--budget-nodes", g.budget_nodes, "Node budget per search (0 = none)");
    app.add_option("--out", g.out, "Output path (default stdout)");
    int status = 0;

    GenArgs gen;
    auto* c_gen = app.add_subcommand("gen", "Generate a construction or random instance");
    c_gen->add_option("key", gen.key, "Hkl, Hkl-prime, balanced, star, lift, H13, H13-prime, H32, random")->required();
    c_gen->add_option("--k", gen.k, "Number of classes");
    c_gen->add_option("--l", gen.l, "Uniformity (default k)");
    c_gen->add_option("--n", gen.n, "Class size");
    c_gen->add_option("--m", gen.m, "Size of W (split evenly)");
    c_gen->add_option("--d", gen.d, "Explicit d_1..d_k")->delimiter(',');
    c_gen->add_option("--classes", gen.classes, "Class sizes for random")->delimiter(',');
    c_gen->add_option("--family", gen.family, "Family directory for lift");
    c_gen->add_option("--p", gen.p, "Edge probability for random");
    c_gen->add_option("--floor", gen.floor, "Vertex degree floor for random");
    c_gen->add_option("--colors", gen.colors, "Write a family of this many members into --out DIR");
    c_gen->add_flag("--prime", gen.prime, "Also require meeting V \\ W");
    c_gen->callback([&]() { status = run_gen(g, gen); });

    SolveArgs solve;
    auto* c_solve = app.add_subcommand("solve", "Maximum / perfect / rainbow matching");
    c_solve->add_option("instance", solve.instance, "Hypergraph file or family directory")->required();
    c_solve->add_flag("--exact", solve.exact, "Exact rainbow branch and bound (default)");
    c_solve->add_flag("--lift", solve.lift, "Perfect matching of the color lift");
    c_solve->add_flag("--greedy", solve.greedy, "SDR-based heuristic");
    c_solve->add_flag("--perfect", solve.perfect, "Single hypergraph: decide perfect matching");
    c_solve->add_option("--target", solve.target, "Rainbow matching size (default: number of colors)");
    c_solve->add_option("--witness", solve.witness, "Write the witness JSON here");
    c_solve->callback([&]() { status = run_solve(g, solve); });

    LpArgs lp;
    auto* c_lp = app.add_subcommand("lp", "Fractional matching and cover LPs");
    c_lp->add_option("instance", lp.instance)->required();
    c_lp->add_flag("--perfect", lp.perfect, "Small-support fractional perfect matching");
    c_lp->add_option("--witness", lp.witness, "Write the fractional matching JSON here");
    c_lp->add_option("--cover", lp.cover, "Write the fractional cover JSON here");
    c_lp->callback([&]() { status = run_lp(g, lp); });

    ClosenessArgs close;
    auto* c_close = app.add_subcommand("closeness", "Distance to the extremal construction");
    c_close->add_option("instance", close.instance, "Hypergraph file, or family directory (lifted)")->required();
    c_close->add_option("--target", close.target, "balanced or H13 (add --prime for the primed targets)");
    c_close->add_option("--m", close.m, "|W| for the balanced target (default n)");
    c_close->add_flag("--prime", close.prime, "Primed target");
    c_close->add_option("--max-exhaustive", close.max_exhaustive, "Largest class size searched exhaustively");
    c_close->callback([&]() { status = run_closeness(g, close); });

    AbsorbArgs absorb;
    auto* c_absorb = app.add_subcommand("absorb", "Verify or search for an absorbing matching");
    c_absorb->add_option("instance", absorb.instance)->required();
    c_absorb->add_option("--matching", absorb.matching, "Matching witness to verify");
    c_absorb->add_option("--b", absorb.b, "Largest leftover size");
    c_absorb->add_option("--size-cap", absorb.size_cap, "Largest matching tried by the search");
    c_absorb->add_option("--max-sets", absorb.max_sets, "Enumeration budget");
    c_absorb->callback([&]() { status = run_absorb(g, absorb); });

    DecomposeArgs dec;
    auto* c_dec = app.add_subcommand("decompose", "Edge-disjoint fractional perfect matchings");
    c_dec->add_option("instance", dec.instance)->required();
    c_dec->add_option("--t", dec.t, "Number of FPMs");
    c_dec->add_option("--pair-cap", dec.pair_cap, "Pair load cap");
    c_dec->add_option("--exclusion", dec.exclusion, "Pair load above which edges are dropped");
    c_dec->callback([&]() { status = run_decompose(g, dec); });

    SparsifyArgs sp;
    auto* c_sp = app.add_subcommand("sparsify", "Random sparsification statistics (CSV)");
    c_sp->add_option("instance", sp.instance)->required();
    c_sp->add_option("--t", sp.t, "Number of FPMs");
    c_sp->add_option("--reps", sp.reps, "Number of seeds (seed, seed+1, ...)");
    c_sp->callback([&]() { status = run_sparsify(g, sp); });

    CoverArgs cv;
    auto* c_cv = app.add_subcommand("cover", "Nibble cover statistics (CSV)");
    c_cv->add_option("instance", cv.instance)->required();
    c_cv->add_option("--bite", cv.bite, "Bite size");
    c_cv->add_option("--reps", cv.reps, "Number of seeds (seed, seed+1, ...)");
    c_cv->callback([&]() { status = run_cover(g, cv); });

    PipelineArgs pl;
    auto* c_pl = app.add_subcommand("pipeline", "Constructive rainbow perfect matching pipeline");
    c_pl->add_option("family", pl.family, "Family directory")->required();
    c_pl->add_option("--epsilon", pl.epsilon, "Closeness threshold (rational)");
    c_pl->add_option("--witness", pl.witness, "Write the rainbow matching JSON here");
    c_pl->callback([&]() { status = run_pipeline_cmd(g, pl); });

    SweepArgs sw;
    auto* c_sw = app.add_subcommand("sweep", "Experiment sweep (CSV)");
    c_sw->add_option("--kind", sw.spec.kind, "extremal, duality or pair")->required();
    c_sw->add_option("--n-min", sw.spec.n_min, "Smallest n (pair: smallest class size)");
    c_sw->add_option("--n-max", sw.spec.n_max, "Largest n (pair: largest class size)");
    c_sw->add_option("--seeds", sw.spec.seeds, "Instances per n");
    c_sw->add_option("--solver", sw.spec.solver, "extremal: exact or lift");
    c_sw->add_flag("--timing", sw.spec.timing, "Fill runtime_ms");
    c_sw->add_option("--checkpoint", sw.checkpoint, "Resume file");
    c_sw->callback([&]() { status = run_sweep_cmd(g, sw); });

    VerifyArgs ver;
    auto* c_ver = app.add_subcommand("verify", "Re-verify a witness against an instance");
    c_ver->add_option("instance", ver.instance)->required();
    c_ver->add_option("witness", ver.witness)->required();
    c_ver->callback([&]() { status = run_verify(ver); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Invalid& e) {
        std::cerr << "INVALID: " << e.message << "\n";
        return 1;
    } catch (const Timeout& e) {
        std::cerr << "TIMEOUT: " << e.message << "\n";
        return 3;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return status;
}

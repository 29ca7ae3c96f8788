#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "oracles.hpp"
#include "rml/constructions.hpp"
#include "rml/lab/random_instances.hpp"
#include "rml/lab/sweep.hpp"
#include "rml/lab/witness.hpp"

using namespace rml;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("rml_test_lab_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct Run
{
    int code = -1;
    std::string out;
    std::string err;
};

Run cli(const std::string& args, const fs::path& dir)
{
    const auto out = dir / "stdout.txt";
    const std::string cmd = std::string(RML_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text_file(out);
    r.err = read_text_file(dir / "stderr.txt");
    return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("generated files round-trip")
{
    auto dir = scratch("roundtrip");
    std::vector<KPartiteHypergraph> hs{build_balanced(4, 3), build_balanced(3, 2, ExtremalVariant::WAndUHitting), build_h13(3), build_h32(4),
                                       build_star_member(3, 1), complete_hypergraph({1, 2, 3, 2}, 2), KPartiteHypergraph({2, 2, 2}, 3)};
    for (std::size_t i = 0; i < hs.size(); ++i) {
        auto p = dir / ("h" + std::to_string(i) + ".hg");
        write_hypergraph(p, hs[i]);
        CHECK(read_hypergraph(p) == hs[i]);
    }
    Rng rng(3);
    auto fam = lab::random_family({3, 2, 4}, 3, 0.4, rng);
    write_family(dir / "fam", fam);
    auto back = read_family(dir / "fam");
    REQUIRE(back.size() == fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) CHECK(back[i] == fam[i]);
}

TEST_CASE("random instances")
{
    Rng rng(10);
    CHECK(lab::random_hypergraph({3, 3, 3}, 3, 0.0, rng).num_edges() == 0);
    CHECK(lab::random_hypergraph({3, 3, 3}, 3, 1.0, rng).num_edges() == 27);
    for (int trial = 0; trial < 50; ++trial) {
        auto h = lab::random_hypergraph({4, 4, 4}, 3, 0.05, rng, 3);
        CHECK(oracle::min_vertex_degree(h) >= 3);
    }
    Rng a(99), b(99);
    CHECK(lab::random_hypergraph({3, 4, 2, 3}, 3, 0.3, a) == lab::random_hypergraph({3, 4, 2, 3}, 3, 0.3, b));
    for (int trial = 0; trial < 100; ++trial) {
        auto s = lab::random_class_sizes(3, 2, 4, rng);
        for (int x : s) CHECK((x >= 2 && x <= 4));
    }
}

TEST_CASE("verify_witness examples")
{
    auto k = complete_hypergraph({2, 2, 2}, 3);
    lab::Instance inst = k;
    nlohmann::json pm{{"kind", "matching"}, {"perfect", true}, {"edges", {"1:1 2:1 3:1", "1:2 2:2 3:2"}}};
    CHECK_FALSE(lab::verify_witness(inst, pm).has_value());

    nlohmann::json overlap{{"kind", "matching"}, {"perfect", false}, {"edges", {"1:1 2:1 3:1", "1:2 2:1 3:2"}}};
    auto err = lab::verify_witness(inst, overlap);
    REQUIRE(err.has_value());
    CHECK(err->find("2:1") != std::string::npos);

    nlohmann::json heavy{{"kind", "fractional-matching"}, {"perfect", false}, {"weights", {{"1:1 2:1 3:1", "1/2"}, {"1:1 2:2 3:2", "9/16"}}}};
    auto frac = lab::verify_witness(inst, heavy);
    REQUIRE(frac.has_value());
    CHECK(frac->find("17/16") != std::string::npos);

    nlohmann::json short_pm{{"kind", "matching"}, {"perfect", true}, {"edges", {"1:1 2:1 3:1"}}};
    CHECK(lab::verify_witness(inst, short_pm).has_value());
    nlohmann::json outside{{"kind", "matching"}, {"perfect", false}, {"edges", {"1:3 2:1 3:1"}}};
    CHECK(lab::verify_witness(inst, outside).has_value());
    CHECK_THROWS_AS(lab::verify_witness(inst, nlohmann::json{{"kind", "nope"}}), InputError);
}

TEST_CASE("solver witnesses verify after a JSON round trip")
{
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = lab::random_family({3, 3, 3}, 3, 0.3 + 0.6 * rng.uniform01(), rng);
        lab::Instance fam = f;
        if (auto r = rainbow_matching(f, 3); r.found()) {
            auto j = nlohmann::json::parse(lab::to_json(*r.matching).dump());
            CHECK_FALSE(lab::verify_witness(fam, j).has_value());
        }
        const auto& h = f.front();
        lab::Instance one = h;
        auto mm = max_matching(h);
        CHECK_FALSE(lab::verify_witness(one, nlohmann::json::parse(lab::to_json(mm.matching, false).dump())).has_value());
        auto nu = nu_f(h);
        CHECK_FALSE(lab::verify_witness(one, nlohmann::json::parse(lab::to_json(nu.assignment, false).dump())).has_value());
        auto mu = mu_f(h);
        CHECK_FALSE(lab::verify_witness(one, nlohmann::json::parse(lab::to_json(mu.cover).dump())).has_value());
    }
}

TEST_CASE("sweep examples")
{
    lab::SweepSpec ext;
    ext.kind = "extremal";
    ext.n_min = 3;
    ext.n_max = 5;
    auto rows = csv_rows(lab::run_sweep(ext, std::nullopt, 1));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][0] == "schema_version");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][6] == "NO-RAINBOW-PM");

    lab::SweepSpec dual;
    dual.kind = "duality";
    dual.n_min = 3;
    dual.n_max = 4;
    dual.seeds = 50;
    rows = csv_rows(lab::run_sweep(dual, std::nullopt, 2));
    REQUIRE(rows.size() == 101);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][6] == "EQUAL");

    lab::SweepSpec empty = ext;
    empty.n_min = 5;
    empty.n_max = 4;
    CHECK(lab::run_sweep(empty) == lab::csv_header() + "\n");

    lab::SweepSpec bad = ext;
    bad.kind = "unknown";
    CHECK_THROWS_AS(lab::run_sweep(bad), InputError);
    lab::SweepSpec tiny;
    tiny.kind = "pair";
    tiny.n_min = 1;
    CHECK_THROWS_AS(lab::run_sweep(tiny), InputError);
}

TEST_CASE("sweep is deterministic across thread counts and resumable")
{
    lab::SweepSpec spec;
    spec.kind = "pair";
    spec.n_min = 2;
    spec.n_max = 3;
    spec.seeds = 30;
    spec.base_seed = 7;
    const auto one = lab::run_sweep(spec, std::nullopt, 1);
    CHECK(lab::run_sweep(spec, std::nullopt, 3) == one);

    auto dir = scratch("checkpoint");
    auto ck = dir / "ck.csv";
    // Seed the checkpoint with the first ten rows only.
    {
        std::istringstream in(one);
        std::ofstream out(ck);
        std::string line;
        std::getline(in, line);
        for (int i = 0; i < 10 && std::getline(in, line); ++i) out << line << '\n';
    }
    CHECK(lab::run_sweep(spec, ck, 2) == one);
    CHECK(lab::run_sweep(spec, ck, 1) == one);
}

TEST_CASE("cli gen examples")
{
    auto dir = scratch("gen");
    auto r = cli("gen balanced --k 3 --n 6 --m 3 --out " + (dir / "b.hg").string(), dir);
    CHECK(r.code == 0);
    auto h = read_hypergraph(dir / "b.hg");
    CHECK(h == build_balanced(6, 3));
    CHECK(r.out.find("delta1=" + std::to_string(d3_threshold(6, 3))) != std::string::npos);
    CHECK(static_cast<std::int64_t>(oracle::min_vertex_degree(h)) == d3_threshold(6, 3));

    r = cli("gen balanced --n 3 --m 2 --colors 3 --out " + (dir / "fam").string(), dir);
    CHECK(r.code == 0);
    auto fam = read_family(dir / "fam");
    r = cli("gen lift --family " + (dir / "fam").string() + " --out " + (dir / "lift.hg").string(), dir);
    CHECK(r.code == 0);
    auto lifted = read_hypergraph(dir / "lift.hg");
    CHECK(lifted.num_classes() == 4);
    std::size_t total = 0;
    for (const auto& f : fam) total += f.num_edges();
    CHECK(lifted.num_edges() == total);

    r = cli("gen random --n 3 --p 0 --out " + (dir / "r.hg").string(), dir);
    CHECK(r.code == 0);
    CHECK(read_hypergraph(dir / "r.hg").num_edges() == 0);

    CHECK(cli("gen nosuchkey", dir).code == 2);
    CHECK(cli("gen balanced --n 3", dir).code == 2);
    CHECK(cli("gen balanced --n 3 --m 10", dir).code == 2);
    CHECK(cli("", dir).code == 2);
}

TEST_CASE("cli solve and verify")
{
    auto dir = scratch("verify");
    write_family(dir / "ext", repeat_family(build_balanced(3, 2), 3));
    auto r = cli("solve " + (dir / "ext").string(), dir);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("NO-RAINBOW-MATCHING", 0) == 0);
    r = cli("solve " + (dir / "ext").string() + " --lift", dir);
    CHECK(r.out.rfind("NO-RAINBOW-MATCHING", 0) == 0);

    write_family(dir / "full", repeat_family(complete_hypergraph({3, 3, 3}, 3), 3));
    r = cli("solve " + (dir / "full").string() + " --witness " + (dir / "w.json").string(), dir);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("RAINBOW-MATCHING", 0) == 0);
    CHECK(cli("verify " + (dir / "full").string() + " " + (dir / "w.json").string(), dir).code == 0);
    // the same picks are not a rainbow matching of the extremal family
    r = cli("verify " + (dir / "ext").string() + " " + (dir / "w.json").string(), dir);
    if (r.code == 1) CHECK(r.err.rfind("INVALID", 0) == 0);

    write_hypergraph(dir / "k.hg", complete_hypergraph({2, 2, 2}, 3));
    nlohmann::json overlap{{"kind", "matching"}, {"perfect", false}, {"edges", {"1:1 2:1 3:1", "1:2 2:1 3:2"}}};
    write_text_file(dir / "bad.json", overlap.dump());
    r = cli("verify " + (dir / "k.hg").string() + " " + (dir / "bad.json").string(), dir);
    CHECK(r.code == 1);
    CHECK(r.err.find("2:1") != std::string::npos);

    r = cli("lp " + (dir / "k.hg").string() + " --witness " + (dir / "f.json").string() + " --cover " + (dir / "c.json").string(), dir);
    CHECK(r.code == 0);
    CHECK(cli("verify " + (dir / "k.hg").string() + " " + (dir / "f.json").string(), dir).code == 0);
    CHECK(cli("verify " + (dir / "k.hg").string() + " " + (dir / "c.json").string(), dir).code == 0);

    CHECK(cli("verify " + (dir / "missing.hg").string() + " " + (dir / "bad.json").string(), dir).code == 2);
    write_text_file(dir / "garbage.json", "{not json");
    CHECK(cli("verify " + (dir / "k.hg").string() + " " + (dir / "garbage.json").string(), dir).code != 0);
}

TEST_CASE("cli sweep output is byte-identical across runs")
{
    auto dir = scratch("sweep");
    auto a = cli("sweep --kind pair --n-min 2 --n-max 3 --seeds 20 --seed 4", dir);
    auto b = cli("sweep --kind pair --n-min 2 --n-max 3 --seeds 20 --seed 4", dir);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(csv_rows(a.out).size() == 21);
    auto e = cli("sweep --kind extremal --n-min 4 --n-max 3", dir);
    CHECK(e.out == lab::csv_header() + "\n");
}

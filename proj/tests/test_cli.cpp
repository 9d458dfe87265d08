#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "linklab/cli.hpp"
#include "linklab/graph.hpp"
#include "linklab/io.hpp"
#include "linklab/product.hpp"

using namespace linklab;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args,
           const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct Temp {
    fs::path dir;
    Temp() {
        std::mt19937_64 rng(std::random_device{}());
        dir = fs::temp_directory_path() /
              ("linklab_cli_" + std::to_string(rng()));
        fs::create_directories(dir);
    }
    ~Temp() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string file(const std::string& name, const std::string& content) {
        fs::path p = dir / name;
        std::ofstream f(p);
        f << content;
        return p.string();
    }
    std::string path(const std::string& name) { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("gen emits graphs and tagged products") {
    auto q3 = run({"gen", "hypercube", "3"});
    CHECK(q3.code == 0);
    CHECK(graph_from_json(q3.out).size() == 8);
    auto tag = family_tag_from_json(q3.out);
    REQUIRE(tag.has_value());
    CHECK(tag->kind == "hypercube");
    CHECK(tag->sizes == std::vector<int>{3});

    auto grid = run({"gen", "grid", "2", "3", "3"});
    CHECK(grid.code == 0);
    CHECK(product_from_json(grid.out).factors.size() == 3);

    CHECK(graph_from_json(run({"gen", "path", "5"}).out).edge_count() == 4);
    CHECK(graph_from_json(run({"gen", "cycle", "4"}).out).edge_count() == 4);
    CHECK(graph_from_json(run({"gen", "complete", "6"}).out).edge_count() == 15);
    CHECK(graph_from_json(run({"gen", "sharpness", "5", "2"}).out).size() == 6);
}

TEST_CASE("gen rejects unknown kinds and bad sizes") {
    CHECK(run({"gen", "moebius", "4"}).code == 64);
    CHECK(run({"gen", "torus", "2"}).code == 64);
    CHECK(run({"gen", "path"}).code == 64);
    CHECK(run({"gen", "sharpness", "5"}).code == 64);
    CHECK(run({"gen", "path", "x"}).code == 64);
}

TEST_CASE("product multiplies files and keeps factor lists") {
    Temp tmp;
    auto k3 = run({"gen", "complete", "3"});
    std::string a = tmp.file("a.json", k3.out);
    auto res = run({"product", a, a});
    CHECK(res.code == 0);
    ProductGraph p = product_from_json(res.out);
    CHECK(p.factors.size() == 2);
    CHECK(p.graph.size() == 9);

    std::string two = tmp.file("two.json", res.out);
    auto three = run({"product", two, a});
    CHECK(three.code == 0);
    CHECK(product_from_json(three.out).factors.size() == 3);
    CHECK(product_from_json(three.out).graph.size() == 27);
}

TEST_CASE("solve and verify round-trip a certificate") {
    Temp tmp;
    Instance inst;
    inst.product = product_of({make_complete(6), make_path(5)});
    inst.pairs = {{0, 29}, {7, 13}, {21, 3}};
    std::string file = tmp.file("inst.json", instance_to_json(inst));
    std::string cert = tmp.path("cert.json");
    auto solved = run({"solve", file, "--mode", "lemma1", "--out", cert});
    CHECK(solved.code == 0);
    Certificate c = certificate_from_json(slurp(cert));
    CHECK(c.system.paths.size() == 3);
    CHECK(!c.trace.empty());

    auto ok = run({"verify", file, cert, file});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("valid") == 0);

    // Tamper with the certificate: first path loses its interior.
    Certificate bad = c;
    if (bad.system.paths[0].size() > 2) {
        bad.system.paths[0].erase(bad.system.paths[0].begin() + 1);
        std::string badfile = tmp.file("bad.json", certificate_to_json(bad));
        auto rejected = run({"verify", file, badfile, file});
        CHECK(rejected.code == 3);
        CHECK(rejected.err.find("invalid") != std::string::npos);
    }
}

TEST_CASE("solve picks the declared engine") {
    Temp tmp;
    Instance strong;
    strong.product = product_of({make_complete(16), make_complete(16)});
    strong.pairs = {{0, 17}, {34, 51}, {68, 85}};
    strong.a = 2;
    strong.b = 2;
    std::string sfile = tmp.file("strong.json", instance_to_json(strong));
    CHECK(run({"solve", sfile}).code == 0); // auto = strong via a, b fields
    CHECK(run({"solve", sfile, "--mode", "strong"}).code == 0);

    Instance plus;
    plus.product = product_of({make_complete(9), make_cycle(4)});
    plus.pairs = {{0, 5}, {9, 14}, {18, 23}};
    std::string pfile = tmp.file("plus.json", instance_to_json(plus));
    auto plus_run = run({"solve", pfile, "--mode", "kplus1"});
    CHECK(plus_run.code == 0);
    CHECK(plus_run.out.find("kplus1:case=") != std::string::npos);

    // strong without a and b in the file is a usage error
    CHECK(run({"solve", pfile, "--mode", "strong"}).code == 64);
}

TEST_CASE("solve reports negative and unsupported outcomes") {
    Temp tmp;
    Instance cross;
    cross.product = product_of({make_cycle(4)});
    cross.pairs = {{0, 2}, {1, 3}};
    std::string xfile = tmp.file("cross.json", instance_to_json(cross));
    auto r = run({"solve", xfile, "--mode", "oracle"});
    CHECK(r.code == 3);
    CHECK(r.err.find("not linkable") != std::string::npos);

    Instance narrow;
    narrow.product = product_of({make_complete(8), make_cycle(4)});
    narrow.pairs = {{0, 5}, {9, 14}, {18, 23}};
    std::string nfile = tmp.file("narrow.json", instance_to_json(narrow));
    CHECK(run({"solve", nfile, "--mode", "kplus1"}).code == 2);

    CHECK(run({"solve", tmp.file("junk.json", "{oops")}).code == 64);
    CHECK(run({"solve", tmp.path("missing.json")}).code == 64);
}

TEST_CASE("link-number reads graphs, products and tagged families") {
    auto gen = run({"gen", "hypercube", "3"});
    auto piped = run({"link-number", "-"}, gen.out);
    CHECK(piped.code == 0);
    CHECK(piped.out == "1\n");

    Temp tmp;
    std::string q3 = tmp.file("q3.json", gen.out);
    auto sym = run({"link-number", q3, "--symmetry"});
    CHECK(sym.code == 0);
    CHECK(sym.out == "1\n");
    CHECK(sym.err.empty());

    std::string bare = tmp.file("bare.json", graph_to_json(make_cycle(5)));
    auto noted = run({"link-number", bare, "--symmetry"});
    CHECK(noted.code == 0);
    CHECK(noted.out == "1\n");
    CHECK(noted.err.find("no symmetry group") != std::string::npos);
}

TEST_CASE("link-number surfaces exhausted budgets as undecided") {
    Temp tmp;
    std::string q4 = tmp.file("q4.json", run({"gen", "hypercube", "4"}).out);
    auto r = run({"link-number", q4, "--budget", "1"});
    CHECK(r.code == 4);
    CHECK(r.err.find("undecided") != std::string::npos);
}

TEST_CASE("conn prints connectivity and the product formula") {
    auto c4 = run({"gen", "cycle", "4"});
    auto direct = run({"conn", "-"}, c4.out);
    CHECK(direct.code == 0);
    CHECK(direct.out == "2\n");

    Temp tmp;
    std::string k3 = tmp.file("k3.json", run({"gen", "complete", "3"}).out);
    auto both = run({"conn", k3, "--product", k3});
    CHECK(both.code == 0);
    CHECK(both.out.find("kappa(G) = 2") != std::string::npos);
    CHECK(both.out.find("kappa(G x H) = 4") != std::string::npos);
}

TEST_CASE("edge lists import through the format shim") {
    Temp tmp;
    std::string el = tmp.file("c4.txt", "# a square\n0 1\n1 2\n2 3\n3 0\n");
    auto conn = run({"conn", el, "--format", "edgelist"});
    CHECK(conn.code == 0);
    CHECK(conn.out == "2\n");
    auto link = run({"link-number", el, "--format", "edgelist"});
    CHECK(link.code == 0);
    CHECK(link.out == "1\n");
    std::string junk = tmp.file("bad.txt", "0 1 2\n");
    CHECK(run({"conn", junk, "--format", "edgelist"}).code == 64);
}

TEST_CASE("repro runs the small table clean") {
    auto r = run({"repro", "--max-vertices", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Q1") != std::string::npos);
    CHECK(r.out.find("ok") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).code == 64);
    CHECK(run({"frobnicate"}).code == 64);
    CHECK(run({"link-number"}).code == 64);
    CHECK(run({"link-number", "x.json", "--threads", "0"}).code == 64);
    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("gen") != std::string::npos);
}

#include "linklab/cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "linklab/connectivity.hpp"
#include "linklab/errors.hpp"
#include "linklab/families.hpp"
#include "linklab/io.hpp"
#include "linklab/linker.hpp"
#include "linklab/oracle.hpp"

namespace linklab {
namespace {

std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream ss;
    if (path == "-") {
        ss << in.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f)
            throw std::invalid_argument("cannot open " + path);
        ss << f.rdbuf();
    }
    return ss.str();
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::invalid_argument("cannot write " + path);
    f << text;
}

Graph load_graph(const std::string& path, const std::string& format,
                 std::istream& in) {
    std::string text = read_input(path, in);
    return format == "edgelist" ? graph_from_edgelist(text)
                                : graph_from_json(text);
}

int require_one_size(const std::vector<int>& sizes, const std::string& kind) {
    if (sizes.size() != 1)
        throw std::invalid_argument(kind + " takes exactly one size");
    return sizes[0];
}

// Constructive modes handle exactly two factors: longer factor lists are
// regrouped as (product of all leading factors) x (last factor), which
// leaves the row-major vertex ids unchanged.
ProductGraph two_factor(const ProductGraph& p) {
    if (p.factors.size() == 2)
        return p;
    if (p.factors.size() < 2)
        throw unsupported_instance(
            "constructive modes need a product of at least two factors");
    std::vector<Graph> lead(p.factors.begin(), p.factors.end() - 1);
    Graph g = product_of(std::move(lead)).graph;
    return product_of({std::move(g), p.factors.back()});
}

struct GenOpts {
    std::string kind;
    std::vector<int> sizes;
    std::string out_file;
};

int cmd_gen(const GenOpts& o, std::ostream& out) {
    const std::string& k = o.kind;
    if (k == "hypercube" || k == "torus" || k == "grid") {
        FamilySpec spec{k, o.sizes};
        ProductGraph p = build_family(spec);
        write_output(o.out_file, product_to_json(p, &spec), out);
        return 0;
    }
    Graph g;
    if (k == "path")
        g = make_path(require_one_size(o.sizes, k));
    else if (k == "cycle")
        g = make_cycle(require_one_size(o.sizes, k));
    else if (k == "complete")
        g = make_complete(require_one_size(o.sizes, k));
    else if (k == "sharpness") {
        if (o.sizes.size() != 2)
            throw std::invalid_argument("sharpness takes two arguments: n k");
        g = make_sharpness_graph(o.sizes[0], o.sizes[1]);
    } else {
        throw std::invalid_argument("unknown kind: " + k);
    }
    write_output(o.out_file, graph_to_json(g), out);
    return 0;
}

struct ProductOpts {
    std::vector<std::string> files;
    std::string format = "json";
    std::string out_file;
};

int cmd_product(const ProductOpts& o, std::istream& in, std::ostream& out) {
    std::vector<Graph> factors;
    for (const std::string& file : o.files) {
        if (o.format == "edgelist") {
            factors.push_back(graph_from_edgelist(read_input(file, in)));
        } else {
            ProductGraph p = product_from_json(read_input(file, in));
            for (Graph& f : p.factors)
                factors.push_back(std::move(f));
        }
    }
    ProductGraph p = product_of(std::move(factors));
    write_output(o.out_file, product_to_json(p), out);
    return 0;
}

struct SolveOpts {
    std::string file;
    std::string mode = "auto";
    bool assume_linked = false;
    bool fallback = false;
    long long budget = -1;
    std::string out_file;
};

int cmd_solve(const SolveOpts& o, std::istream& in, std::ostream& out,
              std::ostream& err) {
    Instance inst = instance_from_json(read_input(o.file, in));
    std::string mode = o.mode;
    if (mode == "auto")
        mode = inst.a > 0 && inst.b > 0 ? "strong" : "lemma1";

    if (mode == "oracle") {
        long long budget = o.budget >= 0 ? o.budget : default_search_budget();
        auto sys = solve_config(inst.product.graph, inst.pairs, budget);
        if (!sys) {
            err << "not linkable: exhaustive search found no disjoint "
                   "path system for this configuration\n";
            return 3;
        }
        write_output(o.out_file,
                     certificate_to_json({*sys, {"oracle:exhaustive"}}), out);
        return 0;
    }

    SolverParams params;
    params.assume_linked = o.assume_linked;
    params.fallback = o.fallback;
    params.budget = o.budget;
    ProductGraph p = two_factor(inst.product);
    SolveResult r;
    if (mode == "lemma1") {
        r = link_connected_factor(p, inst.pairs, params);
    } else if (mode == "strong") {
        if (inst.a <= 0 || inst.b <= 0)
            throw std::invalid_argument(
                "strong mode needs \"a\" and \"b\" instance fields");
        r = solve_product_linkage(p, inst.pairs, inst.a, inst.b, params);
    } else {
        r = solve_k_plus_1(p, inst.pairs,
                           static_cast<int>(inst.pairs.size()) - 1, params);
    }
    write_output(o.out_file, certificate_to_json({r.system, r.trace}), out);
    return 0;
}

struct VerifyOpts {
    std::string graph_file;
    std::string cert_file;
    std::string pairs_file;
    std::string format = "json";
};

int cmd_verify(const VerifyOpts& o, std::istream& in, std::ostream& out,
               std::ostream& err) {
    Graph g = load_graph(o.graph_file, o.format, in);
    Certificate cert = certificate_from_json(read_input(o.cert_file, in));
    auto pairs = pairs_from_json(read_input(o.pairs_file, in));
    ValidationResult v = validate_path_system(g, pairs, cert.system.paths);
    if (!v.ok) {
        err << "invalid: " << v.reason << "\n";
        return 3;
    }
    out << "valid: " << pairs.size() << " disjoint paths\n";
    return 0;
}

struct LinkNumberOpts {
    std::string file;
    bool symmetry = false;
    int threads = 1;
    long long budget = -1;
    std::string format = "json";
};

int cmd_link_number(const LinkNumberOpts& o, std::istream& in,
                    std::ostream& out, std::ostream& err) {
    std::string text = read_input(o.file, in);
    Graph g = o.format == "edgelist" ? graph_from_edgelist(text)
                                     : graph_from_json(text);
    OracleOptions opts;
    opts.budget = o.budget;
    opts.threads = o.threads;
    std::vector<Permutation> perms;
    if (o.symmetry && o.format != "edgelist") {
        if (auto spec = family_tag_from_json(text))
            perms = family_automorphisms(*spec);
        if (perms.empty())
            err << "note: no symmetry group available for this input; "
                   "searching without\n";
        else
            opts.symmetry = &perms;
    }
    out << link_number(g, opts) << "\n";
    return 0;
}

struct ConnOpts {
    std::string file;
    std::string product_file;
    std::string format = "json";
};

int cmd_conn(const ConnOpts& o, std::istream& in, std::ostream& out) {
    Graph g = load_graph(o.file, o.format, in);
    if (o.product_file.empty()) {
        out << vertex_connectivity(g) << "\n";
        return 0;
    }
    Graph h = load_graph(o.product_file, o.format, in);
    out << "kappa(G) = " << vertex_connectivity(g) << "\n"
        << "kappa(H) = " << vertex_connectivity(h) << "\n"
        << "kappa(G x H) = " << spacapan_connectivity(g, h) << "\n";
    return 0;
}

struct ReproOpts {
    int max_vertices = 16;
    bool long_run = false;
    int threads = 1;
};

int cmd_repro(const ReproOpts& o, std::ostream& out) {
    int maxv = o.max_vertices;
    if (o.long_run && maxv < 32)
        maxv = 32;
    auto rows = reproduce_families(maxv, o.long_run, o.threads);
    out << std::left << std::setw(12) << "family" << std::setw(10)
        << "vertices" << std::setw(10) << "expected" << std::setw(9) << "mode"
        << std::setw(10) << "computed" << std::setw(9) << "checked"
        << std::setw(9) << "seconds" << "status\n";
    bool all_ok = true;
    bool only_undecided = true;
    for (const ReproRow& r : rows) {
        out << std::left << std::setw(12) << r.name << std::setw(10)
            << r.vertices << std::setw(10) << r.expected << std::setw(9)
            << r.mode << std::setw(10)
            << (r.computed >= 0 ? std::to_string(r.computed) : "-")
            << std::setw(9) << r.configs_checked << std::setw(9) << std::fixed
            << std::setprecision(2) << r.seconds
            << (r.ok ? "ok" : "FAIL " + r.detail) << "\n";
        if (!r.ok) {
            all_ok = false;
            if (r.detail.rfind("undecided", 0) != 0)
                only_undecided = false;
        }
    }
    out << rows.size() << " rows\n";
    if (all_ok)
        return 0;
    return only_undecided ? 4 : 3;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
    CLI::App app{"Disjoint path systems in Cartesian product graphs"};
    app.name("linklab");
    app.require_subcommand(1);
    std::function<int()> action;

    GenOpts gen;
    auto* sub_gen = app.add_subcommand(
        "gen", "Generate a graph: hypercube N | torus S... | grid S... | "
               "path M | cycle M | complete N | sharpness N K");
    sub_gen->add_option("kind", gen.kind, "family or graph kind")->required();
    sub_gen->add_option("sizes", gen.sizes, "integer size arguments")
        ->required()
        ->expected(-1);
    sub_gen->add_option("-o,--out", gen.out_file, "output file (default stdout)");
    sub_gen->callback([&] { action = [&] { return cmd_gen(gen, out); }; });

    ProductOpts prod;
    auto* sub_prod = app.add_subcommand(
        "product", "Cartesian product of the given graph files");
    sub_prod->add_option("files", prod.files, "graph or product files")
        ->required()
        ->expected(-2);
    sub_prod->add_option("--format", prod.format, "input format")
        ->check(CLI::IsMember({"json", "edgelist"}));
    sub_prod->add_option("-o,--out", prod.out_file, "output file");
    sub_prod->callback(
        [&] { action = [&] { return cmd_product(prod, in, out); }; });

    SolveOpts solve;
    auto* sub_solve = app.add_subcommand(
        "solve", "Find disjoint paths for the pairs of an instance file");
    sub_solve->add_option("instance", solve.file, "instance JSON file")
        ->required();
    sub_solve
        ->add_option("--mode", solve.mode,
                     "auto picks strong when a and b are present, else lemma1")
        ->check(CLI::IsMember({"auto", "lemma1", "strong", "kplus1", "oracle"}));
    sub_solve->add_flag("--assume-linked", solve.assume_linked,
                        "skip the oracle check of factor linkedness");
    sub_solve->add_flag("--fallback", solve.fallback,
                        "fall back to exhaustive search when a best-effort "
                        "branch runs out of options");
    sub_solve->add_option("--budget", solve.budget,
                          "search budget (overrides LINKLAB_BUDGET)");
    sub_solve->add_option("-o,--out", solve.out_file, "certificate file");
    sub_solve->callback(
        [&] { action = [&] { return cmd_solve(solve, in, out, err); }; });

    VerifyOpts verify;
    auto* sub_verify = app.add_subcommand(
        "verify", "Check a certificate against a graph and its pairs "
                  "(graph and pairs may both name an instance file)");
    sub_verify->add_option("graph", verify.graph_file, "graph, product or "
                                                       "instance file")
        ->required();
    sub_verify->add_option("cert", verify.cert_file, "certificate file")
        ->required();
    sub_verify->add_option("pairs", verify.pairs_file, "pairs or instance file")
        ->required();
    sub_verify->add_option("--format", verify.format, "graph input format")
        ->check(CLI::IsMember({"json", "edgelist"}));
    sub_verify->callback(
        [&] { action = [&] { return cmd_verify(verify, in, out, err); }; });

    LinkNumberOpts link;
    auto* sub_link = app.add_subcommand(
        "link-number", "Exact linkedness of a graph by exhaustive search");
    sub_link->add_option("graph", link.file, "graph or product file")
        ->required();
    sub_link->add_flag("--symmetry", link.symmetry,
                       "reduce configurations by the family's automorphisms "
                       "(needs a generated file with a family tag)");
    sub_link->add_option("--threads", link.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    sub_link->add_option("--budget", link.budget,
                         "search budget (overrides LINKLAB_BUDGET)");
    sub_link->add_option("--format", link.format, "input format")
        ->check(CLI::IsMember({"json", "edgelist"}));
    sub_link->callback(
        [&] { action = [&] { return cmd_link_number(link, in, out, err); }; });

    ConnOpts conn;
    auto* sub_conn = app.add_subcommand(
        "conn", "Vertex connectivity; with --product, the product formula");
    sub_conn->add_option("graph", conn.file, "graph or product file")
        ->required();
    sub_conn->add_option("--product", conn.product_file,
                         "second factor: report kappa(G x H) as well");
    sub_conn->add_option("--format", conn.format, "input format")
        ->check(CLI::IsMember({"json", "edgelist"}));
    sub_conn->callback([&] { action = [&] { return cmd_conn(conn, in, out); }; });

    ReproOpts repro;
    auto* sub_repro = app.add_subcommand(
        "repro", "Recompute the link numbers of the curated family table");
    sub_repro->add_option("--max-vertices", repro.max_vertices,
                          "skip families larger than this")
        ->check(CLI::PositiveNumber);
    sub_repro->add_flag("--long", repro.long_run,
                        "include the five-dimensional hypercube (slow)");
    sub_repro->add_option("--threads", repro.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    sub_repro->callback([&] { action = [&] { return cmd_repro(repro, out); }; });

    try {
        std::vector<const char*> argv;
        argv.push_back("linklab");
        for (const std::string& a : args)
            argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 64;
    }

    try {
        return action ? action() : 64;
    } catch (const unsupported_instance& e) {
        err << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const budget_exhausted& e) {
        err << "undecided: " << e.what() << "\n";
        return 4;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 70;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 70;
    }
}

} // namespace linklab

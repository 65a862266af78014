// mdgraph: modular-decomposition toolkit CLI.
//
// Subcommands: decompose, generate, sample, metrics, experiment, check.
// Seeds resolve as --seed flag > MDGRAPH_SEED env var > config/default (0).
// Exit codes: 0 success, 1 usage or runtime error, 2 failed check verdict.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdg/experiments.hpp"
#include "mdg/generator.hpp"
#include "mdg/graph.hpp"
#include "mdg/graph_io.hpp"
#include "mdg/md_tree.hpp"
#include "mdg/rng.hpp"
#include "mdg/samplers.hpp"
#include "mdg/theory_checks.hpp"

namespace {

std::uint64_t env_or_default_seed(std::uint64_t fallback) {
    if (const char* env = std::getenv("MDGRAPH_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error("MDGRAPH_SEED is not a valid unsigned integer");
        }
    }
    return fallback;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string stats_to_text(const mdg::Graph& g, const mdg::MDStats& st) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "n=%d edges=%zu\n"
                  "internal nodes: %d (prime %d, series %d, parallel %d)\n"
                  "densities: prime %.4g, series %.4g, parallel %.4g\n"
                  "levels: %d internal (%d counting the leaf layer)\n"
                  "largest prime (children): %d\n",
                  g.vertex_count(), g.edge_count(), st.internal_nodes, st.n_prime, st.n_series,
                  st.n_parallel, st.density_prime, st.density_series, st.density_parallel,
                  st.levels, st.levels_with_leaves, st.largest_prime);
    return buf;
}

std::string metrics_to_text(const mdg::Graph& g, const mdg::MetricsReport& mr) {
    std::ostringstream out;
    out << "n: " << g.vertex_count() << "\n"
        << "edges: " << g.edge_count() << "\n"
        << "density: " << mr.edge_density << "\n"
        << "connected: " << (mr.connected ? "yes" : "no") << "\n"
        << "diameter" << (mr.connected ? "" : " (largest component)") << ": " << mr.diameter
        << "\n"
        << "largest_component: " << mr.largest_component << "\n"
        << "avg_distance: " << mr.avg_distance << "\n"
        << "global_clustering: ";
    if (mr.global_clustering)
        out << *mr.global_clustering;
    else
        out << "undefined";
    out << "\nlocal_clustering: " << mr.mean_local_clustering << "\n";
    return out.str();
}

std::string metrics_to_json(const mdg::Graph& g, const mdg::MetricsReport& mr) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["density"] = mr.edge_density;
    j["connected"] = mr.connected;
    j["diameter"] = mr.diameter;
    j["largest_component"] = mr.largest_component;
    j["avg_distance"] = mr.avg_distance;
    if (mr.global_clustering)
        j["global_clustering"] = *mr.global_clustering;
    else
        j["global_clustering"] = nullptr;
    j["local_clustering"] = mr.mean_local_clustering;
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [degree, count] : mr.degree_histogram) hist.push_back({degree, count});
    j["degree_histogram"] = hist;
    return j.dump(2);
}

struct DecomposeArgs {
    std::string in, out, dot, quotient_dot;
    bool one_based = false, drop_loops = false;
};

int run_decompose(const DecomposeArgs& args) {
    const mdg::Graph g = mdg::load_edge_list(args.in, {args.one_based, args.drop_loops});
    const mdg::MDTree tree = mdg::modular_decomposition(g);
    const mdg::MDStats st = mdg::md_stats(tree);
    const std::string json = mdg::tree_to_json(tree);
    if (args.out.empty())
        std::cout << json << "\n";
    else
        write_file(args.out, json + "\n");
    if (!args.dot.empty()) write_file(args.dot, mdg::tree_to_dot(tree));
    if (!args.quotient_dot.empty()) {
        // largest prime node's outer graph, if any
        const mdg::MDNode* best = nullptr;
        for (const mdg::MDNode& node : tree.nodes)
            if (node.kind == mdg::NodeKind::Prime &&
                (!best || node.children.size() > best->children.size()))
                best = &node;
        if (!best) throw std::runtime_error("no prime node; nothing to write for --quotient-dot");
        write_file(args.quotient_dot, mdg::graph_to_dot(best->quotient, "largest_prime"));
    }
    std::cerr << stats_to_text(g, st);
    return 0;
}

struct GenerateArgs {
    std::string config_path, out_dir, prefix = "sample";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int count = 1;
};

int run_generate(const GenerateArgs& args) {
    const mdg::GeneratorConfig config = mdg::config_from_json(read_file(args.config_path));
    const std::uint64_t seed =
        args.seed_given ? args.seed : env_or_default_seed(config.seed);
    std::filesystem::create_directories(args.out_dir);
    for (int i = 0; i < args.count; ++i) {
        mdg::Rng rng(mdg::derive_seed(seed, i));
        const mdg::GeneratedSample sample = mdg::generate(config, rng);
        const std::string base =
            (std::filesystem::path(args.out_dir) / (args.prefix + "_" + std::to_string(i)))
                .string();
        write_file(base + ".graph.json", mdg::graph_to_json(sample.graph) + "\n");
        write_file(base + ".tree.json", mdg::tree_to_json(sample.tree) + "\n");
        write_file(base + ".edges", mdg::to_edge_list(sample.graph));
    }
    std::cout << "wrote " << args.count << " sample(s) to " << args.out_dir << " (seed " << seed
              << ")\n";
    return 0;
}

struct SampleArgs {
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int count = 1;
    int n = 50, m = 1;
    double p = 0.5;
};

int run_sample(const std::string& family, const SampleArgs& args) {
    const std::uint64_t seed = args.seed_given ? args.seed : env_or_default_seed(0);
    if (!args.out_dir.empty()) std::filesystem::create_directories(args.out_dir);
    for (int i = 0; i < args.count; ++i) {
        mdg::Rng rng(mdg::derive_seed(seed, i));
        mdg::Graph g;
        if (family == "er")
            g = mdg::er_graph(args.n, args.p, rng);
        else if (family == "ba")
            g = mdg::ba_graph(args.n, args.m, rng);
        else
            g = mdg::sample_prime_uniform(args.m, rng);
        const std::string text = mdg::to_edge_list(g);
        if (args.out_dir.empty()) {
            std::cout << "# " << family << " sample " << i << "\n" << text;
        } else {
            const std::string path =
                (std::filesystem::path(args.out_dir) /
                 (family + "_" + std::to_string(i) + ".edges"))
                    .string();
            write_file(path, text);
        }
    }
    if (!args.out_dir.empty())
        std::cout << "wrote " << args.count << " sample(s) to " << args.out_dir << " (seed "
                  << seed << ")\n";
    return 0;
}

struct MetricsArgs {
    std::string in;
    bool one_based = false, drop_loops = false, json = false;
};

int run_metrics(const MetricsArgs& args) {
    const mdg::Graph g = mdg::load_edge_list(args.in, {args.one_based, args.drop_loops});
    const mdg::MetricsReport mr = mdg::metrics(g);
    std::cout << (args.json ? metrics_to_json(g, mr) + "\n" : metrics_to_text(g, mr));
    return 0;
}

struct ExperimentArgs {
    std::string kind = "er-sweep", label, config_path, in, out_dir;
    std::vector<double> p_values;
    int n = 50, edges_per_step = 1, replicates = 50;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool one_based = false, drop_loops = false;
};

int run_experiment_cmd(const ExperimentArgs& args) {
    mdg::ExperimentSpec spec;
    spec.kind = mdg::experiment_kind_from_string(args.kind);
    spec.label = args.label;
    spec.n = args.n;
    if (!args.p_values.empty()) spec.p_values = args.p_values;
    spec.edges_per_step = args.edges_per_step;
    if (!args.config_path.empty())
        spec.config = mdg::config_from_json(read_file(args.config_path));
    spec.input_path = args.in;
    spec.one_based = args.one_based;
    spec.drop_loops = args.drop_loops;
    spec.replicates = args.replicates;
    spec.seed = args.seed_given ? args.seed : env_or_default_seed(0);
    spec.out_dir = args.out_dir;
    const mdg::ExperimentResult result = mdg::run_experiment(spec);
    for (const mdg::CaseResult& cr : result.cases) std::cout << mdg::summary_to_text(cr);
    if (!spec.out_dir.empty())
        std::cout << "CSV artifacts written to " << spec.out_dir << "\n";
    return 0;
}

struct CheckArgs {
    bool all = false;
    std::string claim, config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int samples = 200, trials = 10000, n = 1000, k = 10;
    bool json = false;
};

int run_check(const CheckArgs& args) {
    if (!args.all && args.claim.empty())
        throw std::runtime_error("check: pass --all or --claim <id>");
    const std::uint64_t seed = args.seed_given ? args.seed : env_or_default_seed(0);
    const mdg::GeneratorConfig config = args.config_path.empty()
                                            ? mdg::reference_config(0.08, 100)
                                            : mdg::config_from_json(read_file(args.config_path));
    std::vector<std::string> claims;
    if (args.all)
        claims = {"polya-moments", "diameter-bound", "degree-bounds"};
    else
        claims = {args.claim};

    std::vector<mdg::CheckReport> reports;
    for (const std::string& claim : claims) {
        if (claim == "polya-moments")
            reports.push_back(mdg::check_polya_moments(args.n, args.k, args.trials, seed));
        else if (claim == "diameter-bound")
            reports.push_back(mdg::check_diameter_bound(config, args.samples, seed));
        else if (claim == "degree-bounds")
            reports.push_back(mdg::check_degree_bounds(config, args.samples, seed));
        else
            throw std::runtime_error("unknown claim: " + claim +
                                     " (known: polya-moments, diameter-bound, degree-bounds)");
    }

    bool all_pass = true;
    if (args.json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const mdg::CheckReport& report : reports) {
            arr.push_back(nlohmann::json::parse(mdg::report_to_json(report)));
            all_pass = all_pass && report.pass;
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const mdg::CheckReport& report : reports) {
            std::cout << mdg::report_to_text(report);
            all_pass = all_pass && report.pass;
        }
    }
    return all_pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular-decomposition graph toolkit"};
    app.require_subcommand(1);

    DecomposeArgs dec;
    CLI::App* decompose = app.add_subcommand("decompose", "edge list -> MD tree JSON + stats");
    decompose->add_option("--in", dec.in, "input edge list")->required();
    decompose->add_flag("--one-based", dec.one_based, "input vertex ids start at 1");
    decompose->add_flag("--drop-loops", dec.drop_loops, "discard self-loops instead of failing");
    decompose->add_option("--out", dec.out, "write tree JSON here instead of stdout");
    decompose->add_option("--dot", dec.dot, "also write the tree as DOT");
    decompose->add_option("--quotient-dot", dec.quotient_dot,
                          "also write the largest prime node's outer graph as DOT");

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "sample graphs from a generator config");
    generate->add_option("--config", gen.config_path, "generator config JSON")->required();
    CLI::Option* gen_seed = generate->add_option("--seed", gen.seed, "master seed");
    generate->add_option("--count", gen.count, "number of samples")
        ->check(CLI::PositiveNumber);
    generate->add_option("--out-dir", gen.out_dir, "output directory")->required();
    generate->add_option("--prefix", gen.prefix, "output file prefix (default: sample)");

    SampleArgs smp;
    CLI::App* sample = app.add_subcommand("sample", "baseline samplers (er | ba | prime)");
    sample->require_subcommand(1);
    CLI::App* sample_er = sample->add_subcommand("er", "Erdos-Renyi G(n, p)");
    CLI::App* sample_ba = sample->add_subcommand("ba", "Barabasi-Albert bag method");
    CLI::App* sample_prime = sample->add_subcommand("prime", "uniform prime graph on m vertices");
    sample_er->add_option("--n", smp.n, "vertices")->check(CLI::PositiveNumber);
    sample_er->add_option("--p", smp.p, "edge probability")->check(CLI::Range(0.0, 1.0));
    sample_ba->add_option("--n", smp.n, "vertices")->check(CLI::PositiveNumber);
    sample_ba->add_option("--m", smp.m, "edges per step")->check(CLI::PositiveNumber);
    sample_prime->add_option("--m", smp.m, "vertices (>= 4)")->check(CLI::Range(4, 64));
    std::vector<CLI::Option*> smp_seeds;
    for (CLI::App* sub : {sample_er, sample_ba, sample_prime}) {
        smp_seeds.push_back(sub->add_option("--seed", smp.seed, "master seed"));
        sub->add_option("--count", smp.count, "number of samples")->check(CLI::PositiveNumber);
        sub->add_option("--out-dir", smp.out_dir, "write .edges files here (default: stdout)");
    }

    MetricsArgs met;
    CLI::App* metrics_cmd = app.add_subcommand("metrics", "adjacency metrics of an edge list");
    metrics_cmd->add_option("--in", met.in, "input edge list")->required();
    metrics_cmd->add_flag("--one-based", met.one_based, "input vertex ids start at 1");
    metrics_cmd->add_flag("--drop-loops", met.drop_loops, "discard self-loops");
    metrics_cmd->add_flag("--json", met.json, "emit JSON instead of text");

    ExperimentArgs exp;
    CLI::App* experiment = app.add_subcommand("experiment", "replicated sampling + CSV tables");
    experiment->add_option("--kind", exp.kind,
                           "er-sweep | ba | md-generator | real-graph (default: er-sweep)");
    experiment->add_option("--label", exp.label, "case-name prefix");
    experiment->add_option("--n", exp.n, "vertices (er-sweep, ba)");
    experiment->add_option("--p", exp.p_values, "edge probability (repeatable; er-sweep)");
    experiment->add_option("--edges-per-step", exp.edges_per_step, "ba growth parameter");
    experiment->add_option("--config", exp.config_path, "generator config (md-generator)");
    experiment->add_option("--in", exp.in, "edge list (real-graph)");
    experiment->add_flag("--one-based", exp.one_based, "input vertex ids start at 1");
    experiment->add_flag("--drop-loops", exp.drop_loops, "discard self-loops");
    experiment->add_option("--replicates", exp.replicates, "replicates per case (default 50)")
        ->check(CLI::PositiveNumber);
    CLI::Option* exp_seed = experiment->add_option("--seed", exp.seed, "master seed");
    experiment->add_option("--out-dir", exp.out_dir, "CSV output directory");

    CheckArgs chk;
    CLI::App* check = app.add_subcommand("check", "Monte-Carlo claim verification reports");
    check->add_flag("--all", chk.all, "run every claim");
    check->add_option("--claim", chk.claim,
                      "polya-moments | diameter-bound | degree-bounds");
    CLI::Option* chk_seed = check->add_option("--seed", chk.seed, "master seed");
    check->add_option("--samples", chk.samples, "samples for the bound checks (default 200)")
        ->check(CLI::PositiveNumber);
    check->add_option("--trials", chk.trials, "trials for polya-moments (default 10000)")
        ->check(CLI::PositiveNumber);
    check->add_option("--n", chk.n, "urn vertices for polya-moments (default 1000)");
    check->add_option("--k", chk.k, "urn children for polya-moments (default 10)");
    check->add_option("--config", chk.config_path,
                      "generator config for the bound checks (default: bundled scheme, "
                      "alpha=0.08, n=100)");
    check->add_flag("--json", chk.json, "emit a JSON report array");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*decompose) return run_decompose(dec);
        if (*generate) {
            gen.seed_given = gen_seed->count() > 0;
            return run_generate(gen);
        }
        if (*sample) {
            for (CLI::Option* opt : smp_seeds) smp.seed_given |= opt->count() > 0;
            const std::string family = sample->get_subcommands().front()->get_name();
            return run_sample(family, smp);
        }
        if (*metrics_cmd) return run_metrics(met);
        if (*experiment) {
            exp.seed_given = exp_seed->count() > 0;
            return run_experiment_cmd(exp);
        }
        if (*check) {
            chk.seed_given = chk_seed->count() > 0;
            return run_check(chk);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

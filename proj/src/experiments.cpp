#include "mdg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "mdg/graph_io.hpp"
#include "mdg/rng.hpp"
#include "mdg/samplers.hpp"

namespace mdg {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::string fmt_param(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

ReplicateRow make_row(int replicate, std::uint64_t seed, const Graph& g, const MDTree& tree) {
    ReplicateRow row;
    row.replicate = replicate;
    row.seed = seed;
    row.n = g.vertex_count();
    row.edges = static_cast<long long>(g.edge_count());

    const MetricsReport mr = metrics(g);
    row.density = mr.edge_density;
    row.connected = mr.connected;
    row.diameter = mr.diameter;
    row.avg_distance = mr.avg_distance;
    row.global_clustering_defined = mr.global_clustering.has_value();
    row.global_clustering = mr.global_clustering.value_or(0.0);
    row.local_clustering = mr.mean_local_clustering;

    const MDStats st = md_stats(tree);
    row.n_prime = st.n_prime;
    row.n_series = st.n_series;
    row.n_parallel = st.n_parallel;
    row.density_prime = st.density_prime;
    row.density_series = st.density_series;
    row.density_parallel = st.density_parallel;
    row.levels = st.levels;
    row.levels_with_leaves = st.levels_with_leaves;
    row.largest_prime = st.largest_prime;
    row.internal_nodes = st.internal_nodes;
    row.root_prime = tree.node(tree.root).kind == NodeKind::Prime;

    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.neighbors(v).empty()) ++row.isolated_vertices;
    const double denom = static_cast<double>(row.internal_nodes + row.isolated_vertices);
    row.density_parallel_incl_isolated =
        denom > 0.0 ? (row.n_parallel + row.isolated_vertices) / denom : 0.0;
    return row;
}

struct Column {
    const char* name;
    std::function<double(const ReplicateRow&)> get;
};

const std::vector<Column>& summary_columns() {
    static const std::vector<Column> cols = {
        {"edges", [](const ReplicateRow& r) { return static_cast<double>(r.edges); }},
        {"density", [](const ReplicateRow& r) { return r.density; }},
        {"connected", [](const ReplicateRow& r) { return r.connected ? 1.0 : 0.0; }},
        {"diameter", [](const ReplicateRow& r) { return static_cast<double>(r.diameter); }},
        {"avg_distance", [](const ReplicateRow& r) { return r.avg_distance; }},
        {"global_clustering", [](const ReplicateRow& r) { return r.global_clustering; }},
        {"local_clustering", [](const ReplicateRow& r) { return r.local_clustering; }},
        {"n_prime", [](const ReplicateRow& r) { return static_cast<double>(r.n_prime); }},
        {"n_series", [](const ReplicateRow& r) { return static_cast<double>(r.n_series); }},
        {"n_parallel", [](const ReplicateRow& r) { return static_cast<double>(r.n_parallel); }},
        {"density_prime", [](const ReplicateRow& r) { return r.density_prime; }},
        {"density_series", [](const ReplicateRow& r) { return r.density_series; }},
        {"density_parallel", [](const ReplicateRow& r) { return r.density_parallel; }},
        {"levels", [](const ReplicateRow& r) { return static_cast<double>(r.levels); }},
        {"levels_with_leaves",
         [](const ReplicateRow& r) { return static_cast<double>(r.levels_with_leaves); }},
        {"largest_prime",
         [](const ReplicateRow& r) { return static_cast<double>(r.largest_prime); }},
        {"internal_nodes",
         [](const ReplicateRow& r) { return static_cast<double>(r.internal_nodes); }},
        {"root_prime", [](const ReplicateRow& r) { return r.root_prime ? 1.0 : 0.0; }},
        {"isolated_vertices",
         [](const ReplicateRow& r) { return static_cast<double>(r.isolated_vertices); }},
        {"density_parallel_incl_isolated",
         [](const ReplicateRow& r) { return r.density_parallel_incl_isolated; }},
    };
    return cols;
}

std::string path_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

} // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::ErSweep: return "er-sweep";
        case ExperimentKind::Ba: return "ba";
        case ExperimentKind::MdGenerator: return "md-generator";
        case ExperimentKind::RealGraph: return "real-graph";
    }
    throw std::logic_error("to_string: bad ExperimentKind");
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    if (name == "er-sweep") return ExperimentKind::ErSweep;
    if (name == "ba") return ExperimentKind::Ba;
    if (name == "md-generator") return ExperimentKind::MdGenerator;
    if (name == "real-graph") return ExperimentKind::RealGraph;
    throw std::invalid_argument("unknown experiment kind: " + name);
}

void ExperimentSpec::validate() const {
    if (replicates < 1) throw std::invalid_argument("experiment spec: need replicates >= 1");
    switch (kind) {
        case ExperimentKind::ErSweep:
            if (n < 1) throw std::invalid_argument("experiment spec: need n >= 1");
            if (p_values.empty())
                throw std::invalid_argument("experiment spec: er-sweep needs p values");
            for (double p : p_values)
                if (p < 0.0 || p > 1.0)
                    throw std::invalid_argument("experiment spec: p outside [0, 1]");
            return;
        case ExperimentKind::Ba:
            if (n < 1) throw std::invalid_argument("experiment spec: need n >= 1");
            if (edges_per_step < 1)
                throw std::invalid_argument("experiment spec: need edges_per_step >= 1");
            return;
        case ExperimentKind::MdGenerator:
            if (!config)
                throw std::invalid_argument("experiment spec: md-generator needs a config");
            config->validate();
            return;
        case ExperimentKind::RealGraph:
            if (input_path.empty())
                throw std::invalid_argument("experiment spec: real-graph needs an input path");
            return;
    }
    throw std::logic_error("experiment spec: bad kind");
}

std::vector<SummaryStat> summarize(const std::vector<ReplicateRow>& rows) {
    std::vector<SummaryStat> out;
    const auto count = static_cast<double>(rows.size());
    for (const Column& col : summary_columns()) {
        SummaryStat stat;
        stat.name = col.name;
        if (!rows.empty()) {
            double sum = 0.0;
            for (const ReplicateRow& row : rows) sum += col.get(row);
            stat.mean = sum / count;
            if (rows.size() > 1) {
                double ss = 0.0;
                for (const ReplicateRow& row : rows) {
                    const double d = col.get(row) - stat.mean;
                    ss += d * d;
                }
                stat.sd = std::sqrt(ss / (count - 1.0));
            }
        }
        out.push_back(std::move(stat));
    }

    // Largest prime averaged only over replicates that contain a prime node;
    // rows without one would otherwise drag the mean toward 0.
    SummaryStat nz;
    nz.name = "largest_prime_nonzero";
    std::vector<double> values;
    for (const ReplicateRow& row : rows)
        if (row.largest_prime > 0) values.push_back(static_cast<double>(row.largest_prime));
    if (!values.empty()) {
        double sum = 0.0;
        for (double v : values) sum += v;
        nz.mean = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
            double ss = 0.0;
            for (double v : values) {
                const double d = v - nz.mean;
                ss += d * d;
            }
            nz.sd = std::sqrt(ss / (static_cast<double>(values.size()) - 1.0));
        }
    }
    out.push_back(std::move(nz));
    return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    result.spec = spec;

    struct Case {
        std::string name;
        std::map<std::string, double> params;
        // produces the replicate graph + tree for a derived seed
        std::function<std::pair<Graph, MDTree>(std::uint64_t)> draw;
    };
    std::vector<Case> cases;
    const std::string base = spec.label;

    switch (spec.kind) {
        case ExperimentKind::ErSweep:
            for (double p : spec.p_values) {
                Case c;
                c.name = (base.empty() ? "er" : base) + "_n" + std::to_string(spec.n) + "_p" +
                         fmt_param(p);
                c.params = {{"n", static_cast<double>(spec.n)}, {"p", p}};
                const int n = spec.n;
                c.draw = [n, p](std::uint64_t s) {
                    Rng rng(s);
                    Graph g = er_graph(n, p, rng);
                    return std::make_pair(g, modular_decomposition(g));
                };
                cases.push_back(std::move(c));
            }
            break;
        case ExperimentKind::Ba: {
            Case c;
            c.name = (base.empty() ? "ba" : base) + "_n" + std::to_string(spec.n) + "_m" +
                     std::to_string(spec.edges_per_step);
            c.params = {{"n", static_cast<double>(spec.n)},
                        {"edges_per_step", static_cast<double>(spec.edges_per_step)}};
            const int n = spec.n;
            const int m = spec.edges_per_step;
            c.draw = [n, m](std::uint64_t s) {
                Rng rng(s);
                Graph g = ba_graph(n, m, rng);
                return std::make_pair(g, modular_decomposition(g));
            };
            cases.push_back(std::move(c));
            break;
        }
        case ExperimentKind::MdGenerator: {
            Case c;
            c.name = (base.empty() ? "mdgen" : base) + "_n" + std::to_string(spec.config->n);
            c.params = {{"n", static_cast<double>(spec.config->n)},
                        {"gamma", spec.config->gamma}};
            const GeneratorConfig config = *spec.config;
            c.draw = [config](std::uint64_t s) {
                Rng rng(s);
                GeneratedSample sample = generate(config, rng);
                return std::make_pair(std::move(sample.graph), std::move(sample.tree));
            };
            cases.push_back(std::move(c));
            break;
        }
        case ExperimentKind::RealGraph: {
            Case c;
            c.name = base.empty() ? "real_" + path_stem(spec.input_path) : base;
            const Graph g =
                load_edge_list(spec.input_path, {spec.one_based, spec.drop_loops});
            c.params = {{"n", static_cast<double>(g.vertex_count())}};
            c.draw = [g](std::uint64_t) { return std::make_pair(g, modular_decomposition(g)); };
            cases.push_back(std::move(c));
            break;
        }
    }

    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const std::uint64_t case_seed = derive_seed(spec.seed, ci);
        CaseResult cr;
        cr.name = cases[ci].name;
        cr.params = std::move(cases[ci].params);
        cr.params["replicates"] = static_cast<double>(spec.replicates);
        std::map<int, long long> pooled_degrees;
        for (int r = 0; r < spec.replicates; ++r) {
            const std::uint64_t row_seed = derive_seed(case_seed, r);
            auto [g, tree] = cases[ci].draw(row_seed);
            cr.rows.push_back(make_row(r, row_seed, g, tree));
            for (int v = 0; v < g.vertex_count(); ++v)
                ++pooled_degrees[static_cast<int>(g.neighbors(v).size())];
        }
        cr.summary = summarize(cr.rows);
        cr.degree_histogram.assign(pooled_degrees.begin(), pooled_degrees.end());
        if (!spec.out_dir.empty()) write_case_csvs(cr, spec.out_dir);
        result.cases.push_back(std::move(cr));
    }
    return result;
}

void write_case_csvs(const CaseResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    auto open = [&](const std::string& suffix) {
        const fs::path path = dir / (result.name + suffix);
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        return out;
    };

    {
        std::ofstream out = open("_replicates.csv");
        out << "replicate,seed,n,edges,density,connected,diameter,avg_distance,"
               "global_clustering,global_clustering_defined,local_clustering,"
               "n_prime,n_series,n_parallel,density_prime,density_series,density_parallel,"
               "levels,levels_with_leaves,largest_prime,internal_nodes,root_prime,"
               "isolated_vertices,density_parallel_incl_isolated\n";
        for (const ReplicateRow& r : result.rows) {
            out << r.replicate << ',' << r.seed << ',' << r.n << ',' << r.edges << ','
                << fmt(r.density) << ',' << (r.connected ? 1 : 0) << ',' << r.diameter << ','
                << fmt(r.avg_distance) << ',' << fmt(r.global_clustering) << ','
                << (r.global_clustering_defined ? 1 : 0) << ',' << fmt(r.local_clustering)
                << ',' << r.n_prime << ',' << r.n_series << ',' << r.n_parallel << ','
                << fmt(r.density_prime) << ',' << fmt(r.density_series) << ','
                << fmt(r.density_parallel) << ',' << r.levels << ',' << r.levels_with_leaves
                << ',' << r.largest_prime << ',' << r.internal_nodes << ','
                << (r.root_prime ? 1 : 0) << ',' << r.isolated_vertices << ','
                << fmt(r.density_parallel_incl_isolated) << '\n';
        }
    }
    {
        std::ofstream out = open("_summary.csv");
        out << "stat,mean,sd\n";
        for (const SummaryStat& s : result.summary)
            out << s.name << ',' << fmt(s.mean) << ',' << fmt(s.sd) << '\n';
    }

    long long total = 0;
    for (const auto& [degree, count] : result.degree_histogram) total += count;
    {
        std::ofstream out = open("_degree_histogram.csv");
        out << "degree,count\n";
        for (const auto& [degree, count] : result.degree_histogram)
            out << degree << ',' << count << '\n';
    }
    {
        std::ofstream out = open("_degree_ccdf.csv");
        out << "degree,ccdf\n";
        long long at_least = total;  // histogram is sorted ascending by degree
        for (const auto& [degree, count] : result.degree_histogram) {
            out << degree << ',' << fmt(static_cast<double>(at_least) / total) << '\n';
            at_least -= count;
        }
    }
    {
        std::ofstream out = open("_degree_tail_loglog.csv");
        out << "log10_degree,log10_ccdf\n";
        long long at_least = total;
        for (const auto& [degree, count] : result.degree_histogram) {
            if (degree >= 1) {
                const double ccdf = static_cast<double>(at_least) / total;
                out << fmt(std::log10(static_cast<double>(degree))) << ','
                    << fmt(std::log10(ccdf)) << '\n';
            }
            at_least -= count;
        }
    }
}

std::string summary_to_text(const CaseResult& result) {
    std::string out = "case " + result.name + " (";
    bool first = true;
    for (const auto& [key, value] : result.params) {
        if (!first) out += ", ";
        out += key + "=" + fmt_param(value);
        first = false;
    }
    out += ")\n";
    for (const SummaryStat& s : result.summary) {
        char line[128];
        std::snprintf(line, sizeof(line), "  %-20s %.4f (%.4f)\n", s.name.c_str(), s.mean, s.sd);
        out += line;
    }
    return out;
}

GeneratorConfig reference_config(double alpha, int n) {
    GeneratorConfig config;
    config.n = n;
    config.pi0 = {0.0, 0.0, 1.0};
    config.transition.rows = {{{0.0, 0.7, 0.3}, {0.2, 0.0, 0.8}, {0.0, 0.95, 0.05}}};
    config.small_transition.rows = {{{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}};
    config.child_law = ChildCountLaw::per_type(
        ChildCountLaw::uniform_range(2, 2), ChildCountLaw::uniform_range(2, 6),
        ChildCountLaw::truncated_power_law(alpha, 6, std::max(6, n)));
    config.gamma = 1.0;
    config.prime_min_vertices = 6;
    config.prime_quotient_cap = 64;
    return config;
}

} // namespace mdg

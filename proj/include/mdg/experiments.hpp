#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdg/generator.hpp"
#include "mdg/graph.hpp"
#include "mdg/md_tree.hpp"

namespace mdg {

enum class ExperimentKind { ErSweep, Ba, MdGenerator, RealGraph };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// Batch description: which sampler to run, how many replicates, where the
/// CSV artifacts go. Output files are only written when out_dir is set.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::ErSweep;
    std::string label;  // case-name prefix; defaulted from the kind when empty

    int n = 50;                                        // er-sweep / ba vertex count
    std::vector<double> p_values = {0.01, 0.05, 0.1, 0.5};  // er-sweep
    int edges_per_step = 1;                            // ba
    std::optional<GeneratorConfig> config;             // md-generator
    std::string input_path;                            // real-graph edge list
    bool one_based = false;
    bool drop_loops = false;

    int replicates = 50;
    std::uint64_t seed = 0;
    std::string out_dir;

    void validate() const;
};

/// One replicate's full record: adjacency metrics plus decomposition shape.
struct ReplicateRow {
    int replicate = 0;
    std::uint64_t seed = 0;
    int n = 0;
    long long edges = 0;
    double density = 0.0;
    bool connected = false;
    int diameter = 0;
    double avg_distance = 0.0;
    bool global_clustering_defined = false;
    double global_clustering = 0.0;  // 0 when undefined (no connected triples)
    double local_clustering = 0.0;
    int n_prime = 0;
    int n_series = 0;
    int n_parallel = 0;
    double density_prime = 0.0;
    double density_series = 0.0;
    double density_parallel = 0.0;
    int levels = 0;
    int levels_with_leaves = 0;
    int largest_prime = 0;
    int internal_nodes = 0;
    bool root_prime = false;
    int isolated_vertices = 0;  // singleton connected components
    // Share of parallel nodes when each isolated vertex is tallied as a
    // degenerate parallel node: (n_parallel + isolated) / (internal + isolated).
    // Matches tools that assign a type to every connected component.
    double density_parallel_incl_isolated = 0.0;
};

struct SummaryStat {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;  // N-1 denominator; 0 for a single replicate
};

struct CaseResult {
    std::string name;  // e.g. "er_n50_p0.05"
    std::map<std::string, double> params;
    std::vector<ReplicateRow> rows;
    std::vector<SummaryStat> summary;
    std::vector<std::pair<int, long long>> degree_histogram;  // pooled over replicates
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<CaseResult> cases;
};

/// Per-statistic mean/sd across rows. Boolean columns summarize as fractions.
std::vector<SummaryStat> summarize(const std::vector<ReplicateRow>& rows);

/// Runs every case of the spec with derived per-case/per-replicate seeds and,
/// when out_dir is set, writes per case: <case>_replicates.csv,
/// <case>_summary.csv, <case>_degree_histogram.csv, <case>_degree_ccdf.csv
/// (ccdf(d) = fraction of pooled vertices with degree >= d) and
/// <case>_degree_tail_loglog.csv (log10 of both, positive degrees only).
/// Same spec + seed reproduces byte-identical files.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_case_csvs(const CaseResult& result, const std::string& out_dir);
std::string summary_to_text(const CaseResult& result);

/// The bundled generator scheme behind the shipped config fixtures: prime-only
/// root, heavy-tailed prime fan-out with exponent alpha (support 6..n), series
/// nodes with exactly 2 children, parallel nodes with 2..6, primes forbidden
/// below 6 vertices.
GeneratorConfig reference_config(double alpha, int n);

} // namespace mdg

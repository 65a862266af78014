#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mdg {

/// Simple undirected labeled graph on vertices 0..n-1.
///
/// Immutable after construction: the constructor validates endpoints,
/// rejects self-loops and collapses duplicate edges, so every instance is a
/// valid simple graph. Safe to share across concurrent readers.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }
    bool has_edge(int u, int v) const;

    /// Sorted neighbor list of v.
    const std::vector<int>& neighbors(int v) const;

    /// All edges as sorted (u, v) pairs with u < v.
    std::vector<std::pair<int, int>> edge_list() const;

    Graph complement() const;

    bool operator==(const Graph& other) const;
    bool operator!=(const Graph& other) const { return !(*this == other); }

  private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<int>> adj_;
};

int degree(const Graph& g, int v);

/// Number of triangles through v (adjacent neighbor pairs).
long long triangles_at(const Graph& g, int v);

/// Watts-Strogatz coefficient 2 t(v) / (dg(v) (dg(v)-1)); 0 when dg(v) < 2.
double local_clustering(const Graph& g, int v);

/// Transitivity: 3 * triangles / connected triples. Empty when the graph has
/// no connected triple.
std::optional<double> global_clustering(const Graph& g);

/// BFS hop distances from v; unreachable vertices are -1.
std::vector<int> distances_from(const Graph& g, int v);

/// Connected components, each sorted, ordered by minimum vertex.
std::vector<std::vector<int>> components(const Graph& g);

/// Connected components of the complement graph.
std::vector<std::vector<int>> co_components(const Graph& g);

/// Subgraph induced by `vertices`, relabeled 0..k-1 in the given order.
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

/// Graph-level summary used by the experiment tables.
struct MetricsReport {
    double edge_density = 0.0;
    bool connected = false;
    /// Diameter of the graph when connected, otherwise of its largest
    /// component (never silently mixed: check `connected`).
    int diameter = 0;
    int largest_component = 0;
    /// Mean shortest-path length over connected vertex pairs.
    double avg_distance = 0.0;
    std::optional<double> global_clustering;
    double mean_local_clustering = 0.0;
    std::map<int, int> degree_histogram;
};

MetricsReport metrics(const Graph& g);

} // namespace mdg

#include "mdg/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mdg {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw std::invalid_argument("Graph: edge endpoint out of range: (" +
                                        std::to_string(u) + ", " + std::to_string(v) + ")");
        if (u == v)
            throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(u));
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        edge_count_ += nbrs.size();
    }
    edge_count_ /= 2;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range [0, " +
                                std::to_string(n_) + ")");
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int target = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), target);
}

const std::vector<int>& Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::complement() const {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n_; ++u) {
        auto it = adj_[u].begin();
        for (int v = u + 1; v < n_; ++v) {
            while (it != adj_[u].end() && *it < v) ++it;
            if (it == adj_[u].end() || *it != v) edges.emplace_back(u, v);
        }
    }
    return Graph(n_, edges);
}

bool Graph::operator==(const Graph& other) const {
    return n_ == other.n_ && adj_ == other.adj_;
}

int degree(const Graph& g, int v) {
    return static_cast<int>(g.neighbors(v).size());
}

long long triangles_at(const Graph& g, int v) {
    const auto& nbrs = g.neighbors(v);
    long long count = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const auto& nu = g.neighbors(nbrs[i]);
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
            if (std::binary_search(nu.begin(), nu.end(), nbrs[j])) ++count;
    }
    return count;
}

double local_clustering(const Graph& g, int v) {
    const long long d = degree(g, v);
    if (d < 2) return 0.0;
    return 2.0 * static_cast<double>(triangles_at(g, v)) / (static_cast<double>(d) * (d - 1));
}

std::optional<double> global_clustering(const Graph& g) {
    long long closed = 0;   // adjacent neighbor pairs, summed over centers = 3 * triangles
    long long triples = 0;  // connected triples, open or closed
    for (int v = 0; v < g.vertex_count(); ++v) {
        const long long d = degree(g, v);
        triples += d * (d - 1) / 2;
        closed += triangles_at(g, v);
    }
    if (triples == 0) return std::nullopt;
    return static_cast<double>(closed) / static_cast<double>(triples);
}

std::vector<int> distances_from(const Graph& g, int v) {
    const int n = g.vertex_count();
    std::vector<int> dist(n, -1);
    dist.at(v) = 0;
    std::deque<int> queue{v};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(u)) {
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<std::vector<int>> components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::deque<int> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (int w : g.neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<std::vector<int>> co_components(const Graph& g) {
    // BFS on the complement without materializing it: the unvisited set is
    // kept sorted and each step removes the non-neighbors of the front.
    const int n = g.vertex_count();
    std::vector<int> unvisited(n);
    std::iota(unvisited.begin(), unvisited.end(), 0);
    std::vector<std::vector<int>> comps;
    while (!unvisited.empty()) {
        int s = unvisited.front();
        unvisited.erase(unvisited.begin());
        std::vector<int> comp{s};
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            const auto& nbrs = g.neighbors(u);
            std::vector<int> keep;  // stays unvisited: neighbors of u
            keep.reserve(unvisited.size());
            for (int w : unvisited) {
                if (std::binary_search(nbrs.begin(), nbrs.end(), w)) {
                    keep.push_back(w);
                } else {
                    comp.push_back(w);
                    queue.push_back(w);
                }
            }
            unvisited.swap(keep);
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    std::vector<int> index(g.vertex_count(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        int v = vertices[i];
        if (v < 0 || v >= g.vertex_count())
            throw std::out_of_range("induced_subgraph: vertex out of range");
        if (index[v] != -1)
            throw std::invalid_argument("induced_subgraph: duplicate vertex");
        index[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (int v : vertices)
        for (int w : g.neighbors(v))
            if (index[w] != -1 && index[v] < index[w]) edges.emplace_back(index[v], index[w]);
    return Graph(static_cast<int>(vertices.size()), edges);
}

MetricsReport metrics(const Graph& g) {
    MetricsReport report;
    const int n = g.vertex_count();
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    report.edge_density = pairs > 0 ? static_cast<double>(g.edge_count()) / pairs : 0.0;
    report.global_clustering = global_clustering(g);

    double local_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        local_sum += local_clustering(g, v);
        report.degree_histogram[degree(g, v)]++;
    }
    report.mean_local_clustering = n > 0 ? local_sum / n : 0.0;

    auto comps = components(g);
    report.connected = comps.size() == 1 && n > 0;
    for (const auto& c : comps)
        report.largest_component = std::max(report.largest_component, static_cast<int>(c.size()));

    // Diameter over the largest component; average distance over all
    // connected pairs (each unordered pair counted once).
    const std::vector<int>* largest = nullptr;
    for (const auto& c : comps)
        if (!largest || c.size() > largest->size()) largest = &c;
    long long dist_sum = 0, dist_pairs = 0;
    int diameter = 0;
    for (const auto& c : comps) {
        if (c.size() < 2) continue;
        for (int v : c) {
            auto dist = distances_from(g, v);
            for (int w : c) {
                if (w <= v) continue;
                dist_sum += dist[w];
                ++dist_pairs;
                if (&c == largest) diameter = std::max(diameter, dist[w]);
            }
        }
    }
    report.diameter = diameter;
    report.avg_distance = dist_pairs > 0 ? static_cast<double>(dist_sum) / dist_pairs : 0.0;
    return report;
}

} // namespace mdg

#include "mdg/samplers.hpp"

#include <algorithm>
#include <stdexcept>

#include "mdg/modules.hpp"

namespace mdg {

Graph er_graph(int n, double p, Rng& rng) {
    if (n < 0) throw std::invalid_argument("er_graph: negative n");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("er_graph: p outside [0, 1]");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

Graph ba_graph(int n, int edges_per_step, Rng& rng) {
    if (n < 2) throw std::invalid_argument("ba_graph: need n >= 2");
    if (edges_per_step < 1) throw std::invalid_argument("ba_graph: need edges_per_step >= 1");
    std::vector<int> bag{0};  // vertex 0 starts with multiplicity 1 (degree 0)
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        std::vector<int> targets;
        for (int i = 0; i < edges_per_step; ++i)
            targets.push_back(bag[rng.uniform_int(0, static_cast<int>(bag.size()) - 1)]);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        for (int t : targets) {
            edges.emplace_back(t, v);
            bag.push_back(t);
            bag.push_back(v);
        }
        bag.push_back(v);
    }
    return Graph(n, edges);
}

namespace {

// Unranks an edge bitmask over the C(m,2) pairs in (0,1),(0,2),...,(m-2,m-1)
// order into a graph.
Graph graph_from_mask(int m, unsigned long long mask) {
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v, ++bit)
            if (mask >> bit & 1ULL) edges.emplace_back(u, v);
    return Graph(m, edges);
}

void check_enumeration_range(int m) {
    if (m < 2 || m > 6)
        throw std::invalid_argument("prime enumeration supports 2 <= m <= 6, got " +
                                    std::to_string(m));
}

} // namespace

long long enumerate_primes(int m) {
    check_enumeration_range(m);
    const int pairs = m * (m - 1) / 2;
    long long count = 0;
    for (unsigned long long mask = 0; mask < (1ULL << pairs); ++mask)
        if (is_prime(graph_from_mask(m, mask))) ++count;
    return count;
}

std::vector<Graph> enumerate_prime_graphs(int m) {
    check_enumeration_range(m);
    const int pairs = m * (m - 1) / 2;
    std::vector<Graph> out;
    for (unsigned long long mask = 0; mask < (1ULL << pairs); ++mask) {
        Graph g = graph_from_mask(m, mask);
        if (is_prime(g)) out.push_back(std::move(g));
    }
    return out;
}

Graph sample_prime_uniform(int m, Rng& rng) {
    long long proposals = 0;
    return sample_prime_uniform_counted(m, rng, proposals);
}

Graph sample_prime_uniform_counted(int m, Rng& rng, long long& proposals) {
    if (m < 4)
        throw std::invalid_argument("sample_prime_uniform: no graphs with only trivial "
                                    "modules exist on m < 4 vertices");
    proposals = 0;
    while (true) {
        ++proposals;
        Graph g = er_graph(m, 0.5, rng);
        if (is_prime(g)) return g;
    }
}

} // namespace mdg

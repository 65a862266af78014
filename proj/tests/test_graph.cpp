#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "mdg/graph.hpp"
#include "mdg/graph_io.hpp"
#include "mdg/rng.hpp"
#include "mdg/samplers.hpp"

using namespace mdg;

namespace {

// Independent clustering oracle: enumerate every vertex triple directly.
struct TripleCounts {
    long long triangles = 0;
    long long connected_triples = 0;  // paths of length 2, center counted
};

TripleCounts count_triples(const Graph& g) {
    TripleCounts out;
    const int n = g.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                const int edges = (g.has_edge(a, b) ? 1 : 0) + (g.has_edge(a, c) ? 1 : 0) +
                                  (g.has_edge(b, c) ? 1 : 0);
                if (edges == 3) {
                    ++out.triangles;
                    out.connected_triples += 3;
                } else if (edges == 2) {
                    ++out.connected_triples;
                }
            }
    return out;
}

// Independent all-pairs distances (Floyd-Warshall) for cross-checking BFS.
std::vector<std::vector<int>> all_distances(const Graph& g) {
    const int n = g.vertex_count();
    const int inf = n + 1;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (const auto& [u, v] : g.edge_list()) d[u][v] = d[v][u] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, edges);
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, edges);
}

} // namespace

TEST_CASE("graph construction validates and normalizes") {
    Graph g(4, {{0, 1}, {1, 0}, {0, 1}, {2, 3}});
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 2);  // duplicates collapsed
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.neighbors(1) == std::vector<int>{0});

    CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);  // self-loop
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);  // out of range
    CHECK_THROWS_AS(Graph(3, {{-1, 2}}), std::invalid_argument);
}

TEST_CASE("edge_list is sorted and roundtrips through the constructor") {
    Rng rng(7);
    Graph g = er_graph(20, 0.3, rng);
    auto edges = g.edge_list();
    CHECK(std::is_sorted(edges.begin(), edges.end()));
    for (const auto& [u, v] : edges) CHECK(u < v);
    CHECK(Graph(20, edges) == g);
}

TEST_CASE("complement is an involution and complements adjacency") {
    Rng rng(11);
    Graph g = er_graph(15, 0.4, rng);
    Graph c = g.complement();
    CHECK(g.edge_count() + c.edge_count() == 15 * 14 / 2);
    for (int u = 0; u < 15; ++u)
        for (int v = u + 1; v < 15; ++v) CHECK(g.has_edge(u, v) != c.has_edge(u, v));
    CHECK(c.complement() == g);
}

TEST_CASE("degree and triangle counts match the triple oracle") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = er_graph(18, 0.15 + 0.08 * trial, rng);
        for (int v = 0; v < g.vertex_count(); ++v) {
            CHECK(degree(g, v) == static_cast<int>(g.neighbors(v).size()));
            long long expected = 0;
            for (int a : g.neighbors(v))
                for (int b : g.neighbors(v))
                    if (a < b && g.has_edge(a, b)) ++expected;
            CHECK(triangles_at(g, v) == expected);
        }
    }
}

TEST_CASE("clustering coefficients match the triple oracle") {
    Rng rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        Graph g = er_graph(16, 0.1 + 0.1 * trial, rng);
        const TripleCounts tc = count_triples(g);
        auto gc = global_clustering(g);
        if (tc.connected_triples == 0) {
            CHECK_FALSE(gc.has_value());
        } else {
            REQUIRE(gc.has_value());
            CHECK(*gc == doctest::Approx(3.0 * tc.triangles / tc.connected_triples));
        }
        for (int v = 0; v < g.vertex_count(); ++v) {
            const int d = degree(g, v);
            const double expected =
                d < 2 ? 0.0 : 2.0 * triangles_at(g, v) / (static_cast<double>(d) * (d - 1));
            CHECK(local_clustering(g, v) == doctest::Approx(expected));
        }
    }
}

TEST_CASE("known clustering values") {
    CHECK(global_clustering(complete_graph(4)) == doctest::Approx(1.0));
    CHECK(global_clustering(path_graph(4)) == doctest::Approx(0.0));
    CHECK_FALSE(global_clustering(Graph(5, {{0, 1}, {2, 3}})).has_value());
}

TEST_CASE("BFS distances agree with Floyd-Warshall") {
    Rng rng(13);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = er_graph(14, 0.12 + 0.1 * trial, rng);
        const auto fw = all_distances(g);
        const int inf = g.vertex_count() + 1;
        for (int v = 0; v < g.vertex_count(); ++v) {
            const auto bfs = distances_from(g, v);
            for (int u = 0; u < g.vertex_count(); ++u) {
                if (fw[v][u] >= inf)
                    CHECK(bfs[u] == -1);
                else
                    CHECK(bfs[u] == fw[v][u]);
            }
        }
    }
}

TEST_CASE("components and co_components partition the vertices") {
    Graph g(7, {{0, 1}, {1, 2}, {3, 4}});
    auto comps = components(g);
    REQUIRE(comps.size() == 4);
    CHECK(comps[0] == std::vector<int>{0, 1, 2});
    CHECK(comps[1] == std::vector<int>{3, 4});
    CHECK(comps[2] == std::vector<int>{5});
    CHECK(comps[3] == std::vector<int>{6});
    CHECK(co_components(g) == components(g.complement()));
    CHECK(components(complete_graph(5)).size() == 1);
    CHECK(co_components(complete_graph(5)).size() == 5);
}

TEST_CASE("induced subgraph relabels in the given order") {
    Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});  // 5-cycle
    Graph sub = induced_subgraph(g, {4, 0, 1});
    CHECK(sub.vertex_count() == 3);
    CHECK(sub.has_edge(0, 1));  // 4-0
    CHECK(sub.has_edge(1, 2));  // 0-1
    CHECK_FALSE(sub.has_edge(0, 2));
}

TEST_CASE("metrics report on known graphs") {
    SUBCASE("complete graph") {
        const MetricsReport mr = metrics(complete_graph(4));
        CHECK(mr.edge_density == doctest::Approx(1.0));
        CHECK(mr.connected);
        CHECK(mr.diameter == 1);
        CHECK(mr.avg_distance == doctest::Approx(1.0));
        REQUIRE(mr.global_clustering.has_value());
        CHECK(*mr.global_clustering == doctest::Approx(1.0));
        CHECK(mr.mean_local_clustering == doctest::Approx(1.0));
        CHECK(mr.degree_histogram == std::map<int, int>{{3, 4}});
    }
    SUBCASE("path on 4 vertices") {
        const MetricsReport mr = metrics(path_graph(4));
        CHECK(mr.edge_density == doctest::Approx(0.5));
        CHECK(mr.connected);
        CHECK(mr.diameter == 3);
        // distances: three 1s, two 2s, one 3 over the 6 pairs
        CHECK(mr.avg_distance == doctest::Approx((3.0 * 1 + 2.0 * 2 + 3.0) / 6));
        CHECK(*mr.global_clustering == doctest::Approx(0.0));
    }
    SUBCASE("disconnected graph reports largest component's diameter") {
        Graph g(6, {{0, 1}, {1, 2}, {2, 3}, {4, 5}});
        const MetricsReport mr = metrics(g);
        CHECK_FALSE(mr.connected);
        CHECK(mr.largest_component == 4);
        CHECK(mr.diameter == 3);
    }
    SUBCASE("empty graph") {
        const MetricsReport mr = metrics(Graph(3));
        CHECK(mr.edge_density == doctest::Approx(0.0));
        CHECK_FALSE(mr.connected);
        CHECK(mr.largest_component == 1);
        CHECK_FALSE(mr.global_clustering.has_value());
    }
}

TEST_CASE("metrics avg_distance and histogram agree with oracles") {
    Rng rng(17);
    Graph g = er_graph(15, 0.25, rng);
    const MetricsReport mr = metrics(g);
    const auto fw = all_distances(g);
    const int inf = g.vertex_count() + 1;
    double sum = 0.0;
    long long pairs = 0;
    int diam = 0;
    for (int u = 0; u < 15; ++u)
        for (int v = u + 1; v < 15; ++v)
            if (fw[u][v] < inf) {
                sum += fw[u][v];
                ++pairs;
            }
    // diameter of the largest component only
    const auto comps = components(g);
    const auto& big = *std::max_element(
        comps.begin(), comps.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (int u : big)
        for (int v : big) diam = std::max(diam, fw[u][v]);
    CHECK(mr.avg_distance == doctest::Approx(sum / static_cast<double>(pairs)));
    CHECK(mr.diameter == diam);
    std::map<int, int> hist;
    for (int v = 0; v < 15; ++v) ++hist[degree(g, v)];
    CHECK(mr.degree_histogram == hist);
}

TEST_CASE("edge list text roundtrip keeps isolated vertices") {
    Graph g(6, {{0, 2}, {4, 5}});
    const std::string text = to_edge_list(g);
    CHECK(from_edge_list(text) == g);
}

TEST_CASE("edge list parser features") {
    SUBCASE("comments, blank lines and n= header") {
        Graph g = from_edge_list("# comment\n\nn=5\n0 1\n1 2\n");
        CHECK(g.vertex_count() == 5);
        CHECK(g.edge_count() == 2);
    }
    SUBCASE("vertex count defaults to max id + 1") {
        CHECK(from_edge_list("0 3\n").vertex_count() == 4);
    }
    SUBCASE("one_based shifts ids down") {
        Graph g = from_edge_list("1 2\n2 3\n", {true, false});
        CHECK(g.vertex_count() == 3);
        CHECK(g.has_edge(0, 1));
        CHECK(g.has_edge(1, 2));
    }
    SUBCASE("self-loops fail with the offending line, or are dropped on request") {
        try {
            from_edge_list("0 1\n2 2\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
        Graph g = from_edge_list("0 1\n2 2\n", {false, true});
        CHECK(g.edge_count() == 1);
        CHECK(g.vertex_count() == 3);
    }
    SUBCASE("malformed tokens carry line numbers") {
        try {
            from_edge_list("0 1\nfoo bar\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
}

TEST_CASE("graph JSON roundtrip") {
    Rng rng(23);
    Graph g = er_graph(12, 0.3, rng);
    CHECK(graph_from_json(graph_to_json(g)) == g);
    CHECK(graph_from_json(graph_to_json(Graph(4))) == Graph(4));
    CHECK_THROWS_AS(graph_from_json("{\"n\": 2"), std::runtime_error);
    CHECK_THROWS_AS(graph_from_json("{\"edges\": []}"), std::runtime_error);
}

TEST_CASE("DOT output mentions every edge") {
    Graph g(3, {{0, 1}, {1, 2}});
    const std::string dot = graph_to_dot(g, "test");
    CHECK(dot.find("graph test") != std::string::npos);
    CHECK(dot.find("0 -- 1") != std::string::npos);
    CHECK(dot.find("1 -- 2") != std::string::npos);
}

#pragma once

#include <vector>

#include "mdg/graph.hpp"
#include "mdg/rng.hpp"

namespace mdg {

/// Erdős–Rényi G(n, p): each of the C(n,2) edges present independently with
/// probability p. Deterministic given the generator state.
Graph er_graph(int n, double p, Rng& rng);

/// Barabási–Albert preferential attachment via the "bag" method: the bag
/// holds each existing vertex with multiplicity degree + 1 (once on creation
/// plus once per incident edge); every new vertex draws `edges_per_step`
/// targets from the bag, duplicates collapsed, so the graph stays simple.
Graph ba_graph(int n, int edges_per_step, Rng& rng);

/// Exact count of labeled graphs on m vertices with only trivial modules,
/// by exhaustive enumeration of all 2^C(m,2) graphs; supported for 2 <= m <= 6.
long long enumerate_primes(int m);

/// The graphs behind enumerate_primes, in ascending edge-mask order.
std::vector<Graph> enumerate_prime_graphs(int m);

/// Uniform sample over labeled graphs on m >= 4 vertices with only trivial
/// modules, by acceptance-rejection with G(m, 1/2) proposals (uniform over
/// all labeled graphs, so accepted draws are uniform over the target set).
Graph sample_prime_uniform(int m, Rng& rng);

/// Like sample_prime_uniform, but also reports how many proposals were made;
/// 1/proposals estimates the acceptance rate.
Graph sample_prime_uniform_counted(int m, Rng& rng, long long& proposals);

} // namespace mdg

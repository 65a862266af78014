#pragma once

#include <vector>

#include "mdg/graph.hpp"

namespace mdg {

/// True iff every vertex outside `members` is adjacent to all of `members`
/// or to none of them. Singletons and the full vertex set are always modules.
bool is_module(const Graph& g, const std::vector<int>& members);

/// Smallest module of g containing `seed` (modules are closed under
/// intersection, so this is well defined). Splitter vertices — outside
/// vertices adjacent to part of the current set — are forced into any
/// enclosing module, so repeatedly absorbing them reaches the minimum.
std::vector<int> module_closure(const Graph& g, const std::vector<int>& seed);

/// Coarsest partition refining {{pivot}, V \ {pivot}} in which every block is
/// a module. Blocks are sorted internally and ordered by minimum vertex.
std::vector<std::vector<int>> modular_partition_at(const Graph& g, int pivot);

/// The maximal modular partition of a connected, co-connected graph with
/// n >= 2: the child blocks of the root of the decomposition tree. The
/// quotient by this partition has only trivial modules.
std::vector<std::vector<int>> maximal_modular_partition(const Graph& g);

/// True iff g has only trivial modules. Graphs on fewer than 4 vertices are
/// never prime under this convention (no nontrivial module can exist only
/// vacuously there, and every quotient of interest has >= 4 blocks).
bool is_prime(const Graph& g);

/// Graph on the blocks of `partition` (indexed by block position): two blocks
/// are adjacent iff every cross pair is an edge. Every block must be a module
/// and the blocks must partition the vertex set; throws std::invalid_argument
/// otherwise.
Graph quotient(const Graph& g, const std::vector<std::vector<int>>& partition);

/// Substitutes inner[i] for vertex i of `outer`: disjoint union of the inner
/// graphs plus all cross edges between inner[i] and inner[j] for each outer
/// edge {i, j}. Vertices are relabeled block-contiguously in ascending block
/// order. Requires |inner| == outer.vertex_count().
Graph compose(const std::vector<Graph>& inner, const Graph& outer);

} // namespace mdg

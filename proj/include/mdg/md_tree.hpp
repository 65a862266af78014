#pragma once

#include <string>
#include <vector>

#include "mdg/graph.hpp"

namespace mdg {

enum class NodeKind { Leaf, Series, Parallel, Prime };

std::string to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& text);

struct MDNode {
    NodeKind kind = NodeKind::Leaf;
    int vertex = -1;            ///< leaf only: the graph vertex it represents
    std::vector<int> children;  ///< node ids; empty for leaves
    std::vector<int> vertices;  ///< sorted vertex set of the subtree
    Graph quotient;             ///< Prime only: graph on children, indexed by child position
};

/// Rooted decomposition tree. Every internal node has >= 2 children whose
/// vertex sets partition its own; Prime nodes have >= 4 children and carry a
/// quotient with only trivial modules; Series/Parallel nodes never have a
/// child of their own kind. Canonical form orders children by minimum
/// contained vertex, with Prime quotients permuted to match.
struct MDTree {
    std::vector<MDNode> nodes;
    int root = -1;

    const MDNode& node(int id) const { return nodes.at(static_cast<std::size_t>(id)); }
    int vertex_count() const {
        return root < 0 ? 0 : static_cast<int>(node(root).vertices.size());
    }

    /// Structural equality from the roots (node storage order is irrelevant).
    bool operator==(const MDTree& other) const;
    bool operator!=(const MDTree& other) const { return !(*this == other); }
};

/// Checks all MDTree invariants, including quotient primality, and that the
/// leaves carry exactly the vertices 0..n-1. Throws std::invalid_argument on
/// the first violation.
void validate_tree(const MDTree& tree);

/// Sorts every node's children by minimum contained vertex and permutes Prime
/// quotients accordingly.
void canonicalize(MDTree& tree);

struct MDStats {
    int n_prime = 0;
    int n_series = 0;
    int n_parallel = 0;
    double density_prime = 0.0;    ///< share of internal nodes, 0 if none
    double density_series = 0.0;
    double density_parallel = 0.0;
    int levels = 0;                ///< internal levels, root at level 1; 0 for a lone leaf
    int levels_with_leaves = 0;    ///< depth when the leaf layer also counts (= levels + 1)
    int largest_prime = 0;         ///< max child count over Prime nodes, 0 if none
    int internal_nodes = 0;
    int leaves = 0;
};

MDStats md_stats(const MDTree& tree);

/// Rebuilds the unique graph whose decomposition is `tree`: recursively
/// substitutes each child's graph into the node's outer graph (complete for
/// Series, edgeless for Parallel, the quotient for Prime). Validates first.
Graph expand(const MDTree& tree);

/// Same graph assembled by the block-matrix route: the adjacency matrix is
/// built from the children's matrices as diagonal blocks plus constant
/// off-diagonal blocks given by the outer graph. Kept separate from expand()
/// as an independent construction.
Graph block_adjacency(const MDTree& tree);

/// Unique Gallai decomposition of g (n >= 1), in canonical form:
/// disconnected graphs get a Parallel root over the components, graphs with
/// disconnected complement a Series root over the co-components, and the
/// remaining case a Prime root over the maximal modular partition.
MDTree modular_decomposition(const Graph& g);

/// JSON document {kind, vertex} for leaves, {kind, children[, quotient]} for
/// internal nodes; quotient uses the graph JSON schema. Lossless and
/// canonical-order preserving.
std::string tree_to_json(const MDTree& tree);
MDTree tree_from_json(const std::string& text);

/// Graphviz rendering of the tree; internal nodes are labeled by kind, leaves
/// by vertex id.
std::string tree_to_dot(const MDTree& tree, const std::string& name = "md");

} // namespace mdg

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mdg/graph.hpp"
#include "mdg/md_tree.hpp"
#include "mdg/rng.hpp"

namespace mdg {

/// Internal-node type; also the row/column order of TransitionMatrix and the
/// field order of TypeDistribution.
enum class NodeType { Series = 0, Parallel = 1, Prime = 2 };

NodeKind to_kind(NodeType type);
std::string to_string(NodeType type);

struct TypeDistribution {
    double series = 0.0;
    double parallel = 0.0;
    double prime = 0.0;

    double operator[](NodeType t) const;
    /// Entries in [0,1] summing to 1 within 1e-12; throws std::invalid_argument.
    void validate() const;
};

struct TransitionMatrix {
    /// rows[from][to] with indices ordered (series, parallel, prime).
    std::array<std::array<double, 3>, 3> rows{};

    const std::array<double, 3>& row(NodeType from) const {
        return rows[static_cast<std::size_t>(from)];
    }
    /// Row-stochastic with zero series->series and parallel->parallel entries;
    /// with forbid_prime, additionally zero mass on prime in every row.
    void validate(bool forbid_prime = false) const;
};

/// Distribution of the number of children of an internal node. Laws are
/// renormalized onto the feasible range at sampling time, so k_max may exceed
/// the vertices actually available.
struct ChildCountLaw {
    enum class Kind { TruncatedPoisson, UniformRange, TruncatedPowerLaw, PerType };

    Kind kind = Kind::UniformRange;
    double lambda = 0.0;  ///< TruncatedPoisson: rate; support starts at 2
    double alpha = 0.0;   ///< TruncatedPowerLaw: P(K=k) proportional to k^-alpha
    int k_min = 2;        ///< UniformRange / TruncatedPowerLaw lower end
    int k_max = 2;        ///< UniformRange / TruncatedPowerLaw upper end
    std::shared_ptr<ChildCountLaw> series, parallel, prime;  ///< PerType only

    static ChildCountLaw truncated_poisson(double lambda);
    static ChildCountLaw uniform_range(int k_min, int k_max);
    static ChildCountLaw truncated_power_law(double alpha, int k_min, int k_max);
    static ChildCountLaw per_type(ChildCountLaw series_law, ChildCountLaw parallel_law,
                                  ChildCountLaw prime_law);

    /// The law governing nodes of `type` (descends into PerType).
    const ChildCountLaw& for_type(NodeType type) const;
    void validate() const;
};

struct GeneratorConfig {
    int n = 1;                      ///< total vertices
    TypeDistribution pi0;           ///< root type distribution
    TransitionMatrix transition;    ///< parent type -> child type
    TransitionMatrix small_transition;  ///< used when a node has < prime_min_vertices vertices
    ChildCountLaw child_law;
    double gamma = 1.0;             ///< urn reinforcement exponent, >= 1
    int prime_min_vertices = 4;     ///< below this vertex count Prime is forbidden
    int prime_quotient_cap = 64;    ///< Prime child counts are truncated here
    bool force_connected = false;   ///< zero the Parallel mass of pi0 at the root
    double prime_level_decay = 1.0; ///< per-level multiplier on Prime mass (1 = off)
    std::uint64_t seed = 0;         ///< default seed used by the CLI

    void validate() const;
};

std::string config_to_json(const GeneratorConfig& config);
GeneratorConfig config_from_json(const std::string& text);

struct GeneratedSample {
    MDTree tree;
    Graph graph;                ///< expand(tree)
    std::vector<int> leaf_map;  ///< vertex -> id of the tree node where it is a leaf
};

/// One level of the root-to-leaf walk for a vertex.
struct VertexPathLevel {
    int node = -1;                        ///< internal node id at this level
    int child_index = -1;                 ///< index of the child containing the vertex
    std::vector<int> neighbor_children;   ///< children adjacent to it in the outer graph
    long long adjacent_neighbor_pairs = 0;///< unordered adjacent pairs among those neighbors
    std::vector<int> child_sizes;         ///< vertex count of every child of the node
};

struct VertexPath {
    int vertex = -1;
    std::vector<VertexPathLevel> levels;  ///< ordered root -> parent of the leaf
    int length() const { return static_cast<int>(levels.size()); }
};

VertexPath vertex_path(const MDTree& tree, int v);

/// Splits n_vertices among k children by reinforcement: each child starts
/// with one vertex and every remaining vertex joins child c with probability
/// proportional to size(c)^gamma. All sizes are >= 1 and sum to n_vertices.
/// gamma = 1 makes every composition of n_vertices into k positive parts
/// equally likely.
std::vector<int> polya_allocate(int n_vertices, int k, double gamma, Rng& rng);

/// Child count for a node of `type` on n_available vertices: the law's mass
/// function renormalized onto [2, n_available] (Prime: [4, n_available]).
/// If the law has no mass there, falls back to uniform on that range.
/// Throws std::logic_error when Prime is requested with n_available < 4.
int sample_child_count(const ChildCountLaw& law, NodeType type, int n_available, Rng& rng);

/// Node type draw: pi0 for the root, otherwise the parent's transition row
/// (small_transition when n_vertices < prime_min_vertices). Prime mass is
/// zeroed whenever n_vertices < prime_min_vertices and scaled by
/// prime_level_decay^(level-1); if the adjusted row has no mass left, falls
/// back to the uniform distribution over the still-feasible types.
NodeType sample_type(std::optional<NodeType> parent_type, int n_vertices,
                     const GeneratorConfig& config, Rng& rng, int level = 1);

/// Builds a decomposition tree top-down and the graph it determines. Draw
/// order per node: type, child count, vertex allocation, quotient (Prime
/// only), then children left to right; vertices are assigned to children in
/// contiguous ascending ranges, so the tree is canonical as built.
GeneratedSample generate(const GeneratorConfig& config, Rng& rng);

/// Degree read off the tree: at every level of the vertex's path, the sizes
/// of the children adjacent to its own child sum to its cross-edge count
/// there. Always equals the adjacency degree on the expanded graph.
int degree_via_tree(const GeneratedSample& sample, int v);

enum class TriangleMode {
    SameLevel,  ///< sum over path levels of size products over adjacent neighbor pairs
    Exact       ///< adjacency-based triangle count on the expanded graph
};

/// SameLevel counts only triangles whose other two corners lie in distinct
/// neighbor children at one level, so it can undercount (never overcount)
/// the Exact value.
long long triangles_via_tree(const GeneratedSample& sample, int v, TriangleMode mode);

} // namespace mdg

#include <functional>
#include <stdexcept>

#include "mdg/md_tree.hpp"
#include "mdg/modules.hpp"

namespace mdg {

// Recursive Gallai construction. Each call works on the subgraph induced by a
// sorted list of original vertex ids; components/co-components/partition
// blocks come back ordered by minimum vertex, so the tree is canonical as
// built.
MDTree modular_decomposition(const Graph& g) {
    if (g.vertex_count() == 0)
        throw std::invalid_argument("modular_decomposition: empty graph");

    MDTree tree;
    std::function<int(const std::vector<int>&)> build =
        [&](const std::vector<int>& vertices) -> int {
        if (vertices.size() == 1) {
            MDNode leaf;
            leaf.kind = NodeKind::Leaf;
            leaf.vertex = vertices.front();
            leaf.vertices = vertices;
            tree.nodes.push_back(std::move(leaf));
            return static_cast<int>(tree.nodes.size()) - 1;
        }

        // `vertices` is sorted, so local id order matches global id order and
        // block order by minimum is preserved under mapping back.
        Graph sub = induced_subgraph(g, vertices);
        auto to_global = [&](const std::vector<int>& local) {
            std::vector<int> out;
            out.reserve(local.size());
            for (int v : local) out.push_back(vertices[v]);
            return out;
        };

        MDNode node;
        std::vector<std::vector<int>> blocks = components(sub);
        if (blocks.size() > 1) {
            node.kind = NodeKind::Parallel;
        } else {
            blocks = co_components(sub);
            if (blocks.size() > 1) {
                node.kind = NodeKind::Series;
            } else {
                node.kind = NodeKind::Prime;
                blocks = maximal_modular_partition(sub);
                node.quotient = quotient(sub, blocks);
            }
        }
        for (const auto& block : blocks) node.children.push_back(build(to_global(block)));
        node.vertices = vertices;
        tree.nodes.push_back(std::move(node));
        return static_cast<int>(tree.nodes.size()) - 1;
    };

    std::vector<int> all(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
    tree.root = build(all);
    return tree;
}

} // namespace mdg

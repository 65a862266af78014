#include "mdg/md_tree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mdg/modules.hpp"

namespace mdg {

std::string to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Leaf: return "leaf";
        case NodeKind::Series: return "series";
        case NodeKind::Parallel: return "parallel";
        case NodeKind::Prime: return "prime";
    }
    throw std::logic_error("to_string: bad NodeKind");
}

NodeKind node_kind_from_string(const std::string& text) {
    if (text == "leaf") return NodeKind::Leaf;
    if (text == "series") return NodeKind::Series;
    if (text == "parallel") return NodeKind::Parallel;
    if (text == "prime") return NodeKind::Prime;
    throw std::invalid_argument("unknown node kind: " + text);
}

namespace {

bool same_subtree(const MDTree& a, int ia, const MDTree& b, int ib) {
    const MDNode& na = a.node(ia);
    const MDNode& nb = b.node(ib);
    if (na.kind != nb.kind || na.vertex != nb.vertex) return false;
    if (na.children.size() != nb.children.size()) return false;
    if (na.kind == NodeKind::Prime && na.quotient != nb.quotient) return false;
    for (std::size_t i = 0; i < na.children.size(); ++i)
        if (!same_subtree(a, na.children[i], b, nb.children[i])) return false;
    return true;
}

} // namespace

bool MDTree::operator==(const MDTree& other) const {
    if (root < 0 || other.root < 0) return root == other.root;
    return same_subtree(*this, root, other, other.root);
}

void validate_tree(const MDTree& tree) {
    if (tree.root < 0 || tree.root >= static_cast<int>(tree.nodes.size()))
        throw std::invalid_argument("tree: root id out of range");

    std::vector<char> seen(tree.nodes.size(), 0);
    std::function<void(int, NodeKind)> walk = [&](int id, NodeKind parent) {
        if (id < 0 || id >= static_cast<int>(tree.nodes.size()))
            throw std::invalid_argument("tree: child id out of range");
        if (seen[id]) throw std::invalid_argument("tree: node reachable twice");
        seen[id] = 1;
        const MDNode& node = tree.nodes[id];

        if (node.kind == NodeKind::Leaf) {
            if (!node.children.empty()) throw std::invalid_argument("tree: leaf with children");
            if (node.vertex < 0) throw std::invalid_argument("tree: leaf without vertex");
            if (node.vertices != std::vector<int>{node.vertex})
                throw std::invalid_argument("tree: leaf vertex set mismatch");
            return;
        }
        if (node.vertex != -1)
            throw std::invalid_argument("tree: internal node carries a leaf vertex");
        if (node.children.size() < 2)
            throw std::invalid_argument("tree: internal node with < 2 children");
        if (node.kind == parent &&
            (node.kind == NodeKind::Series || node.kind == NodeKind::Parallel))
            throw std::invalid_argument("tree: " + to_string(node.kind) + " child of " +
                                        to_string(parent) + " parent");
        if (node.kind == NodeKind::Prime) {
            if (node.children.size() < 4)
                throw std::invalid_argument("tree: prime node with < 4 children");
            if (node.quotient.vertex_count() != static_cast<int>(node.children.size()))
                throw std::invalid_argument("tree: quotient size != child count");
            if (!is_prime(node.quotient))
                throw std::invalid_argument("tree: quotient has a nontrivial module");
        } else if (node.quotient.vertex_count() != 0) {
            throw std::invalid_argument("tree: non-prime node carries a quotient");
        }

        // Children must partition the node's vertex set and sit in canonical
        // (minimum-vertex) order.
        std::vector<int> merged;
        int prev_min = -1;
        for (int child : node.children) {
            walk(child, node.kind);
            const auto& cv = tree.nodes[child].vertices;
            if (cv.front() < prev_min)
                throw std::invalid_argument("tree: children not in canonical order");
            prev_min = cv.front();
            merged.insert(merged.end(), cv.begin(), cv.end());
        }
        std::vector<int> sorted = merged;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("tree: child vertex sets overlap");
        if (sorted != node.vertices)
            throw std::invalid_argument("tree: node vertex set != union of children");
    };
    walk(tree.root, NodeKind::Leaf);

    for (char s : seen)
        if (!s) throw std::invalid_argument("tree: unreachable node in storage");

    const auto& rv = tree.node(tree.root).vertices;
    for (std::size_t i = 0; i < rv.size(); ++i)
        if (rv[i] != static_cast<int>(i))
            throw std::invalid_argument("tree: leaves must carry vertices 0..n-1");
}

void canonicalize(MDTree& tree) {
    if (tree.root < 0) return;
    std::function<void(int)> walk = [&](int id) {
        MDNode& node = tree.nodes[id];
        for (int child : node.children) walk(child);
        if (node.children.empty()) return;

        std::vector<int> order(node.children.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return tree.nodes[node.children[a]].vertices.front() <
                   tree.nodes[node.children[b]].vertices.front();
        });

        std::vector<int> children(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) children[i] = node.children[order[i]];
        if (node.kind == NodeKind::Prime && children != node.children) {
            // Quotient vertices are indexed by child position: apply the same
            // permutation (new position i holds old position order[i]).
            std::vector<int> new_pos(order.size());
            for (std::size_t i = 0; i < order.size(); ++i) new_pos[order[i]] = static_cast<int>(i);
            std::vector<std::pair<int, int>> edges;
            for (auto [u, v] : node.quotient.edge_list())
                edges.emplace_back(new_pos[u], new_pos[v]);
            node.quotient = Graph(node.quotient.vertex_count(), edges);
        }
        node.children = std::move(children);

        std::vector<int> merged;
        for (int child : node.children) {
            const auto& cv = tree.nodes[child].vertices;
            merged.insert(merged.end(), cv.begin(), cv.end());
        }
        std::sort(merged.begin(), merged.end());
        node.vertices = std::move(merged);
    };
    walk(tree.root);
}

MDStats md_stats(const MDTree& tree) {
    MDStats stats;
    if (tree.root < 0) return stats;
    std::function<void(int, int)> walk = [&](int id, int depth) {
        const MDNode& node = tree.nodes[id];
        if (node.kind == NodeKind::Leaf) {
            ++stats.leaves;
            stats.levels_with_leaves = std::max(stats.levels_with_leaves, depth);
            return;
        }
        ++stats.internal_nodes;
        stats.levels = std::max(stats.levels, depth);
        switch (node.kind) {
            case NodeKind::Series: ++stats.n_series; break;
            case NodeKind::Parallel: ++stats.n_parallel; break;
            case NodeKind::Prime:
                ++stats.n_prime;
                stats.largest_prime =
                    std::max(stats.largest_prime, static_cast<int>(node.children.size()));
                break;
            case NodeKind::Leaf: break;
        }
        for (int child : node.children) walk(child, depth + 1);
    };
    walk(tree.root, 1);
    if (stats.internal_nodes > 0) {
        stats.density_prime = static_cast<double>(stats.n_prime) / stats.internal_nodes;
        stats.density_series = static_cast<double>(stats.n_series) / stats.internal_nodes;
        stats.density_parallel = static_cast<double>(stats.n_parallel) / stats.internal_nodes;
    }
    return stats;
}

Graph expand(const MDTree& tree) {
    validate_tree(tree);
    const int n = tree.vertex_count();
    std::vector<std::pair<int, int>> edges;
    for (const MDNode& node : tree.nodes) {
        if (node.kind == NodeKind::Leaf) continue;
        const int k = static_cast<int>(node.children.size());
        // Cross edges between adjacent children; every vertex pair meets at
        // exactly one node, so no edge is produced twice.
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                bool adjacent = node.kind == NodeKind::Series ||
                                (node.kind == NodeKind::Prime && node.quotient.has_edge(i, j));
                if (!adjacent) continue;
                for (int u : tree.nodes[node.children[i]].vertices)
                    for (int v : tree.nodes[node.children[j]].vertices) edges.emplace_back(u, v);
            }
    }
    return Graph(n, edges);
}

namespace {

struct BlockMatrix {
    std::vector<int> order;              // subtree vertices in block-contiguous order
    std::vector<std::vector<char>> a;    // adjacency over that order
};

BlockMatrix build_block(const MDTree& tree, int id) {
    const MDNode& node = tree.nodes[id];
    if (node.kind == NodeKind::Leaf) return {{node.vertex}, {{0}}};

    std::vector<BlockMatrix> parts;
    parts.reserve(node.children.size());
    std::size_t total = 0;
    for (int child : node.children) {
        parts.push_back(build_block(tree, child));
        total += parts.back().order.size();
    }
    BlockMatrix out;
    out.order.reserve(total);
    std::vector<std::size_t> offset;
    for (const auto& part : parts) {
        offset.push_back(out.order.size());
        out.order.insert(out.order.end(), part.order.begin(), part.order.end());
    }
    out.a.assign(total, std::vector<char>(total, 0));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t r = 0; r < parts[i].order.size(); ++r)
            for (std::size_t c = 0; c < parts[i].order.size(); ++c)
                out.a[offset[i] + r][offset[i] + c] = parts[i].a[r][c];
    // Off-diagonal blocks are constant: all-ones where the outer graph has an
    // edge, all-zeros elsewhere.
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            bool adjacent =
                node.kind == NodeKind::Series ||
                (node.kind == NodeKind::Prime &&
                 node.quotient.has_edge(static_cast<int>(i), static_cast<int>(j)));
            if (!adjacent) continue;
            for (std::size_t r = 0; r < parts[i].order.size(); ++r)
                for (std::size_t c = 0; c < parts[j].order.size(); ++c) {
                    out.a[offset[i] + r][offset[j] + c] = 1;
                    out.a[offset[j] + c][offset[i] + r] = 1;
                }
        }
    return out;
}

} // namespace

Graph block_adjacency(const MDTree& tree) {
    validate_tree(tree);
    BlockMatrix m = build_block(tree, tree.root);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < m.order.size(); ++i)
        for (std::size_t j = i + 1; j < m.order.size(); ++j)
            if (m.a[i][j]) edges.emplace_back(m.order[i], m.order[j]);
    return Graph(static_cast<int>(m.order.size()), edges);
}

namespace {

nlohmann::json node_to_json(const MDTree& tree, int id) {
    const MDNode& node = tree.nodes[id];
    nlohmann::json j;
    j["kind"] = to_string(node.kind);
    if (node.kind == NodeKind::Leaf) {
        j["vertex"] = node.vertex;
        return j;
    }
    j["children"] = nlohmann::json::array();
    for (int child : node.children) j["children"].push_back(node_to_json(tree, child));
    if (node.kind == NodeKind::Prime) {
        nlohmann::json q;
        q["n"] = node.quotient.vertex_count();
        q["edges"] = nlohmann::json::array();
        for (auto [u, v] : node.quotient.edge_list()) q["edges"].push_back({u, v});
        j["quotient"] = q;
    }
    return j;
}

int node_from_json(const nlohmann::json& j, MDTree& tree) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::runtime_error("bad tree JSON: node must be an object with \"kind\"");
    MDNode node;
    node.kind = node_kind_from_string(j.at("kind").get<std::string>());
    if (node.kind == NodeKind::Leaf) {
        node.vertex = j.at("vertex").get<int>();
        node.vertices = {node.vertex};
    } else {
        for (const auto& c : j.at("children")) node.children.push_back(node_from_json(c, tree));
        for (int child : node.children) {
            const auto& cv = tree.nodes[child].vertices;
            node.vertices.insert(node.vertices.end(), cv.begin(), cv.end());
        }
        std::sort(node.vertices.begin(), node.vertices.end());
        if (node.kind == NodeKind::Prime) {
            const auto& q = j.at("quotient");
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : q.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            node.quotient = Graph(q.at("n").get<int>(), edges);
        }
    }
    tree.nodes.push_back(std::move(node));
    return static_cast<int>(tree.nodes.size()) - 1;
}

} // namespace

std::string tree_to_json(const MDTree& tree) {
    if (tree.root < 0) throw std::invalid_argument("tree_to_json: empty tree");
    return node_to_json(tree, tree.root).dump(2);
}

MDTree tree_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("bad tree JSON: ") + e.what());
    }
    MDTree tree;
    try {
        tree.root = node_from_json(j, tree);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("bad tree JSON: ") + e.what());
    }
    canonicalize(tree);
    validate_tree(tree);
    return tree;
}

std::string tree_to_dot(const MDTree& tree, const std::string& name) {
    if (tree.root < 0) throw std::invalid_argument("tree_to_dot: empty tree");
    std::ostringstream out;
    out << "graph " << name << " {\n";
    int next = 0;
    std::function<int(int)> emit = [&](int id) -> int {
        const MDNode& node = tree.nodes[id];
        int self = next++;
        if (node.kind == NodeKind::Leaf) {
            out << "  n" << self << " [label=\"" << node.vertex << "\", shape=circle];\n";
        } else {
            out << "  n" << self << " [label=\"" << to_string(node.kind) << "\", shape=box];\n";
        }
        for (int child : node.children) {
            int c = emit(child);
            out << "  n" << self << " -- n" << c << ";\n";
        }
        return self;
    };
    emit(tree.root);
    out << "}\n";
    return out.str();
}

} // namespace mdg

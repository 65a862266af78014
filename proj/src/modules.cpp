#include "mdg/modules.hpp"

#include <algorithm>
#include <stdexcept>

namespace mdg {

bool is_module(const Graph& g, const std::vector<int>& members) {
    const int n = g.vertex_count();
    std::vector<char> inside(n, 0);
    for (int v : members) {
        if (v < 0 || v >= n) throw std::out_of_range("is_module: vertex out of range");
        inside[v] = 1;
    }
    std::size_t size = 0;
    for (char c : inside) size += c;
    for (int w = 0; w < n; ++w) {
        if (inside[w]) continue;
        std::size_t seen = 0;
        for (int u : g.neighbors(w))
            if (inside[u]) ++seen;
        if (seen != 0 && seen != size) return false;
    }
    return true;
}

std::vector<int> module_closure(const Graph& g, const std::vector<int>& seed) {
    const int n = g.vertex_count();
    if (seed.empty()) throw std::invalid_argument("module_closure: empty seed");
    std::vector<char> inside(n, 0);
    int size = 0;
    for (int v : seed) {
        if (v < 0 || v >= n) throw std::out_of_range("module_closure: vertex out of range");
        if (!inside[v]) {
            inside[v] = 1;
            ++size;
        }
    }

    // Absorb splitters in rounds: any outside vertex adjacent to part but not
    // all of the current set must belong to every module containing it, so
    // adding it is forced. The fixpoint is therefore the smallest module.
    bool grew = true;
    while (grew && size < n) {
        grew = false;
        std::vector<int> add;
        for (int w = 0; w < n; ++w) {
            if (inside[w]) continue;
            int cnt = 0;
            for (int u : g.neighbors(w))
                if (inside[u]) ++cnt;
            if (cnt != 0 && cnt != size) add.push_back(w);
        }
        for (int w : add) inside[w] = 1;
        size += static_cast<int>(add.size());
        grew = !add.empty();
    }
    std::vector<int> out;
    out.reserve(size);
    for (int v = 0; v < n; ++v)
        if (inside[v]) out.push_back(v);
    return out;
}

namespace {

// Splits every block of `blocks` (except the one containing w) into the part
// adjacent to w and the part not; returns true if anything changed.
bool split_by(const Graph& g, int w, std::vector<std::vector<int>>& blocks) {
    const auto& nbrs = g.neighbors(w);
    bool changed = false;
    std::vector<std::vector<int>> next;
    next.reserve(blocks.size());
    for (auto& block : blocks) {
        if (std::binary_search(block.begin(), block.end(), w)) {
            next.push_back(std::move(block));
            continue;
        }
        std::vector<int> adj, non;
        for (int v : block)
            (std::binary_search(nbrs.begin(), nbrs.end(), v) ? adj : non).push_back(v);
        if (adj.empty() || non.empty()) {
            next.push_back(std::move(block));
        } else {
            changed = true;
            next.push_back(std::move(adj));
            next.push_back(std::move(non));
        }
    }
    blocks.swap(next);
    return changed;
}

} // namespace

std::vector<std::vector<int>> modular_partition_at(const Graph& g, int pivot) {
    const int n = g.vertex_count();
    if (pivot < 0 || pivot >= n) throw std::out_of_range("modular_partition_at: bad pivot");
    std::vector<std::vector<int>> blocks{{pivot}};
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (v != pivot) rest.push_back(v);
    if (!rest.empty()) blocks.push_back(std::move(rest));

    // Every split is forced on any partition-into-modules refining the start,
    // so the fixpoint is the coarsest such partition.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int w = 0; w < n; ++w)
            changed |= split_by(g, w, blocks);
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return blocks;
}

std::vector<std::vector<int>> maximal_modular_partition(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("maximal_modular_partition: need >= 2 vertices");
    if (components(g).size() != 1 || co_components(g).size() != 1)
        throw std::invalid_argument(
            "maximal_modular_partition: graph must be connected and co-connected");

    // The block containing the pivot is the union of all proper smallest
    // modules {pivot, u}; the remaining blocks are the blocks of the refined
    // partition disjoint from it.
    const int pivot = 0;
    std::vector<char> in_star(n, 0);
    in_star[pivot] = 1;
    for (int u = 1; u < n; ++u) {
        if (in_star[u]) continue;
        auto closure = module_closure(g, {pivot, u});
        if (static_cast<int>(closure.size()) == n) continue;  // not a proper module
        for (int v : closure) in_star[v] = 1;
    }
    std::vector<int> star;
    for (int v = 0; v < n; ++v)
        if (in_star[v]) star.push_back(v);

    std::vector<std::vector<int>> partition{star};
    for (auto& block : modular_partition_at(g, pivot)) {
        bool disjoint = true;
        for (int v : block)
            if (in_star[v]) {
                disjoint = false;
                break;
            }
        if (disjoint) partition.push_back(std::move(block));
    }
    std::sort(partition.begin(), partition.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return partition;
}

bool is_prime(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 4) return false;
    if (components(g).size() != 1) return false;
    if (co_components(g).size() != 1) return false;
    for (const auto& block : maximal_modular_partition(g))
        if (block.size() != 1) return false;
    return true;
}

Graph quotient(const Graph& g, const std::vector<std::vector<int>>& partition) {
    const int n = g.vertex_count();
    std::vector<int> block_of(n, -1);
    for (std::size_t b = 0; b < partition.size(); ++b) {
        if (partition[b].empty()) throw std::invalid_argument("quotient: empty block");
        for (int v : partition[b]) {
            if (v < 0 || v >= n) throw std::out_of_range("quotient: vertex out of range");
            if (block_of[v] != -1) throw std::invalid_argument("quotient: overlapping blocks");
            block_of[v] = static_cast<int>(b);
        }
        if (!is_module(g, partition[b]))
            throw std::invalid_argument("quotient: block " + std::to_string(b) +
                                        " is not a module");
    }
    for (int v = 0; v < n; ++v)
        if (block_of[v] == -1)
            throw std::invalid_argument("quotient: blocks do not cover the vertex set");

    // Blocks are modules, so adjacency of one cross pair decides the block pair.
    std::vector<std::pair<int, int>> edges;
    for (std::size_t b = 0; b < partition.size(); ++b)
        for (std::size_t c = b + 1; c < partition.size(); ++c)
            if (g.has_edge(partition[b].front(), partition[c].front()))
                edges.emplace_back(static_cast<int>(b), static_cast<int>(c));
    return Graph(static_cast<int>(partition.size()), edges);
}

Graph compose(const std::vector<Graph>& inner, const Graph& outer) {
    if (static_cast<int>(inner.size()) != outer.vertex_count())
        throw std::invalid_argument("compose: |inner| must equal outer vertex count");
    std::vector<int> offset(inner.size() + 1, 0);
    for (std::size_t i = 0; i < inner.size(); ++i)
        offset[i + 1] = offset[i] + inner[i].vertex_count();

    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < inner.size(); ++i)
        for (auto [u, v] : inner[i].edge_list())
            edges.emplace_back(offset[i] + u, offset[i] + v);
    for (auto [b, c] : outer.edge_list())
        for (int u = offset[b]; u < offset[b + 1]; ++u)
            for (int v = offset[c]; v < offset[c + 1]; ++v) edges.emplace_back(u, v);
    return Graph(offset.back(), edges);
}

} // namespace mdg

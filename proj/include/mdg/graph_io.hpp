#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mdg/graph.hpp"

namespace mdg {

/// Raised by the edge-list parser; carries the 1-based line number of the
/// offending input line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct EdgeListOptions {
    bool one_based = false;  ///< input vertex ids start at 1
    bool drop_loops = false; ///< silently discard self-loops instead of failing
};

/// Parses a whitespace-separated edge list. Supported lines:
///   - `# ...` or empty: ignored
///   - `n=<count>`: declares the vertex count (otherwise max id + 1 is used)
///   - `<u> <v>`: one edge
/// Duplicate edges are collapsed; self-loops raise ParseError unless
/// `drop_loops` is set.
Graph from_edge_list(const std::string& text, const EdgeListOptions& opts = {});

/// Reads a file and forwards to from_edge_list. Throws std::runtime_error if
/// the file cannot be opened.
Graph load_edge_list(const std::string& path, const EdgeListOptions& opts = {});

/// Renders the edge list in the format accepted by from_edge_list, with an
/// `n=` header so isolated vertices survive a roundtrip.
std::string to_edge_list(const Graph& g);

/// Graphviz rendering (undirected, `graph { ... }`).
std::string graph_to_dot(const Graph& g, const std::string& name = "g");

/// JSON object {"n": int, "edges": [[u, v], ...]} with edges sorted.
std::string graph_to_json(const Graph& g);

/// Inverse of graph_to_json. Throws std::runtime_error on malformed input.
Graph graph_from_json(const std::string& text);

} // namespace mdg

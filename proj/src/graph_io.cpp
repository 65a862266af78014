#include "mdg/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mdg {

Graph from_edge_list(const std::string& text, const EdgeListOptions& opts) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int declared_n = -1;
    int max_id = -1;
    std::vector<std::pair<int, int>> edges;

    while (std::getline(in, line)) {
        ++line_no;
        // Strip trailing comment and surrounding whitespace.
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;  // blank or comment-only line

        if (first.rfind("n=", 0) == 0) {
            try {
                declared_n = std::stoi(first.substr(2));
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad vertex count: " + first);
            }
            if (declared_n < 0) throw ParseError(line_no, "negative vertex count");
            continue;
        }

        std::string second, extra;
        if (!(fields >> second)) throw ParseError(line_no, "expected two vertex ids");
        if (fields >> extra) throw ParseError(line_no, "trailing token: " + extra);

        int u, v;
        try {
            u = std::stoi(first);
            v = std::stoi(second);
        } catch (const std::exception&) {
            throw ParseError(line_no, "bad vertex id");
        }
        if (opts.one_based) {
            --u;
            --v;
        }
        if (u < 0 || v < 0) throw ParseError(line_no, "vertex id below range");
        max_id = std::max({max_id, u, v});
        if (u == v) {
            // A dropped loop still attests that the vertex exists.
            if (opts.drop_loops) continue;
            throw ParseError(line_no, "self-loop at vertex " + first);
        }
        edges.emplace_back(u, v);
    }

    int n = declared_n >= 0 ? declared_n : max_id + 1;
    if (max_id >= n)
        throw ParseError(line_no, "edge references vertex " + std::to_string(max_id) +
                                      " but n=" + std::to_string(n));
    return Graph(n, edges);
}

Graph load_edge_list(const std::string& path, const EdgeListOptions& opts) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_edge_list(buf.str(), opts);
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n=" << g.vertex_count() << "\n";
    for (auto [u, v] : g.edge_list()) out << u << " " << v << "\n";
    return out.str();
}

std::string graph_to_dot(const Graph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (int v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
    for (auto [u, v] : g.edge_list()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edge_list()) j["edges"].push_back({u, v});
    return j.dump(2);
}

Graph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("bad graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw std::runtime_error("bad graph JSON: expected object with \"n\" and \"edges\"");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2)
            throw std::runtime_error("bad graph JSON: edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph(j["n"].get<int>(), edges);
}

} // namespace mdg

#include "mdg/generator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "mdg/samplers.hpp"

namespace mdg {

NodeKind to_kind(NodeType type) {
    switch (type) {
        case NodeType::Series: return NodeKind::Series;
        case NodeType::Parallel: return NodeKind::Parallel;
        case NodeType::Prime: return NodeKind::Prime;
    }
    throw std::logic_error("to_kind: bad NodeType");
}

std::string to_string(NodeType type) {
    switch (type) {
        case NodeType::Series: return "series";
        case NodeType::Parallel: return "parallel";
        case NodeType::Prime: return "prime";
    }
    throw std::logic_error("to_string: bad NodeType");
}

double TypeDistribution::operator[](NodeType t) const {
    switch (t) {
        case NodeType::Series: return series;
        case NodeType::Parallel: return parallel;
        case NodeType::Prime: return prime;
    }
    throw std::logic_error("TypeDistribution: bad NodeType");
}

void TypeDistribution::validate() const {
    for (double p : {series, parallel, prime})
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("type distribution: entry outside [0, 1]");
    if (std::abs(series + parallel + prime - 1.0) > 1e-12)
        throw std::invalid_argument("type distribution: probabilities must sum to 1");
}

void TransitionMatrix::validate(bool forbid_prime) const {
    for (std::size_t r = 0; r < 3; ++r) {
        double sum = 0.0;
        for (double p : rows[r]) {
            if (p < 0.0 || p > 1.0)
                throw std::invalid_argument("transition matrix: entry outside [0, 1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("transition matrix: row " + std::to_string(r) +
                                        " must sum to 1");
        if (forbid_prime && rows[r][2] != 0.0)
            throw std::invalid_argument(
                "transition matrix: prime mass not allowed in the small-node matrix");
    }
    if (rows[0][0] != 0.0 || rows[1][1] != 0.0)
        throw std::invalid_argument(
            "transition matrix: series->series and parallel->parallel must be 0");
}

ChildCountLaw ChildCountLaw::truncated_poisson(double lambda) {
    ChildCountLaw law;
    law.kind = Kind::TruncatedPoisson;
    law.lambda = lambda;
    return law;
}

ChildCountLaw ChildCountLaw::uniform_range(int k_min, int k_max) {
    ChildCountLaw law;
    law.kind = Kind::UniformRange;
    law.k_min = k_min;
    law.k_max = k_max;
    return law;
}

ChildCountLaw ChildCountLaw::truncated_power_law(double alpha, int k_min, int k_max) {
    ChildCountLaw law;
    law.kind = Kind::TruncatedPowerLaw;
    law.alpha = alpha;
    law.k_min = k_min;
    law.k_max = k_max;
    return law;
}

ChildCountLaw ChildCountLaw::per_type(ChildCountLaw series_law, ChildCountLaw parallel_law,
                                      ChildCountLaw prime_law) {
    ChildCountLaw law;
    law.kind = Kind::PerType;
    law.series = std::make_shared<ChildCountLaw>(std::move(series_law));
    law.parallel = std::make_shared<ChildCountLaw>(std::move(parallel_law));
    law.prime = std::make_shared<ChildCountLaw>(std::move(prime_law));
    return law;
}

const ChildCountLaw& ChildCountLaw::for_type(NodeType type) const {
    if (kind != Kind::PerType) return *this;
    switch (type) {
        case NodeType::Series: return *series;
        case NodeType::Parallel: return *parallel;
        case NodeType::Prime: return *prime;
    }
    throw std::logic_error("ChildCountLaw: bad NodeType");
}

void ChildCountLaw::validate() const {
    switch (kind) {
        case Kind::TruncatedPoisson:
            if (!(lambda > 0.0))
                throw std::invalid_argument("child count law: rate must be positive");
            return;
        case Kind::UniformRange:
        case Kind::TruncatedPowerLaw:
            if (k_min < 2 || k_max < k_min)
                throw std::invalid_argument("child count law: need 2 <= k_min <= k_max");
            return;
        case Kind::PerType:
            if (!series || !parallel || !prime)
                throw std::invalid_argument("child count law: per-type law missing a sub-law");
            for (const auto* sub : {series.get(), parallel.get(), prime.get()}) {
                if (sub->kind == Kind::PerType)
                    throw std::invalid_argument("child count law: per-type laws cannot nest");
                sub->validate();
            }
            return;
    }
    throw std::logic_error("child count law: bad kind");
}

void GeneratorConfig::validate() const {
    if (n < 1) throw std::invalid_argument("generator config: need n >= 1");
    if (gamma < 1.0) throw std::invalid_argument("generator config: need gamma >= 1");
    if (prime_min_vertices < 4)
        throw std::invalid_argument("generator config: need prime_min_vertices >= 4");
    if (prime_quotient_cap < 4)
        throw std::invalid_argument("generator config: need prime_quotient_cap >= 4");
    if (prime_level_decay < 0.0 || prime_level_decay > 1.0)
        throw std::invalid_argument("generator config: prime_level_decay outside [0, 1]");
    pi0.validate();
    transition.validate();
    small_transition.validate(/*forbid_prime=*/true);
    child_law.validate();
}

std::vector<int> polya_allocate(int n_vertices, int k, double gamma, Rng& rng) {
    if (k < 2 || k > n_vertices)
        throw std::invalid_argument("polya_allocate: need 2 <= k <= n_vertices");
    if (gamma < 1.0) throw std::invalid_argument("polya_allocate: need gamma >= 1");
    std::vector<int> sizes(k, 1);
    std::vector<double> weights(k, 1.0);
    const bool linear = gamma == 1.0;
    for (int placed = k; placed < n_vertices; ++placed) {
        int c = rng.categorical(weights);
        ++sizes[c];
        weights[c] = linear ? static_cast<double>(sizes[c])
                            : std::pow(static_cast<double>(sizes[c]), gamma);
    }
    return sizes;
}

int sample_child_count(const ChildCountLaw& law_in, NodeType type, int n_available, Rng& rng) {
    const ChildCountLaw& law = law_in.for_type(type);
    const int lo = type == NodeType::Prime ? 4 : 2;
    if (n_available < lo)
        throw std::logic_error("sample_child_count: " + to_string(type) + " node needs >= " +
                               std::to_string(lo) + " vertices, got " +
                               std::to_string(n_available));
    const int hi = n_available;
    std::vector<double> weights(hi - lo + 1, 0.0);
    switch (law.kind) {
        case ChildCountLaw::Kind::TruncatedPoisson: {
            // log-space weights keep large rates stable
            double max_lw = -1e300;
            std::vector<double> lw(weights.size());
            for (int k = lo; k <= hi; ++k) {
                lw[k - lo] = k * std::log(law.lambda) - std::lgamma(k + 1.0);
                max_lw = std::max(max_lw, lw[k - lo]);
            }
            for (std::size_t i = 0; i < weights.size(); ++i)
                weights[i] = std::exp(lw[i] - max_lw);
            break;
        }
        case ChildCountLaw::Kind::UniformRange:
            for (int k = std::max(lo, law.k_min); k <= std::min(hi, law.k_max); ++k)
                weights[k - lo] = 1.0;
            break;
        case ChildCountLaw::Kind::TruncatedPowerLaw:
            for (int k = std::max(lo, law.k_min); k <= std::min(hi, law.k_max); ++k)
                weights[k - lo] = std::exp(-law.alpha * std::log(static_cast<double>(k)));
            break;
        case ChildCountLaw::Kind::PerType:
            throw std::logic_error("sample_child_count: unresolved per-type law");
    }
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total <= 0.0) std::fill(weights.begin(), weights.end(), 1.0);  // law misses the range
    return lo + rng.categorical(weights);
}

NodeType sample_type(std::optional<NodeType> parent_type, int n_vertices,
                     const GeneratorConfig& config, Rng& rng, int level) {
    if (n_vertices < 2) throw std::logic_error("sample_type: needs >= 2 vertices");
    std::array<double, 3> w{};
    if (parent_type) {
        const TransitionMatrix& m = n_vertices < config.prime_min_vertices
                                        ? config.small_transition
                                        : config.transition;
        w = m.row(*parent_type);
    } else {
        w = {config.pi0.series, config.pi0.parallel, config.pi0.prime};
        if (config.force_connected) w[1] = 0.0;
    }
    if (n_vertices < config.prime_min_vertices) w[2] = 0.0;
    if (level > 1) w[2] *= std::pow(config.prime_level_decay, level - 1);

    double total = w[0] + w[1] + w[2];
    if (total <= 0.0) {
        // Degenerate row: fall back to uniform over the types that stay legal.
        if (!(parent_type && *parent_type == NodeType::Series)) w[0] = 1.0;
        if (!(parent_type && *parent_type == NodeType::Parallel) &&
            !(!parent_type && config.force_connected))
            w[1] = 1.0;
        if (n_vertices >= config.prime_min_vertices) w[2] = 1.0;
    }
    return static_cast<NodeType>(rng.categorical(w));
}

GeneratedSample generate(const GeneratorConfig& config, Rng& rng) {
    config.validate();
    GeneratedSample sample;
    sample.leaf_map.assign(config.n, -1);
    MDTree& tree = sample.tree;

    std::function<int(int, int, std::optional<NodeType>, int)> build =
        [&](int count, int offset, std::optional<NodeType> parent, int level) -> int {
        if (count == 1) {
            MDNode leaf;
            leaf.kind = NodeKind::Leaf;
            leaf.vertex = offset;
            leaf.vertices = {offset};
            tree.nodes.push_back(std::move(leaf));
            int id = static_cast<int>(tree.nodes.size()) - 1;
            sample.leaf_map[offset] = id;
            return id;
        }
        NodeType type = sample_type(parent, count, config, rng, level);
        int available = count;
        if (type == NodeType::Prime) available = std::min(count, config.prime_quotient_cap);
        int k = sample_child_count(config.child_law, type, available, rng);
        std::vector<int> sizes = polya_allocate(count, k, config.gamma, rng);
        Graph outer;
        if (type == NodeType::Prime) outer = sample_prime_uniform(k, rng);

        std::vector<int> children;
        children.reserve(k);
        int child_offset = offset;
        for (int i = 0; i < k; ++i) {
            children.push_back(build(sizes[i], child_offset, type, level + 1));
            child_offset += sizes[i];
        }
        MDNode node;
        node.kind = to_kind(type);
        node.children = std::move(children);
        node.vertices.resize(count);
        std::iota(node.vertices.begin(), node.vertices.end(), offset);
        node.quotient = std::move(outer);
        tree.nodes.push_back(std::move(node));
        return static_cast<int>(tree.nodes.size()) - 1;
    };
    tree.root = build(config.n, 0, std::nullopt, 1);
    sample.graph = expand(tree);
    return sample;
}

VertexPath vertex_path(const MDTree& tree, int v) {
    if (tree.root < 0) throw std::invalid_argument("vertex_path: empty tree");
    if (v < 0 || v >= tree.vertex_count())
        throw std::out_of_range("vertex_path: vertex out of range");

    VertexPath path;
    path.vertex = v;
    int id = tree.root;
    while (tree.node(id).kind != NodeKind::Leaf) {
        const MDNode& node = tree.node(id);
        VertexPathLevel lvl;
        lvl.node = id;
        const int k = static_cast<int>(node.children.size());
        lvl.child_sizes.reserve(k);
        for (int child : node.children)
            lvl.child_sizes.push_back(static_cast<int>(tree.node(child).vertices.size()));
        for (int i = 0; i < k; ++i) {
            const auto& cv = tree.node(node.children[i]).vertices;
            if (std::binary_search(cv.begin(), cv.end(), v)) {
                lvl.child_index = i;
                break;
            }
        }
        if (node.kind == NodeKind::Series) {
            for (int j = 0; j < k; ++j)
                if (j != lvl.child_index) lvl.neighbor_children.push_back(j);
            const auto s = static_cast<long long>(lvl.neighbor_children.size());
            lvl.adjacent_neighbor_pairs = s * (s - 1) / 2;
        } else if (node.kind == NodeKind::Prime) {
            lvl.neighbor_children = node.quotient.neighbors(lvl.child_index);
            const auto& nb = lvl.neighbor_children;
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b)
                    if (node.quotient.has_edge(nb[a], nb[b])) ++lvl.adjacent_neighbor_pairs;
        }
        id = node.children[lvl.child_index];
        path.levels.push_back(std::move(lvl));
    }
    return path;
}

int degree_via_tree(const GeneratedSample& sample, int v) {
    VertexPath path = vertex_path(sample.tree, v);
    long long degree = 0;
    for (const VertexPathLevel& lvl : path.levels)
        for (int j : lvl.neighbor_children) degree += lvl.child_sizes[j];
    return static_cast<int>(degree);
}

long long triangles_via_tree(const GeneratedSample& sample, int v, TriangleMode mode) {
    if (mode == TriangleMode::Exact) return triangles_at(sample.graph, v);

    const MDTree& tree = sample.tree;
    VertexPath path = vertex_path(tree, v);
    long long total = 0;
    for (const VertexPathLevel& lvl : path.levels) {
        const MDNode& node = tree.node(lvl.node);
        const auto& nb = lvl.neighbor_children;
        if (node.kind == NodeKind::Series) {
            // all neighbor pairs are adjacent: (sum^2 - sum of squares) / 2
            long long sum = 0, squares = 0;
            for (int j : nb) {
                sum += lvl.child_sizes[j];
                squares += static_cast<long long>(lvl.child_sizes[j]) * lvl.child_sizes[j];
            }
            total += (sum * sum - squares) / 2;
        } else if (node.kind == NodeKind::Prime) {
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b)
                    if (node.quotient.has_edge(nb[a], nb[b]))
                        total += static_cast<long long>(lvl.child_sizes[nb[a]]) *
                                 lvl.child_sizes[nb[b]];
        }
    }
    return total;
}

namespace {

nlohmann::json law_to_json(const ChildCountLaw& law) {
    nlohmann::json j;
    switch (law.kind) {
        case ChildCountLaw::Kind::TruncatedPoisson:
            j["kind"] = "truncated-poisson";
            j["lambda"] = law.lambda;
            break;
        case ChildCountLaw::Kind::UniformRange:
            j["kind"] = "uniform-range";
            j["k_min"] = law.k_min;
            j["k_max"] = law.k_max;
            break;
        case ChildCountLaw::Kind::TruncatedPowerLaw:
            j["kind"] = "truncated-power-law";
            j["alpha"] = law.alpha;
            j["k_min"] = law.k_min;
            j["k_max"] = law.k_max;
            break;
        case ChildCountLaw::Kind::PerType:
            j["kind"] = "per-type";
            j["series"] = law_to_json(*law.series);
            j["parallel"] = law_to_json(*law.parallel);
            j["prime"] = law_to_json(*law.prime);
            break;
    }
    return j;
}

ChildCountLaw law_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "truncated-poisson")
        return ChildCountLaw::truncated_poisson(j.at("lambda").get<double>());
    if (kind == "uniform-range")
        return ChildCountLaw::uniform_range(j.at("k_min").get<int>(), j.at("k_max").get<int>());
    if (kind == "truncated-power-law")
        return ChildCountLaw::truncated_power_law(j.at("alpha").get<double>(),
                                                  j.at("k_min").get<int>(),
                                                  j.at("k_max").get<int>());
    if (kind == "per-type")
        return ChildCountLaw::per_type(law_from_json(j.at("series")),
                                       law_from_json(j.at("parallel")),
                                       law_from_json(j.at("prime")));
    throw std::runtime_error("bad config JSON: unknown child law kind: " + kind);
}

nlohmann::json matrix_to_json(const TransitionMatrix& m) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : m.rows) j.push_back(row);
    return j;
}

TransitionMatrix matrix_from_json(const nlohmann::json& j) {
    TransitionMatrix m;
    if (!j.is_array() || j.size() != 3)
        throw std::runtime_error("bad config JSON: transition matrix must have 3 rows");
    for (std::size_t r = 0; r < 3; ++r) {
        if (!j[r].is_array() || j[r].size() != 3)
            throw std::runtime_error("bad config JSON: transition row must have 3 entries");
        for (std::size_t c = 0; c < 3; ++c) m.rows[r][c] = j[r][c].get<double>();
    }
    return m;
}

TransitionMatrix default_small_transition() {
    TransitionMatrix m;
    m.rows = {{{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}};
    return m;
}

} // namespace

std::string config_to_json(const GeneratorConfig& config) {
    nlohmann::json j;
    j["n"] = config.n;
    j["pi0"] = {{"series", config.pi0.series},
                {"parallel", config.pi0.parallel},
                {"prime", config.pi0.prime}};
    j["transition"] = matrix_to_json(config.transition);
    j["small_transition"] = matrix_to_json(config.small_transition);
    j["child_law"] = law_to_json(config.child_law);
    j["gamma"] = config.gamma;
    j["prime_min_vertices"] = config.prime_min_vertices;
    j["prime_quotient_cap"] = config.prime_quotient_cap;
    j["force_connected"] = config.force_connected;
    j["prime_level_decay"] = config.prime_level_decay;
    j["seed"] = config.seed;
    return j.dump(2);
}

GeneratorConfig config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("bad config JSON: ") + e.what());
    }
    GeneratorConfig config;
    try {
        config.n = j.at("n").get<int>();
        const auto& pi = j.at("pi0");
        config.pi0.series = pi.at("series").get<double>();
        config.pi0.parallel = pi.at("parallel").get<double>();
        config.pi0.prime = pi.at("prime").get<double>();
        config.transition = matrix_from_json(j.at("transition"));
        config.small_transition = j.contains("small_transition")
                                      ? matrix_from_json(j["small_transition"])
                                      : default_small_transition();
        config.child_law = law_from_json(j.at("child_law"));
        config.gamma = j.value("gamma", 1.0);
        config.prime_min_vertices = j.value("prime_min_vertices", 4);
        config.prime_quotient_cap = j.value("prime_quotient_cap", 64);
        config.force_connected = j.value("force_connected", false);
        config.prime_level_decay = j.value("prime_level_decay", 1.0);
        config.seed = j.value("seed", static_cast<std::uint64_t>(0));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("bad config JSON: ") + e.what());
    }
    config.validate();
    return config;
}

} // namespace mdg

#ifndef NEIGHBOR2VEC_GRAPH_HPP
#define NEIGHBOR2VEC_GRAPH_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace neighbor2vec {

using NodeId = std::uint32_t;

enum class Direction { out, in };

struct Edge {
    NodeId source = 0;
    NodeId target = 0;
    double weight = 1.0;
};

struct Neighbor {
    NodeId node = 0;
    double weight = 1.0;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Adjacency slice of one node. Iterates as (node, weight) pairs; unweighted
/// graphs report weight 1.0.
class NeighborRange {
public:
    class iterator {
    public:
        using iterator_category = std::random_access_iterator_tag;
        using value_type = Neighbor;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = Neighbor;

        iterator() = default;
        iterator(const NeighborRange* range, std::size_t pos) : range_(range), pos_(pos) {}

        Neighbor operator*() const { return (*range_)[pos_]; }
        Neighbor operator[](difference_type k) const { return (*range_)[pos_ + k]; }
        iterator& operator++() { ++pos_; return *this; }
        iterator operator++(int) { auto copy = *this; ++pos_; return copy; }
        iterator& operator--() { --pos_; return *this; }
        iterator operator--(int) { auto copy = *this; --pos_; return copy; }
        iterator& operator+=(difference_type k) { pos_ += k; return *this; }
        iterator& operator-=(difference_type k) { pos_ -= k; return *this; }
        friend iterator operator+(iterator it, difference_type k) { return it += k; }
        friend iterator operator+(difference_type k, iterator it) { return it += k; }
        friend iterator operator-(iterator it, difference_type k) { return it -= k; }
        friend difference_type operator-(const iterator& a, const iterator& b) {
            return static_cast<difference_type>(a.pos_) - static_cast<difference_type>(b.pos_);
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.pos_ == b.pos_; }
        friend auto operator<=>(const iterator& a, const iterator& b) { return a.pos_ <=> b.pos_; }

    private:
        const NeighborRange* range_ = nullptr;
        std::size_t pos_ = 0;
    };

    NeighborRange() = default;
    NeighborRange(std::span<const NodeId> targets, std::span<const double> weights)
        : targets_(targets), weights_(weights) {}

    std::size_t size() const noexcept { return targets_.size(); }
    bool empty() const noexcept { return targets_.empty(); }
    Neighbor operator[](std::size_t i) const {
        return Neighbor{targets_[i], weights_.empty() ? 1.0 : weights_[i]};
    }
    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, size()); }

    std::span<const NodeId> targets() const noexcept { return targets_; }
    /// Empty for unweighted graphs.
    std::span<const double> weights() const noexcept { return weights_; }

private:
    std::span<const NodeId> targets_;
    std::span<const double> weights_;
};

/**
 * Immutable CSR graph.
 *
 * Undirected graphs store every edge in both endpoint lists and keep no
 * separate in-direction arrays (in == out). Directed graphs keep the exact
 * transpose in the in-direction arrays. Each adjacency list is sorted by
 * target id; self-loops never appear and, unless built with dedupe off,
 * neither do parallel edges.
 */
class Graph {
public:
    Graph() = default;

    /// Builds a graph over nodes [0, num_nodes). Self-loops are dropped;
    /// with `dedupe`, parallel edges merge and their weights are summed.
    /// Undirected edges (u,v) and (v,u) are the same edge.
    static Graph from_edges(std::size_t num_nodes, std::span<const Edge> edges, bool directed,
                            bool weighted, bool dedupe = true) {
        Graph g;
        g.num_nodes_ = num_nodes;
        g.directed_ = directed;
        g.weighted_ = weighted;

        std::vector<Edge> arcs;
        arcs.reserve(edges.size());
        for (const Edge& e : edges) {
            if (e.source >= num_nodes || e.target >= num_nodes) {
                throw Error(ErrorCategory::invalid_argument,
                            "edge (" + std::to_string(e.source) + ", " + std::to_string(e.target) +
                                ") out of range for " + std::to_string(num_nodes) + " nodes");
            }
            if (weighted && !(e.weight >= 0.0)) {
                throw Error(ErrorCategory::invalid_argument, "negative or NaN edge weight");
            }
            if (e.source == e.target) {
                continue;
            }
            Edge arc = e;
            if (!directed && arc.source > arc.target) {
                std::swap(arc.source, arc.target);
            }
            if (!weighted) {
                arc.weight = 1.0;
            }
            arcs.push_back(arc);
        }
        auto by_endpoints = [](const Edge& a, const Edge& b) {
            return a.source != b.source ? a.source < b.source : a.target < b.target;
        };
        std::stable_sort(arcs.begin(), arcs.end(), by_endpoints);
        if (dedupe) {
            std::vector<Edge> merged;
            merged.reserve(arcs.size());
            for (const Edge& arc : arcs) {
                if (!merged.empty() && merged.back().source == arc.source &&
                    merged.back().target == arc.target) {
                    merged.back().weight += arc.weight;
                } else {
                    merged.push_back(arc);
                }
            }
            arcs = std::move(merged);
        }
        g.num_edges_ = arcs.size();

        if (directed) {
            build_csr(num_nodes, arcs, weighted, g.out_offsets_, g.out_targets_, g.out_weights_);
            for (Edge& arc : arcs) {
                std::swap(arc.source, arc.target);
            }
            std::stable_sort(arcs.begin(), arcs.end(), by_endpoints);
            build_csr(num_nodes, arcs, weighted, g.in_offsets_, g.in_targets_, g.in_weights_);
        } else {
            std::vector<Edge> both;
            both.reserve(arcs.size() * 2);
            for (const Edge& arc : arcs) {
                both.push_back(arc);
                both.push_back(Edge{arc.target, arc.source, arc.weight});
            }
            std::stable_sort(both.begin(), both.end(), by_endpoints);
            build_csr(num_nodes, both, weighted, g.out_offsets_, g.out_targets_, g.out_weights_);
        }
        return g;
    }

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    /// Unique edges: arcs for directed graphs, unordered pairs otherwise.
    std::size_t num_edges() const noexcept { return num_edges_; }
    bool directed() const noexcept { return directed_; }
    bool weighted() const noexcept { return weighted_; }

    NeighborRange neighbors(NodeId v, Direction dir = Direction::out) const {
        check_node(v);
        const bool use_in = directed_ && dir == Direction::in;
        const auto& offsets = use_in ? in_offsets_ : out_offsets_;
        const auto& targets = use_in ? in_targets_ : out_targets_;
        const auto& weights = use_in ? in_weights_ : out_weights_;
        const std::size_t begin = offsets[v];
        const std::size_t count = offsets[v + 1] - begin;
        std::span<const double> w;
        if (weighted_) {
            w = std::span<const double>(weights).subspan(begin, count);
        }
        return NeighborRange(std::span<const NodeId>(targets).subspan(begin, count), w);
    }

    std::size_t degree(NodeId v, Direction dir = Direction::out) const {
        check_node(v);
        const auto& offsets = (directed_ && dir == Direction::in) ? in_offsets_ : out_offsets_;
        return offsets[v + 1] - offsets[v];
    }

    /// Out-direction adjacency slots per node.
    double average_degree() const noexcept {
        return num_nodes_ == 0 ? 0.0
                               : static_cast<double>(out_targets_.size()) / static_cast<double>(num_nodes_);
    }

    bool has_edge(NodeId u, NodeId v) const {
        const auto targets = neighbors(u).targets();
        return std::binary_search(targets.begin(), targets.end(), v);
    }

    std::span<const std::size_t> offsets(Direction dir = Direction::out) const noexcept {
        return (directed_ && dir == Direction::in) ? in_offsets_ : out_offsets_;
    }
    std::span<const NodeId> targets(Direction dir = Direction::out) const noexcept {
        return (directed_ && dir == Direction::in) ? in_targets_ : out_targets_;
    }

    /// Every stored edge once (u < v for undirected graphs), in CSR order.
    std::vector<Edge> edges() const {
        std::vector<Edge> result;
        result.reserve(num_edges_);
        for (NodeId u = 0; u < num_nodes_; ++u) {
            for (const Neighbor nb : neighbors(u)) {
                if (directed_ || u < nb.node) {
                    result.push_back(Edge{u, nb.node, nb.weight});
                }
            }
        }
        return result;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check_node(NodeId v) const {
        if (v >= num_nodes_) {
            throw Error(ErrorCategory::invalid_argument,
                        "node " + std::to_string(v) + " out of range [0, " + std::to_string(num_nodes_) + ")");
        }
    }

    // `arcs` must be sorted by (source, target).
    static void build_csr(std::size_t n, const std::vector<Edge>& arcs, bool weighted,
                          std::vector<std::size_t>& offsets, std::vector<NodeId>& targets,
                          std::vector<double>& weights) {
        offsets.assign(n + 1, 0);
        targets.resize(arcs.size());
        if (weighted) {
            weights.resize(arcs.size());
        }
        for (const Edge& arc : arcs) {
            ++offsets[arc.source + 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            offsets[i + 1] += offsets[i];
        }
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            targets[i] = arcs[i].target;
            if (weighted) {
                weights[i] = arcs[i].weight;
            }
        }
    }

    std::size_t num_nodes_ = 0;
    std::size_t num_edges_ = 0;
    bool directed_ = false;
    bool weighted_ = false;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<NodeId> out_targets_;
    std::vector<double> out_weights_;
    std::vector<std::size_t> in_offsets_;
    std::vector<NodeId> in_targets_;
    std::vector<double> in_weights_;
};

struct IngestOptions {
    bool directed = false;
    bool weighted = false;
    char comment_prefix = '#';
    bool dedupe = true;
};

namespace detail {

inline std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if constexpr (std::is_floating_point_v<T>) {
        if (first != last && *first == '+') {
            ++first;
        }
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last;
}

inline std::string shortest(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

inline std::string shortest(float value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

[[noreturn]] inline void parse_error(const std::string& path, std::size_t line_no, const std::string& what) {
    throw Error(ErrorCategory::parse, path + ":" + std::to_string(line_no) + ": " + what);
}

}

/// Reads a whitespace-separated edge list: "src dst" or "src dst weight".
/// Node count is one past the largest id seen.
inline Graph load_edge_list(const std::string& path, const IngestOptions& opts = {}) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCategory::io, "cannot open edge list '" + path + "'");
    }
    std::vector<Edge> edges;
    std::size_t num_nodes = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = detail::split_whitespace(line);
        if (tokens.empty() || tokens[0].front() == opts.comment_prefix) {
            continue;
        }
        if (tokens.size() < 2) {
            detail::parse_error(path, line_no, "expected 'src dst [weight]'");
        }
        Edge e;
        if (!detail::parse_number(tokens[0], e.source) || !detail::parse_number(tokens[1], e.target)) {
            detail::parse_error(path, line_no, "node ids must be non-negative integers");
        }
        if (opts.weighted) {
            if (tokens.size() < 3) {
                detail::parse_error(path, line_no, "weight column missing");
            }
            if (!detail::parse_number(tokens[2], e.weight)) {
                detail::parse_error(path, line_no, "malformed weight '" + std::string(tokens[2]) + "'");
            }
            if (!(e.weight >= 0.0)) {
                detail::parse_error(path, line_no, "negative weight");
            }
        }
        num_nodes = std::max<std::size_t>(num_nodes, std::max(e.source, e.target) + std::size_t{1});
        edges.push_back(e);
    }
    if (in.bad()) {
        throw Error(ErrorCategory::io, "error reading '" + path + "'");
    }
    return Graph::from_edges(num_nodes, edges, opts.directed, opts.weighted, opts.dedupe);
}

/// Writes each stored edge once. Isolated trailing nodes are not representable
/// in the format, so reloading recovers the node count only up to the largest
/// id that carries an edge.
inline void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCategory::io, "cannot write edge list '" + path + "'");
    }
    for (const Edge& e : g.edges()) {
        out << e.source << ' ' << e.target;
        if (g.weighted()) {
            out << ' ' << detail::shortest(e.weight);
        }
        out << '\n';
    }
    if (!out) {
        throw Error(ErrorCategory::io, "error writing '" + path + "'");
    }
}

/// "string_id<TAB>int_id" lines.
inline std::unordered_map<std::string, NodeId> load_node_id_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCategory::io, "cannot open node id map '" + path + "'");
    }
    std::unordered_map<std::string, NodeId> mapping;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto tab = line.find('\t');
        NodeId id = 0;
        if (tab == std::string::npos || !detail::parse_number(std::string_view(line).substr(tab + 1), id)) {
            detail::parse_error(path, line_no, "expected 'string_id<TAB>int_id'");
        }
        if (!mapping.emplace(line.substr(0, tab), id).second) {
            detail::parse_error(path, line_no, "duplicate string id '" + line.substr(0, tab) + "'");
        }
    }
    return mapping;
}

}

#endif

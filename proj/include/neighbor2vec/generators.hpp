#ifndef NEIGHBOR2VEC_GENERATORS_HPP
#define NEIGHBOR2VEC_GENERATORS_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "random.hpp"

namespace neighbor2vec::generators {

inline Graph path(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
    }
    return Graph::from_edges(n, edges, false, false);
}

/// Node 0 is the center.
inline Graph star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= leaves; ++i) {
        edges.push_back(Edge{0, static_cast<NodeId>(i)});
    }
    return Graph::from_edges(leaves + 1, edges, false, false);
}

inline std::vector<Edge> clique_edges(NodeId first, std::size_t size) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i + 1; j < size; ++j) {
            edges.push_back(Edge{static_cast<NodeId>(first + i), static_cast<NodeId>(first + j)});
        }
    }
    return edges;
}

inline Graph clique(std::size_t size) {
    const auto edges = clique_edges(0, size);
    return Graph::from_edges(size, edges, false, false);
}

/// `count` cliques of `size` nodes; clique c holds nodes [c*size, (c+1)*size).
/// Consecutive cliques (cyclically) are joined by one edge from the last node
/// of clique c to the first node of clique c+1.
inline std::vector<Edge> ring_of_cliques_edges(std::size_t count, std::size_t size) {
    std::vector<Edge> edges;
    for (std::size_t c = 0; c < count; ++c) {
        const auto first = static_cast<NodeId>(c * size);
        auto intra = clique_edges(first, size);
        edges.insert(edges.end(), intra.begin(), intra.end());
    }
    if (count > 1) {
        for (std::size_t c = 0; c < count; ++c) {
            const auto last = static_cast<NodeId>(c * size + size - 1);
            const auto next_first = static_cast<NodeId>(((c + 1) % count) * size);
            edges.push_back(Edge{last, next_first});
        }
    }
    return edges;
}

inline Graph ring_of_cliques(std::size_t count, std::size_t size) {
    const auto edges = ring_of_cliques_edges(count, size);
    return Graph::from_edges(count * size, edges, false, false);
}

inline std::vector<Edge> erdos_renyi_edges(std::size_t n, double p, std::uint64_t seed, bool directed = false) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = directed ? 0 : u + 1; v < n; ++v) {
            if (u != v && rng.uniform() < p) {
                edges.push_back(Edge{static_cast<NodeId>(u), static_cast<NodeId>(v)});
            }
        }
    }
    return edges;
}

inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed, bool directed = false) {
    const auto edges = erdos_renyi_edges(n, p, seed, directed);
    return Graph::from_edges(n, edges, directed, false);
}

/**
 * Barabasi-Albert preferential attachment. Starts from a clique on
 * `edges_per_node + 1` nodes; each later node attaches to `edges_per_node`
 * distinct existing nodes chosen proportionally to degree. Average degree
 * approaches 2 * edges_per_node.
 */
inline Graph preferential_attachment(std::size_t n, std::size_t edges_per_node, std::uint64_t seed) {
    const std::size_t m = edges_per_node;
    const std::size_t seed_nodes = std::min(n, m + 1);
    std::vector<Edge> edges = clique_edges(0, seed_nodes);
    // Every edge endpoint appears once per incident edge: uniform draws from
    // this list are degree-proportional.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * n * m);
    for (const Edge& e : edges) {
        endpoints.push_back(e.source);
        endpoints.push_back(e.target);
    }
    Rng rng(seed);
    std::vector<NodeId> chosen;
    for (std::size_t v = seed_nodes; v < n; ++v) {
        chosen.clear();
        while (chosen.size() < m) {
            const NodeId u = endpoints[rng.below(endpoints.size())];
            if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) {
                chosen.push_back(u);
            }
        }
        for (const NodeId u : chosen) {
            edges.push_back(Edge{static_cast<NodeId>(v), u});
            endpoints.push_back(static_cast<NodeId>(v));
            endpoints.push_back(u);
        }
    }
    return Graph::from_edges(n, edges, false, false);
}

/// Zachary's karate club: 34 members, 78 friendships.
inline Graph karate_club() {
    static constexpr std::array<std::pair<NodeId, NodeId>, 78> pairs{{
        {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},   {0, 8},   {0, 10},
        {0, 11},  {0, 12},  {0, 13},  {0, 17},  {0, 19},  {0, 21},  {0, 31},  {1, 2},   {1, 3},
        {1, 7},   {1, 13},  {1, 17},  {1, 19},  {1, 21},  {1, 30},  {2, 3},   {2, 7},   {2, 8},
        {2, 9},   {2, 13},  {2, 27},  {2, 28},  {2, 32},  {3, 7},   {3, 12},  {3, 13},  {4, 6},
        {4, 10},  {5, 6},   {5, 10},  {5, 16},  {6, 16},  {8, 30},  {8, 32},  {8, 33},  {9, 33},
        {13, 33}, {14, 32}, {14, 33}, {15, 32}, {15, 33}, {18, 32}, {18, 33}, {19, 33}, {20, 32},
        {20, 33}, {22, 32}, {22, 33}, {23, 25}, {23, 27}, {23, 29}, {23, 32}, {23, 33}, {24, 25},
        {24, 27}, {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31}, {28, 33}, {29, 32},
        {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33}, {32, 33},
    }};
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs) {
        edges.push_back(Edge{u, v});
    }
    return Graph::from_edges(34, edges, false, false);
}

/// Faction after the split: 0 = instructor's club, 1 = officers' club.
inline std::vector<int> karate_club_labels() {
    return {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0,
            0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
}

}

#endif

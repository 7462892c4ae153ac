#ifndef NEIGHBOR2VEC_PROPAGATION_HPP
#define NEIGHBOR2VEC_PROPAGATION_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "embedding.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"

namespace neighbor2vec {

enum class Aggregation { average, attention };

inline Aggregation parse_aggregation(std::string_view name) {
    if (name == "average") return Aggregation::average;
    if (name == "attention") return Aggregation::attention;
    throw Error(ErrorCategory::invalid_argument, "unknown aggregation method '" + std::string(name) + "'");
}

inline std::string_view to_string(Aggregation method) {
    return method == Aggregation::average ? "average" : "attention";
}

struct PropagationConfig {
    double rate = 0.1;
    std::size_t iterations = 1;
    Aggregation method = Aggregation::average;
    std::size_t threads = 1;
};

namespace detail {

// Directed graphs aggregate over in-neighbors only.
inline NeighborRange aggregation_sources(const Graph& g, NodeId v) {
    return g.neighbors(v, g.directed() ? Direction::in : Direction::out);
}

inline void aggregate_average_into(const Graph& g, NodeId v, const EmbeddingMatrix& m, std::span<double> out) {
    const auto sources = aggregation_sources(g, v);
    std::fill(out.begin(), out.end(), 0.0);
    double total = 0.0;
    for (const Neighbor nb : sources) {
        total += nb.weight;
        const auto row = m.row(nb.node);
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] += nb.weight * static_cast<double>(row[j]);
        }
    }
    if (!(total > 0.0)) {
        const auto self = m.row(v);
        std::copy(self.begin(), self.end(), out.begin());
        return;
    }
    for (double& x : out) {
        x /= total;
    }
}

inline void aggregate_attention_into(const Graph& g, NodeId v, const EmbeddingMatrix& m, std::span<double> out,
                                     std::vector<double>& logits) {
    const auto sources = aggregation_sources(g, v);
    const auto self = m.row(v);
    logits.clear();
    double max_logit = -INFINITY;
    for (const Neighbor nb : sources) {
        const auto row = m.row(nb.node);
        double s = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            s += static_cast<double>(self[j]) * static_cast<double>(row[j]);
        }
        logits.push_back(s);
        if (nb.weight > 0.0) {
            max_logit = std::max(max_logit, s);
        }
    }
    std::fill(out.begin(), out.end(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const Neighbor nb = sources[i];
        if (!(nb.weight > 0.0)) {
            continue;
        }
        const double w = nb.weight * std::exp(logits[i] - max_logit);
        total += w;
        const auto row = m.row(nb.node);
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] += w * static_cast<double>(row[j]);
        }
    }
    if (!(total > 0.0)) {
        std::copy(self.begin(), self.end(), out.begin());
        return;
    }
    for (double& x : out) {
        x /= total;
    }
}

}

/// Edge-weighted mean of the neighbor rows of v (in-neighbors when directed).
/// A node with nothing to aggregate returns its own row.
inline std::vector<double> aggregate_average(const Graph& g, NodeId v, const EmbeddingMatrix& m) {
    std::vector<double> out(m.dim());
    detail::aggregate_average_into(g, v, m, out);
    return out;
}

/**
 * Dot-product attention of v over its neighbors: weight of u is
 * edge_weight(u) * exp(M[v] . M[u]), normalized to sum to one. No learned
 * parameters.
 */
inline std::vector<double> aggregate_attention(const Graph& g, NodeId v, const EmbeddingMatrix& m) {
    std::vector<double> out(m.dim());
    std::vector<double> logits;
    detail::aggregate_attention_into(g, v, m, out, logits);
    return out;
}

/**
 * M'[v] = (1 - r) * M[v] + r * aggregate(v, M), applied to all rows at once
 * from the previous iteration's matrix (Jacobi order), `iterations` times.
 */
inline EmbeddingMatrix propagate(const Graph& g, const EmbeddingMatrix& m, const PropagationConfig& cfg) {
    if (m.rows() != g.num_nodes()) {
        throw Error(ErrorCategory::invalid_argument,
                    "embedding has " + std::to_string(m.rows()) + " rows but graph has " +
                        std::to_string(g.num_nodes()) + " nodes");
    }
    require(cfg.rate >= 0.0 && cfg.rate <= 1.0, "propagation rate must lie in [0, 1]");
    if (cfg.rate == 0.0 || cfg.iterations == 0) {
        return m;
    }
    const double r = cfg.rate;
    EmbeddingMatrix current = m;
    EmbeddingMatrix next(m.rows(), m.dim());
    for (std::size_t it = 0; it < cfg.iterations; ++it) {
        parallel_chunks(m.rows(), cfg.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
            std::vector<double> agg(m.dim());
            std::vector<double> logits;
            for (std::size_t v = begin; v < end; ++v) {
                const auto node = static_cast<NodeId>(v);
                if (cfg.method == Aggregation::average) {
                    detail::aggregate_average_into(g, node, current, agg);
                } else {
                    detail::aggregate_attention_into(g, node, current, agg, logits);
                }
                const auto raw = current.row(v);
                auto dst = next.row(v);
                for (std::size_t j = 0; j < m.dim(); ++j) {
                    dst[j] = static_cast<float>((1.0 - r) * static_cast<double>(raw[j]) + r * agg[j]);
                }
            }
        });
        std::swap(current, next);
    }
    return current;
}

}

#endif

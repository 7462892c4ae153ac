#ifndef NEIGHBOR2VEC_SAMPLER_HPP
#define NEIGHBOR2VEC_SAMPLER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace neighbor2vec {

/// Center node followed by its sampled neighbors.
using Sentence = std::vector<NodeId>;

struct CorpusMeta {
    std::size_t num = 0;
    std::size_t n_sample = 0;
    std::uint64_t seed = 0;
    /// Set for random-walk corpora: sentences may repeat nodes.
    bool walks = false;
    std::size_t walk_length = 0;
};

/// Flat sentence storage: sentence i is nodes[offsets[i], offsets[i+1]).
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(CorpusMeta meta) : meta_(meta) {}

    std::size_t size() const noexcept { return offsets_.size() - 1; }
    bool empty() const noexcept { return size() == 0; }
    std::span<const NodeId> operator[](std::size_t i) const {
        return std::span<const NodeId>(nodes_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
    }
    std::size_t token_count() const noexcept { return nodes_.size(); }

    void add(std::span<const NodeId> sentence) {
        nodes_.insert(nodes_.end(), sentence.begin(), sentence.end());
        offsets_.push_back(nodes_.size());
    }

    void append(const Corpus& other) {
        for (std::size_t i = 0; i < other.size(); ++i) {
            add(other[i]);
        }
    }

    const CorpusMeta& meta() const noexcept { return meta_; }
    CorpusMeta& meta() noexcept { return meta_; }

    friend bool operator==(const Corpus& a, const Corpus& b) {
        return a.offsets_ == b.offsets_ && a.nodes_ == b.nodes_;
    }

private:
    CorpusMeta meta_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> nodes_;
};

/// Reusable per-thread scratch for sample_neighborhood. The stamp array
/// makes membership tests O(1) without clearing between calls.
class SamplerWorkspace {
public:
    explicit SamplerWorkspace(std::size_t num_nodes) : stamps_(num_nodes, 0) {}

    void begin() {
        if (++current_ == 0) {
            std::fill(stamps_.begin(), stamps_.end(), 0);
            current_ = 1;
        }
    }
    bool mark(NodeId v) {
        if (stamps_[v] == current_) {
            return false;
        }
        stamps_[v] = current_;
        return true;
    }

    std::vector<NodeId> one_hop;
    std::vector<NodeId> two_hop;

private:
    std::vector<std::uint32_t> stamps_;
    std::uint32_t current_ = 0;
};

/**
 * Hop-prioritized neighborhood sample of `v`.
 *
 * One-hop neighbors come first in uniformly random order. When there are
 * fewer than `num` of them the tail is filled with a uniform sample without
 * replacement from the two-hop ring (neighbors of neighbors, excluding v and
 * the one-hop set). Expansion stops at two hops. The tail is at most `num`
 * long; an isolated node yields just [v].
 */
inline void sample_neighborhood(const Graph& g, NodeId v, std::size_t num, Rng& rng, SamplerWorkspace& ws,
                                Sentence& out) {
    out.clear();
    out.push_back(v);
    ws.begin();
    ws.mark(v);

    auto& one_hop = ws.one_hop;
    one_hop.clear();
    for (const NodeId u : g.neighbors(v).targets()) {
        if (ws.mark(u)) {
            one_hop.push_back(u);
        }
    }
    if (one_hop.size() >= num) {
        partial_shuffle(std::span<NodeId>(one_hop), num, rng);
        out.insert(out.end(), one_hop.begin(), one_hop.begin() + static_cast<std::ptrdiff_t>(num));
        return;
    }
    shuffle(std::span<NodeId>(one_hop), rng);
    out.insert(out.end(), one_hop.begin(), one_hop.end());

    // Frontier is built from the adjacency order (not the shuffled order) so
    // the draw below is the only source of randomness for hop two.
    auto& two_hop = ws.two_hop;
    two_hop.clear();
    for (const NodeId u : g.neighbors(v).targets()) {
        for (const NodeId w : g.neighbors(u).targets()) {
            if (ws.mark(w)) {
                two_hop.push_back(w);
            }
        }
    }
    const std::size_t need = std::min(num - one_hop.size(), two_hop.size());
    partial_shuffle(std::span<NodeId>(two_hop), need, rng);
    out.insert(out.end(), two_hop.begin(), two_hop.begin() + static_cast<std::ptrdiff_t>(need));
}

inline Sentence sample_neighborhood(const Graph& g, NodeId v, std::size_t num, Rng& rng) {
    require(num >= 1, "num must be at least 1");
    SamplerWorkspace ws(g.num_nodes());
    Sentence sentence;
    sample_neighborhood(g, v, num, rng, ws, sentence);
    return sentence;
}

/// max(8, ceil(average degree)).
inline std::size_t default_num(const Graph& g) {
    return std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(g.average_degree())));
}

/// Per-node generator seed for one sampling round.
inline std::uint64_t node_seed(std::uint64_t seed, NodeId v, std::size_t round) {
    return mix_seed(seed, v, round);
}

/**
 * n_sample rounds of sample_neighborhood over every node. Sentence order is
 * (round, node id); sentences shorter than 2 are dropped. Each node draws
 * from its own generator seeded with node_seed(), so output does not depend
 * on the thread count.
 */
inline Corpus generate_corpus(const Graph& g, std::size_t num, std::size_t n_sample, std::uint64_t seed,
                              std::size_t threads = 1) {
    if (g.num_nodes() == 0) {
        throw Error(ErrorCategory::invalid_argument, "cannot sample from an empty graph");
    }
    require(num >= 1, "num must be at least 1");
    require(n_sample >= 1, "n_sample must be at least 1");

    const std::size_t n = g.num_nodes();
    threads = std::max<std::size_t>(1, std::min(threads, n));
    // parts[worker][round] holds that worker's node range for one round.
    std::vector<std::vector<Corpus>> parts(threads, std::vector<Corpus>(n_sample));
    parallel_chunks(n, threads, [&](std::size_t worker, std::size_t begin, std::size_t end) {
        SamplerWorkspace ws(n);
        Sentence sentence;
        for (std::size_t round = 0; round < n_sample; ++round) {
            Corpus& part = parts[worker][round];
            for (std::size_t v = begin; v < end; ++v) {
                Rng rng(node_seed(seed, static_cast<NodeId>(v), round));
                sample_neighborhood(g, static_cast<NodeId>(v), num, rng, ws, sentence);
                if (sentence.size() >= 2) {
                    part.add(sentence);
                }
            }
        }
    });

    Corpus corpus(CorpusMeta{num, n_sample, seed, false, 0});
    for (std::size_t round = 0; round < n_sample; ++round) {
        for (std::size_t worker = 0; worker < threads; ++worker) {
            corpus.append(parts[worker][round]);
        }
    }
    return corpus;
}

/**
 * Uniform random walks, walks_per_node starting at every node. A walk that
 * reaches a node without out-neighbors stops early, so isolated start nodes
 * produce single-node walks.
 */
inline Corpus baseline_random_walk_corpus(const Graph& g, std::size_t walk_len, std::size_t walks_per_node,
                                          std::uint64_t seed) {
    if (g.num_nodes() == 0) {
        throw Error(ErrorCategory::invalid_argument, "cannot walk an empty graph");
    }
    require(walk_len >= 2, "walk length must be at least 2");
    Corpus corpus(CorpusMeta{0, walks_per_node, seed, true, walk_len});
    Sentence walk;
    for (std::size_t round = 0; round < walks_per_node; ++round) {
        for (NodeId start = 0; start < g.num_nodes(); ++start) {
            Rng rng(node_seed(seed, start, round));
            walk.assign(1, start);
            while (walk.size() < walk_len) {
                const auto next = g.neighbors(walk.back()).targets();
                if (next.empty()) {
                    break;
                }
                walk.push_back(next[rng.below(next.size())]);
            }
            corpus.add(walk);
        }
    }
    return corpus;
}

/// One sentence per line, space-separated node ids.
inline void write_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCategory::io, "cannot write corpus '" + path + "'");
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto sentence = corpus[i];
        for (std::size_t j = 0; j < sentence.size(); ++j) {
            out << (j ? " " : "") << sentence[j];
        }
        out << '\n';
    }
    if (!out) {
        throw Error(ErrorCategory::io, "error writing '" + path + "'");
    }
}

}

#endif

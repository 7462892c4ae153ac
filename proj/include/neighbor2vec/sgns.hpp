#ifndef NEIGHBOR2VEC_SGNS_HPP
#define NEIGHBOR2VEC_SGNS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "sampler.hpp"

namespace neighbor2vec {

/// Noise distribution over node ids: P(i) proportional to freq(i)^exponent,
/// with zero-frequency nodes excluded.
class NoiseTable {
public:
    NoiseTable(std::span<const double> frequencies, double exponent) {
        cumulative_.reserve(frequencies.size());
        double total = 0.0;
        for (std::size_t i = 0; i < frequencies.size(); ++i) {
            const double f = frequencies[i];
            require(f >= 0.0, "noise frequencies must be non-negative");
            if (f > 0.0) {
                total += std::pow(f, exponent);
                last_nonzero_ = i;
            }
            cumulative_.push_back(total);
        }
        if (!(total > 0.0)) {
            throw Error(ErrorCategory::invalid_argument, "noise distribution has no mass (empty corpus?)");
        }
        total_ = total;
    }

    /// Token frequencies of `corpus` over nodes [0, num_nodes).
    static NoiseTable from_corpus(const Corpus& corpus, std::size_t num_nodes, double exponent) {
        std::vector<double> counts(num_nodes, 0.0);
        for (std::size_t s = 0; s < corpus.size(); ++s) {
            for (const NodeId v : corpus[s]) {
                require(v < num_nodes, "corpus node " + std::to_string(v) + " exceeds graph size");
                counts[v] += 1.0;
            }
        }
        return NoiseTable(counts, exponent);
    }

    std::size_t size() const noexcept { return cumulative_.size(); }

    double probability(std::size_t i) const {
        const double lower = i == 0 ? 0.0 : cumulative_[i - 1];
        return (cumulative_[i] - lower) / total_;
    }

    NodeId sample(Rng& rng) const {
        const double u = rng.uniform() * total_;
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end()) {
            return static_cast<NodeId>(last_nonzero_);
        }
        return static_cast<NodeId>(it - cumulative_.begin());
    }

private:
    std::vector<double> cumulative_;
    double total_ = 0.0;
    std::size_t last_nonzero_ = 0;
};

namespace detail {

/// log(1 + exp(x)) without overflow.
template <typename T>
T softplus(T x) {
    return std::max(x, T(0)) + std::log1p(std::exp(-std::abs(x)));
}

template <typename T>
T sigmoid(T x) {
    if (x >= T(0)) {
        return T(1) / (T(1) + std::exp(-x));
    }
    const T e = std::exp(x);
    return e / (T(1) + e);
}

}

template <typename T>
struct SgnsGradients {
    T loss{};
    std::vector<T> center;
    std::vector<T> context;
    std::vector<std::vector<T>> negatives;
};

/**
 * Negative-sampling loss for one (center, context) pair and its negatives:
 *
 *   loss = -log sigma(context . center) - sum_i log sigma(-neg_i . center)
 *
 * with exact partial derivatives with respect to every input vector. Each
 * negative is treated as a separate variable even if two are equal.
 */
template <typename T>
SgnsGradients<T> sgns_loss_and_grads(std::span<const T> center, std::span<const T> context,
                                     std::span<const std::vector<T>> negatives) {
    const std::size_t d = center.size();
    require(context.size() == d, "context vector dimension mismatch");
    auto finite = [](std::span<const T> v) {
        return std::all_of(v.begin(), v.end(), [](T x) { return std::isfinite(x); });
    };
    if (!finite(center) || !finite(context)) {
        throw Error(ErrorCategory::numeric, "non-finite embedding in loss evaluation");
    }
    auto dot = [d](std::span<const T> a, std::span<const T> b) {
        T s{};
        for (std::size_t j = 0; j < d; ++j) {
            s += a[j] * b[j];
        }
        return s;
    };

    SgnsGradients<T> out;
    out.center.assign(d, T(0));
    out.context.assign(d, T(0));

    // d/dx [softplus(-x)] = sigma(x) - 1;  d/dx [softplus(x)] = sigma(x)
    const T pos = dot(context, center);
    out.loss = detail::softplus(-pos);
    const T pos_coef = detail::sigmoid(pos) - T(1);
    for (std::size_t j = 0; j < d; ++j) {
        out.center[j] += pos_coef * context[j];
        out.context[j] = pos_coef * center[j];
    }
    for (const auto& neg_vec : negatives) {
        const std::span<const T> neg(neg_vec);
        require(neg.size() == d, "negative vector dimension mismatch");
        if (!finite(neg)) {
            throw Error(ErrorCategory::numeric, "non-finite embedding in loss evaluation");
        }
        const T score = dot(neg, center);
        out.loss += detail::softplus(score);
        const T coef = detail::sigmoid(score);
        std::vector<T> grad(d);
        for (std::size_t j = 0; j < d; ++j) {
            out.center[j] += coef * neg[j];
            grad[j] = coef * center[j];
        }
        out.negatives.push_back(std::move(grad));
    }
    return out;
}

struct TrainConfig {
    std::size_t dim = 128;
    /// Max distance between center and context positions; 0 means the whole sentence.
    std::size_t window = 0;
    std::size_t negatives = 5;
    double alpha = 0.025;
    /// Final learning rate as a fraction of alpha under linear decay.
    double min_alpha_ratio = 0.004;
    bool linear_decay = true;
    std::size_t epochs = 5;
    double noise_exponent = 0.75;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

struct TrainResult {
    EmbeddingMatrix input;
    EmbeddingMatrix output;
    /// Mean loss per positive pair, one entry per epoch.
    std::vector<double> epoch_loss;
    std::uint64_t pairs = 0;
};

/// Uniform(-0.5/d, 0.5/d) input vectors drawn from the seed's init stream.
inline EmbeddingMatrix initial_embeddings(std::size_t rows, std::size_t dim, std::uint64_t seed) {
    EmbeddingMatrix m(rows, dim);
    Rng rng(mix_seed(seed, streams::init));
    const double bound = 0.5 / static_cast<double>(dim);
    for (float& x : m.values()) {
        x = static_cast<float>(rng.uniform(-bound, bound));
    }
    return m;
}

namespace detail {

inline std::uint64_t pairs_in_sentence(std::size_t len, std::size_t window) {
    if (len < 2) {
        return 0;
    }
    if (window == 0 || window >= len - 1) {
        return static_cast<std::uint64_t>(len) * (len - 1);
    }
    // Each unordered pair at distance k (1 <= k <= window) occurs len - k times.
    std::uint64_t count = 0;
    for (std::size_t k = 1; k <= window; ++k) {
        count += 2 * (len - k);
    }
    return count;
}

// One SGD step on the negative-sampling loss. Output vectors are read before
// they are written so the step equals the exact gradient of the loss.
inline double sgns_step(float* center, EmbeddingMatrix& output, NodeId context, const NoiseTable& noise,
                        std::size_t negatives, float lr, Rng& rng, std::vector<float>& center_grad) {
    const std::size_t d = output.dim();
    std::fill(center_grad.begin(), center_grad.end(), 0.0f);
    double loss = 0.0;
    for (std::size_t t = 0; t <= negatives; ++t) {
        NodeId target = context;
        float label = 1.0f;
        if (t > 0) {
            label = 0.0f;
            target = noise.sample(rng);
            // Resample collisions with the positive context; give up after a
            // few draws when the noise mass is concentrated on it.
            for (int retry = 0; target == context && retry < 16; ++retry) {
                target = noise.sample(rng);
            }
            if (target == context) {
                continue;
            }
        }
        float* out = output.row(target).data();
        float score = 0.0f;
        for (std::size_t j = 0; j < d; ++j) {
            score += center[j] * out[j];
        }
        loss += label > 0.0f ? softplus(-static_cast<double>(score)) : softplus(static_cast<double>(score));
        const float g = (label - sigmoid(score)) * lr;
        for (std::size_t j = 0; j < d; ++j) {
            center_grad[j] += g * out[j];
            out[j] += g * center[j];
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        center[j] += center_grad[j];
    }
    return loss;
}

}

/**
 * Skip-gram with negative sampling over a neighborhood corpus.
 *
 * Every ordered pair of distinct in-window positions of a sentence is one
 * training pair (positions carry no meaning beyond the window). Each pair
 * draws `negatives` fresh noise nodes. With threads > 1 workers update the
 * shared matrices without locking (Hogwild), so only threads == 1 is
 * bit-reproducible.
 */
inline TrainResult train_detailed(const Corpus& corpus, const Graph& g, const TrainConfig& cfg) {
    require(cfg.dim >= 1, "dim must be at least 1");
    require(cfg.negatives >= 1, "negatives must be at least 1");
    require(cfg.alpha > 0.0, "alpha must be positive");
    if (corpus.empty()) {
        throw Error(ErrorCategory::invalid_argument, "cannot train on an empty corpus");
    }
    const std::size_t n = g.num_nodes();
    const NoiseTable noise = NoiseTable::from_corpus(corpus, n, cfg.noise_exponent);

    TrainResult result;
    result.input = initial_embeddings(n, cfg.dim, cfg.seed);
    result.output = EmbeddingMatrix(n, cfg.dim, 0.0f);

    std::uint64_t pairs_per_epoch = 0;
    for (std::size_t s = 0; s < corpus.size(); ++s) {
        pairs_per_epoch += detail::pairs_in_sentence(corpus[s].size(), cfg.window);
    }
    const std::uint64_t total_pairs = pairs_per_epoch * cfg.epochs;
    result.pairs = total_pairs;
    if (total_pairs == 0) {
        return result;
    }

    const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, corpus.size()));
    const std::uint64_t train_seed = mix_seed(cfg.seed, streams::train);
    std::atomic<std::uint64_t> processed{0};
    auto learning_rate = [&](std::uint64_t done) {
        if (!cfg.linear_decay) {
            return static_cast<float>(cfg.alpha);
        }
        const double progress = static_cast<double>(done) / static_cast<double>(total_pairs + 1);
        return static_cast<float>(cfg.alpha * std::max(cfg.min_alpha_ratio, 1.0 - progress));
    };

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::vector<double> worker_loss(threads, 0.0);
        parallel_chunks(corpus.size(), threads, [&](std::size_t worker, std::size_t begin, std::size_t end) {
            Rng rng(mix_seed(train_seed, epoch, worker));
            std::vector<float> center_grad(cfg.dim);
            std::uint64_t local = 0;
            float lr = learning_rate(processed.load(std::memory_order_relaxed));
            double loss = 0.0;
            for (std::size_t s = begin; s < end; ++s) {
                const auto sentence = corpus[s];
                const std::size_t len = sentence.size();
                for (std::size_t i = 0; i < len; ++i) {
                    float* center = result.input.row(sentence[i]).data();
                    const std::size_t lo = (cfg.window == 0 || i < cfg.window) ? 0 : i - cfg.window;
                    const std::size_t hi = cfg.window == 0 ? len : std::min(len, i + cfg.window + 1);
                    for (std::size_t j = lo; j < hi; ++j) {
                        if (j == i) {
                            continue;
                        }
                        loss += detail::sgns_step(center, result.output, sentence[j], noise, cfg.negatives, lr,
                                                  rng, center_grad);
                        if (++local == 10000) {
                            lr = learning_rate(processed.fetch_add(local, std::memory_order_relaxed) + local);
                            local = 0;
                        }
                    }
                }
            }
            processed.fetch_add(local, std::memory_order_relaxed);
            worker_loss[worker] = loss;
        });
        double loss = 0.0;
        for (const double l : worker_loss) {
            loss += l;
        }
        const double mean = loss / static_cast<double>(pairs_per_epoch);
        if (!std::isfinite(mean)) {
            throw Error(ErrorCategory::numeric,
                        "training diverged: non-finite loss in epoch " + std::to_string(epoch + 1) +
                            " (try a smaller alpha)");
        }
        result.epoch_loss.push_back(mean);
    }
    return result;
}

inline EmbeddingMatrix train(const Corpus& corpus, const Graph& g, const TrainConfig& cfg) {
    return train_detailed(corpus, g, cfg).input;
}

/**
 * Softmax of x_c . x_v over the neighborhood of v:
 *   p(c | v) = exp(x_c . x_v) / sum_{u in N(v)} exp(x_u . x_v)
 * Diagnostic only; training optimizes the negative-sampling surrogate.
 */
inline double neighborhood_softmax(const Graph& g, const EmbeddingMatrix& m, NodeId v, NodeId c) {
    require(m.rows() == g.num_nodes(), "embedding rows do not match graph nodes");
    const auto nbrs = g.neighbors(v).targets();
    if (nbrs.empty()) {
        throw Error(ErrorCategory::invalid_argument, "node " + std::to_string(v) + " has no neighbors");
    }
    if (std::find(nbrs.begin(), nbrs.end(), c) == nbrs.end()) {
        throw Error(ErrorCategory::invalid_argument,
                    "node " + std::to_string(c) + " is not a neighbor of " + std::to_string(v));
    }
    const auto xv = m.row(v);
    auto logit = [&](NodeId u) {
        const auto xu = m.row(u);
        double s = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j) {
            s += static_cast<double>(xu[j]) * static_cast<double>(xv[j]);
        }
        return s;
    };
    double max_logit = -INFINITY;
    for (const NodeId u : nbrs) {
        max_logit = std::max(max_logit, logit(u));
    }
    double denom = 0.0;
    for (const NodeId u : nbrs) {
        denom += std::exp(logit(u) - max_logit);
    }
    return std::exp(logit(c) - max_logit) / denom;
}

}

#endif

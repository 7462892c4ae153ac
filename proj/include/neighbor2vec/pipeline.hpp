#ifndef NEIGHBOR2VEC_PIPELINE_HPP
#define NEIGHBOR2VEC_PIPELINE_HPP

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "embedding.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "propagation.hpp"
#include "random.hpp"
#include "sampler.hpp"
#include "sgns.hpp"

namespace neighbor2vec {

struct EmbedOptions {
    /// Neighbors per sentence; 0 picks default_num(graph).
    std::size_t num = 0;
    std::size_t n_sample = 10;
    TrainConfig train;
};

struct EmbedStats {
    double average_degree = 0.0;
    std::size_t num = 0;
    std::size_t sentences = 0;
    std::size_t tokens = 0;
    double sample_seconds = 0.0;
    double train_seconds = 0.0;
    std::vector<double> epoch_loss;
};

struct EmbedResult {
    EmbeddingMatrix embeddings;
    EmbedStats stats;
};

inline double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Corpus seed used by embed() for a given user seed.
inline std::uint64_t corpus_seed(std::uint64_t seed) { return mix_seed(seed, streams::corpus); }

/// Neighborhood sampling followed by skip-gram training, both on
/// opts.train.threads threads.
inline EmbedResult embed(const Graph& g, const EmbedOptions& opts) {
    EmbedResult result;
    auto& stats = result.stats;
    stats.average_degree = g.average_degree();
    stats.num = opts.num == 0 ? default_num(g) : opts.num;

    auto start = std::chrono::steady_clock::now();
    const Corpus corpus =
        generate_corpus(g, stats.num, opts.n_sample, corpus_seed(opts.train.seed), opts.train.threads);
    stats.sample_seconds = seconds_since(start);
    stats.sentences = corpus.size();
    stats.tokens = corpus.token_count();

    start = std::chrono::steady_clock::now();
    TrainResult trained = train_detailed(corpus, g, opts.train);
    stats.train_seconds = seconds_since(start);
    stats.epoch_loss = std::move(trained.epoch_loss);
    result.embeddings = std::move(trained.input);
    return result;
}

/// Coefficient of determination of the least-squares line through (x, y).
inline double linear_fit_r2(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, "linear fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    require(sxx > 0.0, "linear fit needs distinct x values");
    if (syy == 0.0) {
        return 1.0;
    }
    return (sxy * sxy) / (sxx * syy);
}

inline nlohmann::json to_json(const TrainConfig& cfg) {
    return nlohmann::json{{"dim", cfg.dim},
                          {"window", cfg.window},
                          {"negatives", cfg.negatives},
                          {"alpha", cfg.alpha},
                          {"min_alpha_ratio", cfg.min_alpha_ratio},
                          {"linear_decay", cfg.linear_decay},
                          {"epochs", cfg.epochs},
                          {"noise_exponent", cfg.noise_exponent},
                          {"seed", cfg.seed},
                          {"threads", cfg.threads}};
}

inline nlohmann::json to_json(const PropagationConfig& cfg) {
    return nlohmann::json{{"rate", cfg.rate},
                          {"iterations", cfg.iterations},
                          {"method", to_string(cfg.method)},
                          {"threads", cfg.threads}};
}

inline nlohmann::json to_json(const EmbedStats& s) {
    return nlohmann::json{{"average_degree", s.average_degree}, {"num", s.num},
                          {"sentences", s.sentences},           {"tokens", s.tokens},
                          {"sample_seconds", s.sample_seconds}, {"train_seconds", s.train_seconds},
                          {"epoch_loss", s.epoch_loss}};
}

}

#endif

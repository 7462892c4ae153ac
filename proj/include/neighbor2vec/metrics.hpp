#ifndef NEIGHBOR2VEC_METRICS_HPP
#define NEIGHBOR2VEC_METRICS_HPP

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace neighbor2vec {

inline double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    require(predicted.size() == truth.size(), "accuracy: length mismatch");
    require(!truth.empty(), "accuracy: empty input");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        correct += predicted[i] == truth[i] ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

/// Mann-Whitney form: P(pos > neg) + 0.5 * P(pos == neg), via midranks.
inline double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    require(scores.size() == labels.size(), "roc_auc: length mismatch");
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double positives = 0.0;
    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            ++j;
        }
        // Ranks i+1 .. j share their mean.
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] != 0) {
                positives += 1.0;
                positive_rank_sum += midrank;
            }
        }
        i = j;
    }
    const double negatives = static_cast<double>(scores.size()) - positives;
    if (positives == 0.0 || negatives == 0.0) {
        throw Error(ErrorCategory::invalid_argument, "roc_auc needs both positive and negative labels");
    }
    return (positive_rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
}

/// Fraction of positives scored strictly above the K-th highest negative.
inline double hits_at_k(std::span<const double> positive_scores, std::span<const double> negative_scores,
                        std::size_t k) {
    require(k >= 1, "hits@K: K must be at least 1");
    require(!positive_scores.empty(), "hits@K: no positive scores");
    if (negative_scores.size() < k) {
        throw Error(ErrorCategory::invalid_argument, "hits@" + std::to_string(k) + " needs at least " +
                                                         std::to_string(k) + " negative scores");
    }
    std::vector<double> negatives(negative_scores.begin(), negative_scores.end());
    std::nth_element(negatives.begin(), negatives.begin() + static_cast<std::ptrdiff_t>(k - 1), negatives.end(),
                     std::greater<>());
    const double threshold = negatives[k - 1];
    const auto hits = std::count_if(positive_scores.begin(), positive_scores.end(),
                                    [threshold](double s) { return s > threshold; });
    return static_cast<double>(hits) / static_cast<double>(positive_scores.size());
}

struct RankingInstance {
    double positive = 0.0;
    std::vector<double> negatives;
};

/// rank = 1 + #{negatives strictly above the positive}; ties favor the positive.
inline double mean_reciprocal_rank(std::span<const RankingInstance> instances) {
    require(!instances.empty(), "mrr: empty input");
    double total = 0.0;
    for (const auto& inst : instances) {
        require(!inst.negatives.empty(), "mrr: empty negative candidate list");
        const auto above = std::count_if(inst.negatives.begin(), inst.negatives.end(),
                                         [&](double s) { return s > inst.positive; });
        total += 1.0 / static_cast<double>(1 + above);
    }
    return total / static_cast<double>(instances.size());
}

enum class Combiner { hadamard, average, abs_diff, squared_diff };

inline Combiner parse_combiner(std::string_view name) {
    if (name == "hadamard") return Combiner::hadamard;
    if (name == "average") return Combiner::average;
    if (name == "abs-diff") return Combiner::abs_diff;
    if (name == "squared-diff") return Combiner::squared_diff;
    throw Error(ErrorCategory::invalid_argument, "unknown edge combiner '" + std::string(name) + "'");
}

inline std::string_view to_string(Combiner c) {
    switch (c) {
        case Combiner::hadamard: return "hadamard";
        case Combiner::average: return "average";
        case Combiner::abs_diff: return "abs-diff";
        case Combiner::squared_diff: return "squared-diff";
    }
    return "hadamard";
}

/// Elementwise pair feature for link prediction.
template <typename T>
void edge_feature_into(std::span<const T> u, std::span<const T> v, Combiner combiner, std::span<T> out) {
    require(u.size() == v.size() && out.size() == u.size(), "edge_feature: dimension mismatch");
    for (std::size_t j = 0; j < u.size(); ++j) {
        switch (combiner) {
            case Combiner::hadamard: out[j] = u[j] * v[j]; break;
            case Combiner::average: out[j] = (u[j] + v[j]) / T(2); break;
            case Combiner::abs_diff: out[j] = u[j] > v[j] ? u[j] - v[j] : v[j] - u[j]; break;
            case Combiner::squared_diff: out[j] = (u[j] - v[j]) * (u[j] - v[j]); break;
        }
    }
}

template <typename T>
std::vector<T> edge_feature(std::span<const T> u, std::span<const T> v, Combiner combiner = Combiner::hadamard) {
    require(u.size() == v.size(), "edge_feature: dimension mismatch");
    std::vector<T> out(u.size());
    edge_feature_into<T>(u, v, combiner, out);
    return out;
}

}

#endif

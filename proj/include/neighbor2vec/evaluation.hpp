#ifndef NEIGHBOR2VEC_EVALUATION_HPP
#define NEIGHBOR2VEC_EVALUATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "embedding.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "metrics.hpp"
#include "mlp.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace neighbor2vec {

struct NodeLabelTask {
    /// Class per node, -1 when unlabeled.
    std::vector<int> labels;
    std::vector<NodeId> train;
    std::vector<NodeId> valid;
    std::vector<NodeId> test;
    std::size_t num_classes = 0;

    void validate(std::size_t num_nodes) const {
        require(labels.size() == num_nodes, "label vector has " + std::to_string(labels.size()) +
                                                 " entries but there are " + std::to_string(num_nodes) + " nodes");
        require(num_classes >= 2, "node classification needs at least two classes");
        std::vector<char> owner(num_nodes, 0);
        auto check = [&](const std::vector<NodeId>& ids, char tag, std::string_view name) {
            for (const NodeId v : ids) {
                require(v < num_nodes, std::string(name) + " split node " + std::to_string(v) + " out of range");
                require(labels[v] >= 0, std::string(name) + " split node " + std::to_string(v) + " is unlabeled");
                require(static_cast<std::size_t>(labels[v]) < num_classes,
                        "class id " + std::to_string(labels[v]) + " >= num_classes");
                require(owner[v] == 0, "node " + std::to_string(v) + " appears in more than one split");
                owner[v] = tag;
            }
        };
        check(train, 1, "train");
        check(valid, 2, "valid");
        check(test, 3, "test");
        require(!train.empty() && !test.empty(), "train and test splits must be non-empty");
    }
};

/// Per-class shuffle, then the first round(train_fraction * class size)
/// nodes of each class go to train and the rest to test. Unlabeled nodes
/// are left out.
inline NodeLabelTask stratified_split(const std::vector<int>& labels, double train_fraction, std::uint64_t seed) {
    require(train_fraction > 0.0 && train_fraction < 1.0, "train fraction must lie in (0, 1)");
    NodeLabelTask task;
    task.labels = labels;
    int max_label = -1;
    for (const int y : labels) {
        max_label = std::max(max_label, y);
    }
    task.num_classes = static_cast<std::size_t>(max_label + 1);
    Rng rng(mix_seed(seed, streams::split));
    for (int c = 0; c <= max_label; ++c) {
        std::vector<NodeId> members;
        for (std::size_t v = 0; v < labels.size(); ++v) {
            if (labels[v] == c) {
                members.push_back(static_cast<NodeId>(v));
            }
        }
        shuffle(std::span<NodeId>(members), rng);
        const auto cut = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(members.size())));
        task.train.insert(task.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(cut));
        task.test.insert(task.test.end(), members.begin() + static_cast<std::ptrdiff_t>(cut), members.end());
    }
    std::sort(task.train.begin(), task.train.end());
    std::sort(task.test.begin(), task.test.end());
    return task;
}

struct NodePair {
    NodeId u = 0;
    NodeId v = 0;
    friend bool operator==(const NodePair&, const NodePair&) = default;
};

struct LinkMetric {
    enum class Kind { roc_auc, hits, mrr } kind = Kind::roc_auc;
    std::size_t k = 50;

    std::string name() const {
        switch (kind) {
            case Kind::roc_auc: return "roc_auc";
            case Kind::hits: return "hits@" + std::to_string(k);
            case Kind::mrr: return "mrr";
        }
        return "roc_auc";
    }
};

/// Accepts "auc", "roc_auc", "mrr" and "hits@K".
inline LinkMetric parse_link_metric(std::string_view name) {
    if (name == "auc" || name == "roc_auc" || name == "roc-auc") return {LinkMetric::Kind::roc_auc, 0};
    if (name == "mrr") return {LinkMetric::Kind::mrr, 0};
    if (name.starts_with("hits@")) {
        std::size_t k = 0;
        if (detail::parse_number(name.substr(5), k) && k >= 1) {
            return {LinkMetric::Kind::hits, k};
        }
    }
    throw Error(ErrorCategory::invalid_argument, "unknown link metric '" + std::string(name) + "'");
}

/**
 * Link prediction split. For MRR, `*_candidates[i]` lists the negative
 * tails ranked against positive i: candidate pairs are (pos[i].u, c).
 */
struct LinkTask {
    /// Positive training pairs; empty means "every edge of the graph".
    std::vector<NodePair> train_edges;
    std::vector<NodePair> valid_pos;
    std::vector<NodePair> valid_neg;
    std::vector<std::vector<NodeId>> valid_candidates;
    std::vector<NodePair> test_pos;
    std::vector<NodePair> test_neg;
    std::vector<std::vector<NodeId>> test_candidates;
    LinkMetric metric;
};

namespace detail {

inline std::uint64_t pair_key(NodeId u, NodeId v, bool directed) {
    if (!directed && u > v) {
        std::swap(u, v);
    }
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

inline void check_pairs(const std::vector<NodePair>& pairs, std::size_t n, std::string_view name) {
    for (const auto& p : pairs) {
        require(p.u < n && p.v < n, std::string(name) + " pair (" + std::to_string(p.u) + ", " +
                                        std::to_string(p.v) + ") out of range");
    }
}

}

inline void validate(const LinkTask& task, const Graph& g) {
    const std::size_t n = g.num_nodes();
    detail::check_pairs(task.train_edges, n, "train");
    detail::check_pairs(task.valid_pos, n, "valid positive");
    detail::check_pairs(task.valid_neg, n, "valid negative");
    detail::check_pairs(task.test_pos, n, "test positive");
    detail::check_pairs(task.test_neg, n, "test negative");
    require(!task.test_pos.empty(), "link task has no test positives");

    std::unordered_set<std::uint64_t> train;
    if (task.train_edges.empty()) {
        for (const Edge& e : g.edges()) {
            train.insert(detail::pair_key(e.source, e.target, g.directed()));
        }
    } else {
        for (const auto& p : task.train_edges) {
            train.insert(detail::pair_key(p.u, p.v, g.directed()));
        }
    }
    for (const auto& p : task.test_pos) {
        require(!train.contains(detail::pair_key(p.u, p.v, g.directed())),
                "test positive (" + std::to_string(p.u) + ", " + std::to_string(p.v) + ") is a training edge");
    }
    for (const auto* negatives : {&task.valid_neg, &task.test_neg}) {
        for (const auto& p : *negatives) {
            require(!g.has_edge(p.u, p.v), "negative pair (" + std::to_string(p.u) + ", " + std::to_string(p.v) +
                                               ") is an edge of the graph");
        }
    }
    if (task.metric.kind == LinkMetric::Kind::mrr) {
        require(task.test_candidates.size() == task.test_pos.size(),
                "mrr needs one candidate list per test positive");
        require(task.valid_candidates.size() == task.valid_pos.size(),
                "mrr needs one candidate list per valid positive");
        for (const auto* lists : {&task.valid_candidates, &task.test_candidates}) {
            for (const auto& list : *lists) {
                require(!list.empty(), "empty mrr candidate list");
                for (const NodeId c : list) {
                    require(c < n, "mrr candidate " + std::to_string(c) + " out of range");
                }
            }
        }
    } else if (task.metric.kind == LinkMetric::Kind::hits) {
        require(task.test_neg.size() >= task.metric.k, "fewer test negatives than K");
    } else {
        require(!task.test_neg.empty(), "roc_auc needs test negatives");
    }
}

struct EvalReport {
    std::string metric;
    double mean = 0.0;
    /// Sample standard deviation across runs (0 for a single run).
    double std = 0.0;
    std::size_t runs = 0;
    std::vector<double> per_run;
    nlohmann::json config = nlohmann::json::object();

    nlohmann::json to_json() const {
        return nlohmann::json{{"metric", metric}, {"mean", mean},     {"std", std},
                              {"runs", runs},     {"per_run", per_run}, {"config", config}};
    }
};

inline EvalReport summarize(std::string metric, std::vector<double> values) {
    EvalReport report;
    report.metric = std::move(metric);
    report.runs = values.size();
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    report.mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (const double v : values) {
            ss += (v - report.mean) * (v - report.mean);
        }
        report.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    report.per_run = std::move(values);
    return report;
}

inline nlohmann::json to_json(const MlpConfig& cfg) {
    return nlohmann::json{{"hidden", {cfg.hidden[0], cfg.hidden[1]}},
                          {"dropout", cfg.dropout},
                          {"epochs", cfg.epochs},
                          {"lr", cfg.lr},
                          {"batch", cfg.batch},
                          {"seed", cfg.seed}};
}

/// d x n feature matrix whose column v is row v of the embedding.
inline FeatureMatrix node_features(const EmbeddingMatrix& m) {
    FeatureMatrix x(static_cast<Eigen::Index>(m.dim()), static_cast<Eigen::Index>(m.rows()));
    for (std::size_t v = 0; v < m.rows(); ++v) {
        const auto row = m.row(v);
        for (std::size_t j = 0; j < m.dim(); ++j) {
            x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(v)) = row[j];
        }
    }
    return x;
}

/// MLP seed of run `run` under base seed `seed`.
inline std::uint64_t run_seed(std::uint64_t seed, std::size_t run) {
    return mix_seed(seed, streams::mlp, run);
}

/**
 * Trains `runs` MLPs with distinct seeds on the train split and reports
 * test accuracy (mean and std). Each run keeps its best-validation-accuracy
 * epoch; with an empty valid split the final epoch is used.
 */
inline EvalReport run_node_classification(const Graph& g, const EmbeddingMatrix& m, const NodeLabelTask& task,
                                          const MlpConfig& cfg, std::size_t runs = 10, std::size_t threads = 1) {
    require(m.rows() == g.num_nodes(), "embedding rows do not match graph nodes");
    require(runs >= 1, "runs must be at least 1");
    task.validate(g.num_nodes());
    const FeatureMatrix features = node_features(m);
    // Unlabeled nodes never enter training; give them a harmless class id.
    std::vector<int> labels = task.labels;
    for (int& y : labels) {
        y = std::max(y, 0);
    }
    auto gather = [&](const std::vector<NodeId>& ids) {
        FeatureMatrix x(features.rows(), static_cast<Eigen::Index>(ids.size()));
        std::vector<int> y(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            x.col(static_cast<Eigen::Index>(i)) = features.col(ids[i]);
            y[i] = labels[ids[i]];
        }
        return std::pair{x, y};
    };
    const auto [valid_x, valid_y] = gather(task.valid);
    const auto [test_x, test_y] = gather(task.test);
    const std::vector<std::size_t> train_idx(task.train.begin(), task.train.end());

    std::vector<double> scores(runs);
    parallel_chunks(runs, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            MlpConfig run_cfg = cfg;
            run_cfg.seed = run_seed(cfg.seed, r);
            std::function<double(const MlpModel&)> selector;
            if (!task.valid.empty()) {
                selector = [&](const MlpModel& model) { return accuracy(model.predict(valid_x), valid_y); };
            }
            const MlpModel model = train_mlp(features, labels, train_idx, task.num_classes, run_cfg, selector);
            scores[r] = accuracy(model.predict(test_x), test_y);
        }
    });
    EvalReport report = summarize("accuracy", std::move(scores));
    report.config = nlohmann::json{{"mlp", to_json(cfg)}, {"runs", runs}, {"num_classes", task.num_classes}};
    return report;
}

namespace detail {

inline FeatureMatrix pair_features(const EmbeddingMatrix& m, const std::vector<NodePair>& pairs, Combiner combiner) {
    FeatureMatrix x(static_cast<Eigen::Index>(m.dim()), static_cast<Eigen::Index>(pairs.size()));
    std::vector<float> buffer(m.dim());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        edge_feature_into<float>(m.row(pairs[i].u), m.row(pairs[i].v), combiner, buffer);
        for (std::size_t j = 0; j < m.dim(); ++j) {
            x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = buffer[j];
        }
    }
    return x;
}

inline std::vector<double> link_scores(const MlpModel& model, const FeatureMatrix& x) {
    if (x.cols() == 0) {
        return {};
    }
    const FeatureMatrix p = model.predict_proba(x);
    std::vector<double> scores(static_cast<std::size_t>(p.cols()));
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
        scores[static_cast<std::size_t>(c)] = static_cast<double>(p(1, c));
    }
    return scores;
}

/// Precomputed pair features for one evaluation split.
struct LinkSplitFeatures {
    FeatureMatrix positives;
    FeatureMatrix negatives;
    std::vector<FeatureMatrix> candidates;
};

inline LinkSplitFeatures split_features(const EmbeddingMatrix& m, const std::vector<NodePair>& pos,
                                        const std::vector<NodePair>& neg,
                                        const std::vector<std::vector<NodeId>>& candidates, Combiner combiner) {
    LinkSplitFeatures f;
    f.positives = pair_features(m, pos, combiner);
    f.negatives = pair_features(m, neg, combiner);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        std::vector<NodePair> pairs;
        for (const NodeId c : candidates[i]) {
            pairs.push_back(NodePair{pos[i].u, c});
        }
        f.candidates.push_back(pair_features(m, pairs, combiner));
    }
    return f;
}

inline double link_metric(const MlpModel& model, const LinkSplitFeatures& f, const LinkMetric& metric) {
    const auto pos = link_scores(model, f.positives);
    switch (metric.kind) {
        case LinkMetric::Kind::roc_auc: {
            auto scores = pos;
            const auto neg = link_scores(model, f.negatives);
            scores.insert(scores.end(), neg.begin(), neg.end());
            std::vector<int> labels(pos.size(), 1);
            labels.resize(scores.size(), 0);
            return roc_auc(scores, labels);
        }
        case LinkMetric::Kind::hits:
            return hits_at_k(pos, link_scores(model, f.negatives), metric.k);
        case LinkMetric::Kind::mrr: {
            std::vector<RankingInstance> instances;
            for (std::size_t i = 0; i < pos.size(); ++i) {
                instances.push_back(RankingInstance{pos[i], link_scores(model, f.candidates[i])});
            }
            return mean_reciprocal_rank(instances);
        }
    }
    return 0.0;
}

}

/**
 * Uniformly random node pairs that are neither graph edges nor in
 * `exclude`, without duplicates. Throws after 100 * count failed draws.
 */
inline std::vector<NodePair> sample_non_edges(const Graph& g, std::size_t count, Rng& rng,
                                              const std::unordered_set<std::uint64_t>& exclude = {}) {
    std::vector<NodePair> result;
    std::unordered_set<std::uint64_t> taken;
    const std::size_t n = g.num_nodes();
    require(n >= 2, "need at least two nodes to sample non-edges");
    const std::size_t max_attempts = 100 * std::max<std::size_t>(count, 1);
    std::size_t attempts = 0;
    while (result.size() < count) {
        if (++attempts > max_attempts) {
            throw Error(ErrorCategory::invalid_argument,
                        "graph too dense: could not sample " + std::to_string(count) + " non-edges in " +
                            std::to_string(max_attempts) + " attempts");
        }
        const auto u = static_cast<NodeId>(rng.below(n));
        const auto v = static_cast<NodeId>(rng.below(n));
        if (u == v || g.has_edge(u, v)) {
            continue;
        }
        const auto key = detail::pair_key(u, v, g.directed());
        if (exclude.contains(key) || !taken.insert(key).second) {
            continue;
        }
        result.push_back(NodePair{u, v});
    }
    return result;
}

/**
 * Link prediction protocol: per run, draw as many non-edge negatives as
 * there are training positives (seeded by the run), train the MLP on
 * combined pair features, keep the best-validation epoch when a valid split
 * exists, and score the test split with the task metric.
 */
inline EvalReport run_link_prediction(const Graph& g, const EmbeddingMatrix& m, const LinkTask& task,
                                      const MlpConfig& cfg, Combiner combiner = Combiner::hadamard,
                                      std::size_t runs = 10, std::size_t threads = 1) {
    require(m.rows() == g.num_nodes(), "embedding rows do not match graph nodes");
    require(runs >= 1, "runs must be at least 1");
    validate(task, g);

    std::vector<NodePair> positives = task.train_edges;
    if (positives.empty()) {
        for (const Edge& e : g.edges()) {
            positives.push_back(NodePair{e.source, e.target});
        }
    }
    require(!positives.empty(), "no training positives");
    std::unordered_set<std::uint64_t> positive_keys;
    for (const auto& p : positives) {
        positive_keys.insert(detail::pair_key(p.u, p.v, g.directed()));
    }
    const FeatureMatrix positive_x = detail::pair_features(m, positives, combiner);
    const auto test = detail::split_features(m, task.test_pos, task.test_neg, task.test_candidates, combiner);
    const bool has_valid = !task.valid_pos.empty();
    const auto valid = detail::split_features(m, task.valid_pos, task.valid_neg, task.valid_candidates, combiner);

    std::vector<double> scores(runs);
    parallel_chunks(runs, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng(mix_seed(cfg.seed, streams::negatives, r));
            const auto negatives = sample_non_edges(g, positives.size(), rng, positive_keys);
            FeatureMatrix x(positive_x.rows(), positive_x.cols() + static_cast<Eigen::Index>(negatives.size()));
            x.leftCols(positive_x.cols()) = positive_x;
            x.rightCols(static_cast<Eigen::Index>(negatives.size())) = detail::pair_features(m, negatives, combiner);
            std::vector<int> labels(positives.size(), 1);
            labels.resize(positives.size() + negatives.size(), 0);
            std::vector<std::size_t> train_idx(labels.size());
            std::iota(train_idx.begin(), train_idx.end(), 0);

            MlpConfig run_cfg = cfg;
            run_cfg.seed = run_seed(cfg.seed, r);
            std::function<double(const MlpModel&)> selector;
            if (has_valid) {
                selector = [&](const MlpModel& model) { return detail::link_metric(model, valid, task.metric); };
            }
            const MlpModel model = train_mlp(x, labels, train_idx, 2, run_cfg, selector);
            scores[r] = detail::link_metric(model, test, task.metric);
        }
    });
    EvalReport report = summarize(task.metric.name(), std::move(scores));
    report.config = nlohmann::json{{"mlp", to_json(cfg)}, {"runs", runs}, {"combiner", to_string(combiner)}};
    return report;
}

/// A graph with held-out edges plus the matching link task.
struct LinkHoldout {
    Graph train_graph;
    LinkTask task;
};

/**
 * Holds out round(test_fraction * |eligible|) edges of `edges` (only those
 * for which `eligible` returns true) as test positives, pairs them with the
 * same number of random non-edges of the full graph, and builds the
 * training graph from the remaining edges. Undirected only.
 */
template <typename Predicate>
LinkHoldout make_link_holdout(std::size_t num_nodes, const std::vector<Edge>& edges, double test_fraction,
                              std::uint64_t seed, Predicate eligible) {
    require(test_fraction > 0.0 && test_fraction < 1.0, "test fraction must lie in (0, 1)");
    const Graph full = Graph::from_edges(num_nodes, edges, false, false);
    std::vector<Edge> all = full.edges();
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (eligible(all[i])) {
            candidates.push_back(i);
        }
    }
    Rng rng(mix_seed(seed, streams::split));
    shuffle(std::span<std::size_t>(candidates), rng);
    const auto held = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(candidates.size())));
    std::vector<char> is_test(all.size(), 0);
    LinkHoldout out;
    for (std::size_t k = 0; k < held; ++k) {
        is_test[candidates[k]] = 1;
        out.task.test_pos.push_back(NodePair{all[candidates[k]].source, all[candidates[k]].target});
    }
    std::vector<Edge> kept;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!is_test[i]) {
            kept.push_back(all[i]);
            out.task.train_edges.push_back(NodePair{all[i].source, all[i].target});
        }
    }
    out.task.test_neg = sample_non_edges(full, held, rng);
    out.train_graph = Graph::from_edges(num_nodes, kept, false, false);
    return out;
}

inline LinkHoldout make_link_holdout(std::size_t num_nodes, const std::vector<Edge>& edges, double test_fraction,
                                     std::uint64_t seed) {
    return make_link_holdout(num_nodes, edges, test_fraction, seed, [](const Edge&) { return true; });
}

// ---------------------------------------------------------------------------
// Task files

namespace detail {

inline NodeId resolve_node(std::string_view token, const std::unordered_map<std::string, NodeId>* id_map,
                           const std::string& path, std::size_t line_no) {
    if (id_map) {
        const auto it = id_map->find(std::string(token));
        if (it == id_map->end()) {
            parse_error(path, line_no, "unknown node '" + std::string(token) + "'");
        }
        return it->second;
    }
    NodeId v = 0;
    if (!parse_number(token, v)) {
        parse_error(path, line_no, "malformed node id '" + std::string(token) + "'");
    }
    return v;
}

template <typename Fn>
void for_each_record(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCategory::io, "cannot open '" + path + "'");
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_whitespace(line);
        if (tokens.empty() || tokens[0].front() == '#') {
            continue;
        }
        fn(tokens, line_no);
    }
}

}

/// "node_id<TAB>class_id" lines; nodes without a line are unlabeled (-1).
inline std::vector<int> load_labels(const std::string& path, std::size_t num_nodes,
                                    const std::unordered_map<std::string, NodeId>* id_map = nullptr) {
    std::vector<int> labels(num_nodes, -1);
    detail::for_each_record(path, [&](const auto& tokens, std::size_t line_no) {
        if (tokens.size() != 2) {
            detail::parse_error(path, line_no, "expected 'node_id<TAB>class_id'");
        }
        const NodeId v = detail::resolve_node(tokens[0], id_map, path, line_no);
        int y = 0;
        if (!detail::parse_number(tokens[1], y) || y < 0) {
            detail::parse_error(path, line_no, "class id must be a non-negative integer");
        }
        if (v >= num_nodes) {
            detail::parse_error(path, line_no, "node " + std::to_string(v) + " out of range");
        }
        labels[v] = y;
    });
    return labels;
}

/// One node id per line.
inline std::vector<NodeId> load_node_split(const std::string& path,
                                           const std::unordered_map<std::string, NodeId>* id_map = nullptr) {
    std::vector<NodeId> ids;
    detail::for_each_record(path, [&](const auto& tokens, std::size_t line_no) {
        if (tokens.size() != 1) {
            detail::parse_error(path, line_no, "expected one node id per line");
        }
        ids.push_back(detail::resolve_node(tokens[0], id_map, path, line_no));
    });
    return ids;
}

/// "u v" per line.
inline std::vector<NodePair> load_edge_split(const std::string& path,
                                             const std::unordered_map<std::string, NodeId>* id_map = nullptr) {
    std::vector<NodePair> pairs;
    detail::for_each_record(path, [&](const auto& tokens, std::size_t line_no) {
        if (tokens.size() < 2) {
            detail::parse_error(path, line_no, "expected 'u v'");
        }
        pairs.push_back(NodePair{detail::resolve_node(tokens[0], id_map, path, line_no),
                                 detail::resolve_node(tokens[1], id_map, path, line_no)});
    });
    return pairs;
}

/// Candidate lists for MRR: line i holds the negative tails for positive i.
inline std::vector<std::vector<NodeId>> load_candidate_lists(
    const std::string& path, const std::unordered_map<std::string, NodeId>* id_map = nullptr) {
    std::vector<std::vector<NodeId>> lists;
    detail::for_each_record(path, [&](const auto& tokens, std::size_t line_no) {
        std::vector<NodeId> list;
        for (const auto token : tokens) {
            list.push_back(detail::resolve_node(token, id_map, path, line_no));
        }
        lists.push_back(std::move(list));
    });
    return lists;
}

}

#endif

// Acceptance gate: one PASS/FAIL/SKIP line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion 5   run one criterion

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "neighbor2vec/neighbor2vec.hpp"

using namespace neighbor2vec;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
    Status status = Status::fail;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

Outcome verdict(bool ok, std::string detail) { return Outcome{ok ? Status::pass : Status::fail, std::move(detail)}; }

std::string sci(double x) {
    std::ostringstream s;
    s.setf(std::ios::scientific);
    s.precision(2);
    s << x;
    return s.str();
}

std::string fmt(double x, int precision = 4) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(precision);
    s << x;
    return s.str();
}

EmbeddingMatrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    EmbeddingMatrix m(n, d);
    Rng rng(seed);
    for (float& x : m.values()) x = static_cast<float>(rng.uniform(lo, hi));
    return m;
}

// ---------------------------------------------------------------------------
// 1. Sampler vs brute-force BFS

Outcome sampler_oracle() {
    const auto start = Clock::now();
    Rng meta(20240501);
    std::size_t violations = 0;
    std::size_t sentences = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 2 + meta.below(49);
        // Densities from very sparse to fairly dense.
        const double p = std::array<double, 4>{0.03, 0.08, 0.2, 0.5}[seed % 4] * (0.5 + meta.uniform());
        const Graph g = generators::erdos_renyi(n, std::min(p, 1.0), seed);
        const std::size_t num = 1 + meta.below(15);
        SamplerWorkspace ws(n);
        Sentence s;
        for (NodeId v = 0; v < n; ++v) {
            // BFS distances up to 2 from v.
            std::vector<int> dist(n, -1);
            std::queue<NodeId> queue;
            dist[v] = 0;
            queue.push(v);
            while (!queue.empty()) {
                const NodeId u = queue.front();
                queue.pop();
                if (dist[u] == 2) continue;
                for (const NodeId w : g.neighbors(u).targets()) {
                    if (dist[w] < 0) {
                        dist[w] = dist[u] + 1;
                        queue.push(w);
                    }
                }
            }
            std::set<NodeId> one, closure;
            for (NodeId u = 0; u < n; ++u) {
                if (dist[u] == 1) one.insert(u);
                if (dist[u] == 1 || dist[u] == 2) closure.insert(u);
            }

            Rng rng(node_seed(seed, v, 0));
            sample_neighborhood(g, v, num, rng, ws, s);
            ++sentences;
            const std::vector<NodeId> tail(s.begin() + 1, s.end());
            const std::set<NodeId> tail_set(tail.begin(), tail.end());
            bool ok = s[0] == v && tail_set.size() == tail.size() && !tail_set.contains(v);
            ok = ok && std::includes(closure.begin(), closure.end(), tail_set.begin(), tail_set.end());
            if (one.size() >= num) {
                ok = ok && tail.size() == num && std::includes(one.begin(), one.end(), tail_set.begin(), tail_set.end());
            } else {
                const std::set<NodeId> head(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(
                                                                             std::min(one.size(), tail.size())));
                ok = ok && head == one && tail.size() == std::min(num, closure.size());
                if (closure.size() <= num) ok = ok && tail_set == closure;
            }
            violations += ok ? 0 : 1;
        }
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return verdict(violations == 0 && seconds < 10.0, std::to_string(violations) + " violations in " +
                                                          std::to_string(sentences) + " sentences, " + fmt(seconds, 2) +
                                                          " s (limit 10 s)");
}

// ---------------------------------------------------------------------------
// 2. SGNS gradients vs central differences

Outcome sgns_gradients() {
    const auto start = Clock::now();
    Rng rng(77);
    const double h = 1e-5;
    double worst = 0.0;
    int instances = 0;
    const std::size_t dims[] = {1, 4, 16};
    const std::size_t ks[] = {1, 5};
    for (int i = 0; i < 100; ++i, ++instances) {
        const std::size_t d = dims[i % 3];
        const std::size_t k = ks[(i / 3) % 2];
        auto draw = [&] {
            std::vector<double> v(d);
            for (double& x : v) x = rng.uniform(-1.5, 1.5);
            return v;
        };
        std::vector<double> c = draw(), ctx = draw();
        std::vector<std::vector<double>> negs;
        for (std::size_t j = 0; j < k; ++j) negs.push_back(draw());
        const auto g = sgns_loss_and_grads<double>(c, ctx, negs);
        // Independent scalar loss, written out from the definition.
        auto loss = [&] {
            auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
                double s = 0;
                for (std::size_t j = 0; j < d; ++j) s += a[j] * b[j];
                return s;
            };
            double l = -std::log(1.0 / (1.0 + std::exp(-dot(ctx, c))));
            for (const auto& neg : negs) l -= std::log(1.0 / (1.0 + std::exp(dot(neg, c))));
            return l;
        };
        auto check = [&](std::vector<double>& vec, const std::vector<double>& analytic) {
            for (std::size_t j = 0; j < d; ++j) {
                const double saved = vec[j];
                vec[j] = saved + h;
                const double up = loss();
                vec[j] = saved - h;
                const double down = loss();
                vec[j] = saved;
                const double numeric = (up - down) / (2 * h);
                worst = std::max(worst, std::abs(numeric - analytic[j]) /
                                            std::max(1e-6, std::abs(numeric) + std::abs(analytic[j])));
            }
        };
        check(c, g.center);
        check(ctx, g.context);
        for (std::size_t j = 0; j < k; ++j) check(negs[j], g.negatives[j]);
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return verdict(worst < 1e-4 && seconds < 5.0, std::to_string(instances) + " instances, worst relative error " +
                                                      sci(worst) + " (limit 1e-4), " + fmt(seconds, 3) +
                                                      " s (limit 5 s)");
}

// ---------------------------------------------------------------------------
// 3. Propagation identity, convexity and fixed point

Outcome propagation_invariants() {
    std::size_t violations = 0;
    std::size_t checks = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 10 + seed * 2;
        const bool directed = seed % 3 == 2;
        std::vector<Edge> edges = generators::erdos_renyi_edges(n, 0.15, seed, directed);
        Rng wr(seed);
        for (Edge& e : edges) e.weight = wr.uniform(0.1, 3.0);
        const Graph g = Graph::from_edges(n, edges, directed, true);
        const EmbeddingMatrix m = random_matrix(n, 5, seed);
        for (const auto method : {Aggregation::average, Aggregation::attention}) {
            ++checks;
            violations += propagate(g, m, PropagationConfig{0.0, 3, method, 1}) == m ? 0 : 1;
            ++checks;
            violations += propagate(g, m, PropagationConfig{0.4, 0, method, 1}) == m ? 0 : 1;
            const EmbeddingMatrix constant(n, 5, -0.375f);
            ++checks;
            violations += propagate(g, constant, PropagationConfig{0.6, 4, method, 1}) == constant ? 0 : 1;
        }
        const EmbeddingMatrix out = propagate(g, m, PropagationConfig{0.3, 1, Aggregation::average, 1});
        for (NodeId v = 0; v < n; ++v) {
            const auto sources = g.neighbors(v, directed ? Direction::in : Direction::out).targets();
            for (std::size_t j = 0; j < 5; ++j) {
                float lo = m(v, j), hi = m(v, j);
                for (const NodeId u : sources) {
                    lo = std::min(lo, m(u, j));
                    hi = std::max(hi, m(u, j));
                }
                ++checks;
                violations += (out(v, j) >= lo - 1e-6f && out(v, j) <= hi + 1e-6f) ? 0 : 1;
            }
        }
    }
    return verdict(violations == 0,
                   std::to_string(violations) + " violations in " + std::to_string(checks) + " checks on 20 graphs");
}

// ---------------------------------------------------------------------------
// 4. Metrics vs brute force

Outcome metric_oracles() {
    Rng rng(4242);
    auto grid = [&] { return static_cast<double>(rng.below(25)) / 8.0; };
    std::size_t mismatches = 0;
    double worst_auc = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng.below(30);
        std::vector<int> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.below(3));
            b[i] = static_cast<int>(rng.below(3));
        }
        std::size_t same = 0;
        for (std::size_t i = 0; i < n; ++i) same += a[i] == b[i] ? 1 : 0;
        mismatches += accuracy(a, b) == static_cast<double>(same) / static_cast<double>(n) ? 0 : 1;
    }
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + rng.below(40);
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = grid();
            labels[i] = i < 2 ? static_cast<int>(i) : static_cast<int>(rng.below(2));
        }
        double wins = 0, pairs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (labels[i] == 1 && labels[j] == 0) {
                    pairs += 1;
                    wins += scores[i] > scores[j] ? 1.0 : scores[i] == scores[j] ? 0.5 : 0.0;
                }
            }
        }
        worst_auc = std::max(worst_auc, std::abs(roc_auc(scores, labels) - wins / pairs));
    }
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> pos(1 + rng.below(20)), neg(1 + rng.below(30));
        for (double& x : pos) x = grid();
        for (double& x : neg) x = grid();
        const std::size_t k = 1 + rng.below(neg.size());
        std::vector<double> sorted = neg;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        std::size_t hits = 0;
        for (const double p : pos) hits += p > sorted[k - 1] ? 1 : 0;
        mismatches += hits_at_k(pos, neg, k) == static_cast<double>(hits) / static_cast<double>(pos.size()) ? 0 : 1;
    }
    for (int t = 0; t < 1000; ++t) {
        std::vector<RankingInstance> instances(1 + rng.below(6));
        double total = 0.0;
        for (auto& inst : instances) {
            inst.positive = grid();
            inst.negatives.resize(1 + rng.below(12));
            for (double& x : inst.negatives) x = grid();
            std::size_t rank = 1;
            for (const double x : inst.negatives) rank += x > inst.positive ? 1 : 0;
            total += 1.0 / static_cast<double>(rank);
        }
        mismatches += mean_reciprocal_rank(instances) == total / static_cast<double>(instances.size()) ? 0 : 1;
    }
    return verdict(mismatches == 0 && worst_auc <= 1e-9,
                   std::to_string(mismatches) + " exact mismatches (accuracy/hits/MRR), worst AUC error " +
                       sci(worst_auc) + " (limit 1e-9), 1000 instances each");
}

// ---------------------------------------------------------------------------
// 5. Karate club node classification

Outcome karate_club() {
    const auto start = Clock::now();
    const Graph g = generators::karate_club();
    EmbedOptions opts;
    opts.train.dim = 32;
    opts.train.seed = 1;
    const EmbeddingMatrix raw = embed(g, opts).embeddings;
    const EmbeddingMatrix m = propagate(g, raw, PropagationConfig{});
    const NodeLabelTask task = stratified_split(generators::karate_club_labels(), 0.5, 1);
    MlpConfig mlp;
    mlp.seed = 1;
    const EvalReport report = run_node_classification(g, m, task, mlp, 10);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return verdict(report.mean >= 0.90 && seconds < 30.0,
                   "mean test accuracy " + fmt(report.mean) + " +- " + fmt(report.std) + " over 10 runs (need >= 0.90), " +
                       fmt(seconds, 2) + " s (limit 30 s)");
}

// ---------------------------------------------------------------------------
// 6 and 7. Ring of cliques link prediction

struct RingSetup {
    LinkHoldout holdout;
    EmbeddingMatrix raw;
};

RingSetup ring_setup(std::uint64_t seed) {
    const auto edges = generators::ring_of_cliques_edges(10, 10);
    auto intra = [](const Edge& e) { return e.source / 10 == e.target / 10; };
    RingSetup s{make_link_holdout(100, edges, 0.1, seed, intra), {}};
    EmbedOptions opts;
    opts.train.dim = 32;
    opts.train.seed = seed;
    s.raw = embed(s.holdout.train_graph, opts).embeddings;
    return s;
}

double ring_auc(const RingSetup& s, const EmbeddingMatrix& m, std::uint64_t seed, std::size_t runs) {
    MlpConfig mlp;
    mlp.seed = seed;
    return run_link_prediction(s.holdout.train_graph, m, s.holdout.task, mlp, Combiner::hadamard, runs).mean;
}

Outcome ring_link_prediction() {
    const auto start = Clock::now();
    const RingSetup s = ring_setup(1);
    const EmbeddingMatrix m = propagate(s.holdout.train_graph, s.raw, PropagationConfig{});
    MlpConfig mlp;
    mlp.seed = 1;
    const EvalReport report =
        run_link_prediction(s.holdout.train_graph, m, s.holdout.task, mlp, Combiner::hadamard, 10);

    // Control: the same protocol on fresh random embeddings, one per run.
    double control = 0.0;
    for (std::size_t r = 0; r < 10; ++r) {
        const EmbeddingMatrix noise = initial_embeddings(100, 32, mix_seed(99, r));
        control += ring_auc(s, noise, 100 + r, 1);
    }
    control /= 10.0;
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const bool ok = report.mean >= 0.85 && std::abs(control - 0.5) <= 0.05 && seconds < 120.0;
    return verdict(ok, "ROC-AUC " + fmt(report.mean) + " +- " + fmt(report.std) + " (need >= 0.85), random control " +
                           fmt(control) + " (need 0.5 +- 0.05), " + fmt(seconds, 1) + " s (limit 120 s)");
}

Outcome propagation_benefit() {
    int wins = 0;
    std::ostringstream per_seed;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const RingSetup s = ring_setup(seed);
        const double base = ring_auc(s, s.raw, seed, 3);
        double best = 0.0;
        for (std::size_t it = 1; it <= 5; ++it) {
            const EmbeddingMatrix m =
                propagate(s.holdout.train_graph, s.raw, PropagationConfig{0.1, it, Aggregation::average, 1});
            best = std::max(best, ring_auc(s, m, seed, 3));
        }
        wins += best >= base ? 1 : 0;
        per_seed << (seed > 1 ? " " : "") << fmt(base, 3) << "->" << fmt(best, 3);
    }
    return verdict(wins >= 8, std::to_string(wins) + "/10 seeds with best(iterations 1..5) >= iterations 0 (need >= 8); " +
                                  per_seed.str());
}

// ---------------------------------------------------------------------------
// 8. Scalability

Outcome scalability() {
    // Thread speedup on the 100k-node graph with a reduced training workload.
    const Graph big = generators::preferential_attachment(100000, 5, 8);
    EmbedOptions opts;
    opts.n_sample = 2;
    opts.train.dim = 32;
    opts.train.epochs = 1;
    opts.train.seed = 8;
    auto total_time = [&](std::size_t threads) {
        opts.train.threads = threads;
        const EmbedStats stats = embed(big, opts).stats;
        return stats.sample_seconds + stats.train_seconds;
    };
    const double t1 = total_time(1);
    const double t4 = total_time(4);
    const double speedup = t1 / t4;

    // Corpus generation time against node count at average degree 10.
    std::vector<double> sizes, times;
    for (const std::size_t n : {10000u, 50000u, 100000u}) {
        const Graph g = n == 100000 ? big : generators::preferential_attachment(n, 5, 8);
        double best = INFINITY;
        for (int rep = 0; rep < 3; ++rep) {
            const auto start = Clock::now();
            const Corpus c = generate_corpus(g, default_num(g), 10, 8, 1);
            best = std::min(best, std::chrono::duration<double>(Clock::now() - start).count());
        }
        sizes.push_back(static_cast<double>(n));
        times.push_back(best);
    }
    const double r2 = linear_fit_r2(sizes, times);
    const unsigned cores = std::thread::hardware_concurrency();
    return verdict(speedup >= 2.5 && r2 >= 0.95,
                   "4-thread speedup " + fmt(speedup, 2) + "x (need >= 2.5x; " + fmt(t1, 2) + " s vs " + fmt(t4, 2) +
                       " s, " + std::to_string(cores) + " hardware threads available), corpus time R^2 " + fmt(r2) +
                       " (need >= 0.95; " + fmt(times[0], 3) + "/" + fmt(times[1], 3) + "/" + fmt(times[2], 3) +
                       " s at 10k/50k/100k)");
}

// ---------------------------------------------------------------------------
// 9. Optional ogbn-arxiv reproduction

Outcome arxiv() {
    const char* dir = std::getenv("NEIGHBOR2VEC_ARXIV_DIR");
    if (!dir) {
        return Outcome{Status::skip,
                       "optional; set NEIGHBOR2VEC_ARXIV_DIR to a directory with edges.txt, labels.tsv, train.txt, "
                       "valid.txt, test.txt"};
    }
    const std::filesystem::path root(dir);
    const Graph g = load_edge_list((root / "edges.txt").string());
    NodeLabelTask task;
    task.labels = load_labels((root / "labels.tsv").string(), g.num_nodes());
    task.train = load_node_split((root / "train.txt").string());
    task.valid = load_node_split((root / "valid.txt").string());
    task.test = load_node_split((root / "test.txt").string());
    task.num_classes = static_cast<std::size_t>(*std::max_element(task.labels.begin(), task.labels.end()) + 1);
    EmbedOptions opts;
    const std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    opts.train.threads = threads;
    const EmbeddingMatrix m = propagate(g, embed(g, opts).embeddings, PropagationConfig{0.1, 1, Aggregation::average, threads});
    const EvalReport report = run_node_classification(g, m, task, MlpConfig{}, 10, threads);
    return verdict(std::abs(report.mean * 100.0 - 71.79) <= 2.0,
                   "mean test accuracy " + fmt(report.mean * 100.0, 2) + " (target 71.79 +- 2.0)");
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}

int main(int argc, char** argv) {
    CLI::App app{"neighbor2vec acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "sampler oracle suite", sampler_oracle},
        {2, "sgns gradient suite", sgns_gradients},
        {3, "propagation identity/convexity suite", propagation_invariants},
        {4, "metric oracle suite", metric_oracles},
        {5, "karate club node classification", karate_club},
        {6, "ring-of-cliques link prediction", ring_link_prediction},
        {7, "propagation benefit", propagation_benefit},
        {8, "scalability", scalability},
        {9, "ogbn-arxiv reproduction", arxiv},
    };

    bool failed = false;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = Outcome{Status::fail, std::string("error: ") + e.what()};
        }
        const char* tag = outcome.status == Status::pass ? "PASS" : outcome.status == Status::skip ? "SKIP" : "FAIL";
        std::cout << "criterion " << c.id << " [" << c.name << "]: " << tag << " - " << outcome.detail << std::endl;
        failed = failed || outcome.status == Status::fail;
    }
    return failed ? 1 : 0;
}

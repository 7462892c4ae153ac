// neighbor2vec command-line driver.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "neighbor2vec/neighbor2vec.hpp"

namespace n2v = neighbor2vec;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string input;
    std::string output;
    std::string embeddings;
    std::string format = "text";
    std::string report;
    bool directed = false;
    bool weighted = false;
    bool no_dedupe = false;
    std::string comment = "#";
    std::string id_map;
    std::uint64_t seed = 1;
    std::size_t threads = 1;

    std::size_t num = 0;
    std::size_t n_sample = 10;
    bool walks = false;
    std::size_t walk_length = 40;
    std::size_t walks_per_node = 10;

    std::size_t dim = 128;
    std::size_t window = 0;
    std::size_t negatives = 5;
    double alpha = 0.025;
    double min_alpha_ratio = 0.004;
    bool fixed_alpha = false;
    std::size_t epochs = 5;
    double noise_exponent = 0.75;

    double rate = 0.1;
    std::size_t iterations = 1;
    std::string method = "average";

    std::vector<std::size_t> hidden{256, 256};
    double dropout = 0.5;
    std::size_t mlp_epochs = 100;
    double lr = 1e-3;
    std::size_t batch = 1024;
    std::size_t runs = 10;

    std::string labels;
    std::string train_split;
    std::string valid_split;
    std::string test_split;
    double train_fraction = 0.5;

    std::string train_edges;
    std::string valid_pos;
    std::string valid_neg;
    std::string valid_candidates;
    std::string test_pos;
    std::string test_neg;
    std::string test_candidates;
    std::string metric = "roc_auc";
    std::string combiner = "hadamard";
    double holdout = 0.1;

    std::string task = "node";
    std::string param;
    std::vector<std::string> values;

    std::vector<std::size_t> bench_threads{1};
    std::vector<std::size_t> bench_nodes;
    double bench_degree = 10.0;
    std::size_t repeats = 1;
};

/// Thrown for bad command-line usage that CLI11 itself cannot detect.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_options(CLI::App& app, RunConfig& c) {
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "Read options from a 'key = value' file (command-line flags win)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    const std::string io = "Input/output";
    app.add_option("--input,-i", c.input, "Edge list (one 'u v [w]' per line)")->group(io);
    app.add_option("--output,-o", c.output, "Output path (stdout for reports when empty)")->group(io);
    app.add_option("--embeddings,-e", c.embeddings, "Embedding file to read")->group(io);
    app.add_option("--format", c.format, "Embedding file format")
        ->check(CLI::IsMember({"text", "binary"}))
        ->group(io);
    app.add_option("--report", c.report, "Write the JSON report here instead of stdout")->group(io);
    app.add_flag("--directed", c.directed, "Treat the edge list as directed")->group(io);
    app.add_flag("--weighted", c.weighted, "Read a third weight column")->group(io);
    app.add_flag("--no-dedupe", c.no_dedupe, "Keep parallel edges")->group(io);
    app.add_option("--comment", c.comment, "Comment prefix character")->group(io);
    app.add_option("--id-map", c.id_map, "'name<TAB>id' map used to resolve names in task files")->group(io);
    app.add_option("--seed", c.seed, "Seed for every random stream")->group(io);
    app.add_option("--threads", c.threads, "Worker threads")
        ->envname("NEIGHBOR2VEC_THREADS")
        ->check(CLI::PositiveNumber)
        ->group(io);

    const std::string sampling = "Sampling";
    app.add_option("--num", c.num, "Neighbors per sentence (0 = max(8, ceil(avg degree)))")->group(sampling);
    app.add_option("--n-sample", c.n_sample, "Sentences per node")->group(sampling);
    app.add_flag("--walks", c.walks, "sample: emit uniform random walks instead")->group(sampling);
    app.add_option("--walk-length", c.walk_length, "Random walk length")->group(sampling);
    app.add_option("--walks-per-node", c.walks_per_node, "Random walks started per node")->group(sampling);

    const std::string training = "Training";
    app.add_option("--dim", c.dim, "Embedding dimension")->group(training);
    app.add_option("--window", c.window, "Context window (0 = whole sentence)")->group(training);
    app.add_option("--negatives", c.negatives, "Negative samples per pair")->group(training);
    app.add_option("--alpha", c.alpha, "Initial learning rate")->group(training);
    app.add_option("--min-alpha-ratio", c.min_alpha_ratio, "Final learning rate as a fraction of alpha")
        ->group(training);
    app.add_flag("--fixed-alpha", c.fixed_alpha, "Disable learning-rate decay")->group(training);
    app.add_option("--epochs", c.epochs, "Passes over the corpus")->group(training);
    app.add_option("--noise-exponent", c.noise_exponent, "Noise distribution exponent")->group(training);

    const std::string propagation = "Propagation";
    app.add_option("--rate", c.rate, "Propagation rate r")->check(CLI::Range(0.0, 1.0))->group(propagation);
    app.add_option("--iterations", c.iterations, "Propagation iterations")->group(propagation);
    app.add_option("--method", c.method, "Aggregation")
        ->check(CLI::IsMember({"average", "attention"}))
        ->group(propagation);

    const std::string mlp = "Classifier";
    app.add_option("--hidden", c.hidden, "Two hidden layer widths")->expected(2)->group(mlp);
    app.add_option("--dropout", c.dropout, "Dropout rate")->group(mlp);
    app.add_option("--mlp-epochs", c.mlp_epochs, "Classifier epochs")->group(mlp);
    app.add_option("--lr", c.lr, "Classifier learning rate (Adam)")->group(mlp);
    app.add_option("--batch", c.batch, "Classifier batch size")->group(mlp);
    app.add_option("--runs", c.runs, "Independent evaluation runs")->group(mlp);

    const std::string node = "Node task";
    app.add_option("--labels", c.labels, "'node<TAB>class' label file")->group(node);
    app.add_option("--train", c.train_split, "Train node ids")->group(node);
    app.add_option("--valid", c.valid_split, "Validation node ids")->group(node);
    app.add_option("--test", c.test_split, "Test node ids")->group(node);
    app.add_option("--train-fraction", c.train_fraction, "Stratified train share when no split files are given")
        ->group(node);

    const std::string link = "Link task";
    app.add_option("--train-edges", c.train_edges, "Training positive pairs (default: all graph edges)")
        ->group(link);
    app.add_option("--valid-pos", c.valid_pos, "Validation positive pairs")->group(link);
    app.add_option("--valid-neg", c.valid_neg, "Validation negative pairs")->group(link);
    app.add_option("--valid-candidates", c.valid_candidates, "Validation MRR candidate lists")->group(link);
    app.add_option("--test-pos", c.test_pos, "Test positive pairs")->group(link);
    app.add_option("--test-neg", c.test_neg, "Test negative pairs")->group(link);
    app.add_option("--test-candidates", c.test_candidates, "Test MRR candidate lists")->group(link);
    app.add_option("--metric", c.metric, "roc_auc, mrr or hits@K")->group(link);
    app.add_option("--combiner", c.combiner, "Pair feature")
        ->check(CLI::IsMember({"hadamard", "average", "abs-diff", "squared-diff"}))
        ->group(link);
    app.add_option("--holdout", c.holdout, "sweep: edge fraction held out when no link files are given")
        ->group(link);

    const std::string sweep = "Sweep";
    app.add_option("--task", c.task, "Evaluation used by sweep")
        ->check(CLI::IsMember({"node", "link"}))
        ->group(sweep);
    app.add_option("--param", c.param, "Swept option name, e.g. dim or rate")->group(sweep);
    app.add_option("--values", c.values, "Values of the swept option")->group(sweep);

    const std::string bench = "Benchmark";
    app.add_option("--bench-threads", c.bench_threads, "Thread counts to time")->group(bench);
    app.add_option("--bench-nodes", c.bench_nodes, "Synthetic graph sizes (instead of --input)")->group(bench);
    app.add_option("--bench-degree", c.bench_degree, "Average degree of synthetic graphs")->group(bench);
    app.add_option("--repeats", c.repeats, "Timing repeats (minimum is reported)")->group(bench);
}

// ---------------------------------------------------------------------------

void require_option(const std::string& value, const char* flag, const char* command) {
    if (value.empty()) {
        throw UsageError(std::string(command) + " requires " + flag);
    }
}

n2v::EmbeddingFormat embedding_format(const RunConfig& c) {
    return c.format == "binary" ? n2v::EmbeddingFormat::binary : n2v::EmbeddingFormat::text;
}

n2v::Graph load_graph(const RunConfig& c) {
    require_option(c.input, "--input", "this command");
    if (c.comment.size() != 1) {
        throw UsageError("--comment must be a single character");
    }
    return n2v::load_edge_list(c.input, n2v::IngestOptions{c.directed, c.weighted, c.comment[0], !c.no_dedupe});
}

n2v::EmbedOptions embed_options(const RunConfig& c) {
    n2v::EmbedOptions opts;
    opts.num = c.num;
    opts.n_sample = c.n_sample;
    opts.train.dim = c.dim;
    opts.train.window = c.window;
    opts.train.negatives = c.negatives;
    opts.train.alpha = c.alpha;
    opts.train.min_alpha_ratio = c.min_alpha_ratio;
    opts.train.linear_decay = !c.fixed_alpha;
    opts.train.epochs = c.epochs;
    opts.train.noise_exponent = c.noise_exponent;
    opts.train.seed = c.seed;
    opts.train.threads = c.threads;
    return opts;
}

n2v::PropagationConfig propagation_config(const RunConfig& c) {
    return n2v::PropagationConfig{c.rate, c.iterations, n2v::parse_aggregation(c.method), c.threads};
}

n2v::MlpConfig mlp_config(const RunConfig& c) {
    n2v::MlpConfig cfg;
    cfg.hidden = {c.hidden.at(0), c.hidden.at(1)};
    cfg.dropout = c.dropout;
    cfg.epochs = c.mlp_epochs;
    cfg.lr = c.lr;
    cfg.batch = c.batch;
    cfg.seed = c.seed;
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw n2v::Error(n2v::ErrorCategory::io, "cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw n2v::Error(n2v::ErrorCategory::io, "failed writing '" + path + "'");
    }
}

/// The resolved configuration as 'key = value' lines, loadable with --config.
std::string config_echo(const CLI::App& app) {
    std::string text = app.config_to_str(true, false);
    std::istringstream in(text);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (line.empty() || line.front() == '[' || eq == std::string::npos) {
            continue;
        }
        std::string value = line.substr(eq + 1);
        if (value == "\"{}\"") {
            continue;  // empty list
        }
        if (value.size() > 2 && value.starts_with("\"[") && value.ends_with("]\"")) {
            value = value.substr(1, value.size() - 2);
        }
        out += line.substr(0, eq) + " = " + value + '\n';
    }
    return out;
}

json config_json(const std::string& echo) {
    json j = json::object();
    std::istringstream in(echo);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        j[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return j;
}

const std::unordered_map<std::string, n2v::NodeId>* id_map(const RunConfig& c,
                                                           std::optional<std::unordered_map<std::string, n2v::NodeId>>& storage) {
    if (c.id_map.empty()) {
        return nullptr;
    }
    storage = n2v::load_node_id_map(c.id_map);
    return &*storage;
}

n2v::NodeLabelTask node_task(const RunConfig& c, std::size_t num_nodes) {
    require_option(c.labels, "--labels", "node evaluation");
    std::optional<std::unordered_map<std::string, n2v::NodeId>> storage;
    const auto* ids = id_map(c, storage);
    const auto labels = n2v::load_labels(c.labels, num_nodes, ids);
    if (c.train_split.empty() && c.test_split.empty()) {
        return n2v::stratified_split(labels, c.train_fraction, c.seed);
    }
    require_option(c.train_split, "--train", "node evaluation with split files");
    require_option(c.test_split, "--test", "node evaluation with split files");
    n2v::NodeLabelTask task;
    task.labels = labels;
    task.train = n2v::load_node_split(c.train_split, ids);
    task.test = n2v::load_node_split(c.test_split, ids);
    if (!c.valid_split.empty()) {
        task.valid = n2v::load_node_split(c.valid_split, ids);
    }
    task.num_classes = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end()) + 1);
    return task;
}

n2v::LinkTask link_task(const RunConfig& c) {
    require_option(c.test_pos, "--test-pos", "link evaluation");
    std::optional<std::unordered_map<std::string, n2v::NodeId>> storage;
    const auto* ids = id_map(c, storage);
    n2v::LinkTask task;
    task.metric = n2v::parse_link_metric(c.metric);
    auto pairs = [&](const std::string& path) {
        return path.empty() ? std::vector<n2v::NodePair>{} : n2v::load_edge_split(path, ids);
    };
    auto lists = [&](const std::string& path) {
        return path.empty() ? std::vector<std::vector<n2v::NodeId>>{} : n2v::load_candidate_lists(path, ids);
    };
    task.train_edges = pairs(c.train_edges);
    task.valid_pos = pairs(c.valid_pos);
    task.valid_neg = pairs(c.valid_neg);
    task.valid_candidates = lists(c.valid_candidates);
    task.test_pos = pairs(c.test_pos);
    task.test_neg = pairs(c.test_neg);
    task.test_candidates = lists(c.test_candidates);
    return task;
}

n2v::EmbeddingMatrix read_matching_embeddings(const RunConfig& c, const n2v::Graph& g) {
    require_option(c.embeddings, "--embeddings", "this command");
    n2v::EmbeddingMatrix m = n2v::read_embeddings(c.embeddings, embedding_format(c));
    if (m.rows() != g.num_nodes()) {
        throw n2v::Error(n2v::ErrorCategory::invalid_argument,
                         "'" + c.embeddings + "' has " + std::to_string(m.rows()) + " rows but the graph has " +
                             std::to_string(g.num_nodes()) + " nodes");
    }
    return m;
}

void emit_report(const RunConfig& c, n2v::EvalReport report, const std::string& echo) {
    report.config["resolved"] = config_json(echo);
    write_text(c.report.empty() ? c.output : c.report, report.to_json().dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_sample(const RunConfig& c) {
    require_option(c.output, "--output", "sample");
    const n2v::Graph g = load_graph(c);
    const auto start = std::chrono::steady_clock::now();
    n2v::Corpus corpus;
    json stats{{"average_degree", g.average_degree()}};
    if (c.walks) {
        corpus = n2v::baseline_random_walk_corpus(g, c.walk_length, c.walks_per_node, n2v::corpus_seed(c.seed));
    } else {
        const std::size_t num = c.num == 0 ? n2v::default_num(g) : c.num;
        stats["num"] = num;
        corpus = n2v::generate_corpus(g, num, c.n_sample, n2v::corpus_seed(c.seed), c.threads);
    }
    stats["seconds"] = n2v::seconds_since(start);
    stats["sentences"] = corpus.size();
    stats["tokens"] = corpus.token_count();
    n2v::write_corpus(corpus, c.output);
    std::cerr << "stats: " << stats.dump() << "\n";
}

void cmd_embed(const RunConfig& c) {
    require_option(c.output, "--output", "embed");
    const n2v::Graph g = load_graph(c);
    const n2v::EmbedResult result = n2v::embed(g, embed_options(c));
    n2v::write_embeddings(result.embeddings, c.output, embedding_format(c));
    std::cerr << "stats: " << n2v::to_json(result.stats).dump() << "\n";
}

void cmd_propagate(const RunConfig& c) {
    require_option(c.output, "--output", "propagate");
    const n2v::Graph g = load_graph(c);
    const n2v::EmbeddingMatrix m = read_matching_embeddings(c, g);
    const n2v::PropagationConfig cfg = propagation_config(c);
    const auto start = std::chrono::steady_clock::now();
    if (cfg.rate == 0.0 || cfg.iterations == 0) {
        // Nothing changes, so keep the input bytes untouched.
        if (!std::filesystem::exists(c.output) || !std::filesystem::equivalent(c.embeddings, c.output)) {
            std::filesystem::copy_file(c.embeddings, c.output, std::filesystem::copy_options::overwrite_existing);
        }
    } else {
        n2v::write_embeddings(n2v::propagate(g, m, cfg), c.output, embedding_format(c));
    }
    std::cerr << "stats: " << json{{"seconds", n2v::seconds_since(start)}}.dump() << "\n";
}

void cmd_eval_node(const RunConfig& c, const std::string& echo) {
    const n2v::Graph g = load_graph(c);
    const n2v::EmbeddingMatrix m = read_matching_embeddings(c, g);
    const n2v::NodeLabelTask task = node_task(c, g.num_nodes());
    emit_report(c, n2v::run_node_classification(g, m, task, mlp_config(c), c.runs, c.threads), echo);
}

void cmd_eval_link(const RunConfig& c, const std::string& echo) {
    const n2v::Graph g = load_graph(c);
    const n2v::EmbeddingMatrix m = read_matching_embeddings(c, g);
    const n2v::LinkTask task = link_task(c);
    emit_report(c,
                n2v::run_link_prediction(g, m, task, mlp_config(c), n2v::parse_combiner(c.combiner), c.runs,
                                         c.threads),
                echo);
}

template <typename T>
T parse_value(const std::string& param, const std::string& text) {
    T value{};
    if (!n2v::detail::parse_number(text, value)) {
        throw UsageError("invalid value '" + text + "' for swept option " + param);
    }
    return value;
}

/// Sets the swept option; returns true when the change affects the embedding.
bool apply_sweep_value(RunConfig& c, const std::string& param, const std::string& value) {
    if (param == "rate") {
        c.rate = parse_value<double>(param, value);
        if (c.rate < 0.0 || c.rate > 1.0) throw UsageError("rate must lie in [0, 1]");
        return false;
    }
    if (param == "iterations") {
        c.iterations = parse_value<std::size_t>(param, value);
        return false;
    }
    if (param == "method") {
        n2v::parse_aggregation(value);
        c.method = value;
        return false;
    }
    if (param == "dim") c.dim = parse_value<std::size_t>(param, value);
    else if (param == "num") c.num = parse_value<std::size_t>(param, value);
    else if (param == "n-sample") c.n_sample = parse_value<std::size_t>(param, value);
    else if (param == "window") c.window = parse_value<std::size_t>(param, value);
    else if (param == "negatives") c.negatives = parse_value<std::size_t>(param, value);
    else if (param == "epochs") c.epochs = parse_value<std::size_t>(param, value);
    else if (param == "alpha") c.alpha = parse_value<double>(param, value);
    else throw UsageError("cannot sweep '" + param + "' (use dim, num, n-sample, window, negatives, epochs, alpha, "
                          "rate, iterations or method)");
    return true;
}

void cmd_sweep(const RunConfig& base) {
    if (base.param.empty() || base.values.empty()) {
        throw UsageError("sweep requires --param and --values");
    }
    const n2v::Graph input = load_graph(base);
    const bool link = base.task == "link";

    // Link sweeps without task files hold out edges from the input graph.
    n2v::Graph graph = input;
    n2v::LinkTask ltask;
    n2v::NodeLabelTask ntask;
    if (link) {
        if (base.test_pos.empty()) {
            if (input.directed()) {
                throw UsageError("edge holdout supports undirected graphs only; pass --test-pos instead");
            }
            n2v::LinkHoldout h = n2v::make_link_holdout(input.num_nodes(), input.edges(), base.holdout, base.seed);
            graph = std::move(h.train_graph);
            ltask = std::move(h.task);
            ltask.metric = n2v::parse_link_metric(base.metric);
        } else {
            ltask = link_task(base);
        }
    } else {
        ntask = node_task(base, input.num_nodes());
    }

    std::ostringstream table;
    table << "param,value,metric,mean,std,runs\n";
    std::optional<n2v::EmbeddingMatrix> cached;
    for (const std::string& value : base.values) {
        RunConfig c = base;
        const bool affects_embedding = apply_sweep_value(c, base.param, value);
        if (affects_embedding || !cached) {
            n2v::EmbedResult result = n2v::embed(graph, embed_options(c));
            std::cerr << "stats[" << base.param << "=" << value << "]: " << n2v::to_json(result.stats).dump() << "\n";
            cached = std::move(result.embeddings);
        }
        const n2v::EmbeddingMatrix smoothed = n2v::propagate(graph, *cached, propagation_config(c));
        const n2v::EvalReport report =
            link ? n2v::run_link_prediction(graph, smoothed, ltask, mlp_config(c), n2v::parse_combiner(c.combiner),
                                            c.runs, c.threads)
                 : n2v::run_node_classification(graph, smoothed, ntask, mlp_config(c), c.runs, c.threads);
        table << base.param << ',' << value << ',' << report.metric << ',' << report.mean << ',' << report.std << ','
              << report.runs << '\n';
        if (affects_embedding) {
            cached.reset();
        }
    }
    write_text(base.output, table.str());
}

void cmd_bench(const RunConfig& c) {
    if (c.bench_threads.empty() || c.repeats == 0) {
        throw UsageError("bench needs at least one thread count and one repeat");
    }
    struct Target {
        std::string name;
        n2v::Graph graph;
    };
    std::vector<Target> targets;
    if (c.bench_nodes.empty()) {
        targets.push_back(Target{c.input, load_graph(c)});
    } else {
        const auto m = static_cast<std::size_t>(std::max(1.0, std::round(c.bench_degree / 2.0)));
        for (const std::size_t n : c.bench_nodes) {
            targets.push_back(Target{"pa-" + std::to_string(n), n2v::generators::preferential_attachment(n, m, c.seed)});
        }
    }

    std::ostringstream table;
    table << "graph,nodes,edges,threads,sample_seconds,train_seconds,total_seconds,speedup\n";
    std::vector<double> sizes;
    std::vector<double> sample_times;
    for (const Target& target : targets) {
        double baseline = 0.0;
        for (std::size_t i = 0; i < c.bench_threads.size(); ++i) {
            RunConfig run = c;
            run.threads = c.bench_threads[i];
            double sample = std::numeric_limits<double>::infinity();
            double train = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < c.repeats; ++r) {
                const n2v::EmbedResult result = n2v::embed(target.graph, embed_options(run));
                sample = std::min(sample, result.stats.sample_seconds);
                train = std::min(train, result.stats.train_seconds);
            }
            const double total = sample + train;
            if (i == 0) {
                baseline = total;
                sizes.push_back(static_cast<double>(target.graph.num_nodes()));
                sample_times.push_back(sample);
            }
            table << target.name << ',' << target.graph.num_nodes() << ',' << target.graph.num_edges() << ','
                  << run.threads << ',' << sample << ',' << train << ',' << total << ',' << baseline / total << '\n';
        }
    }
    write_text(c.output, table.str());
    if (sizes.size() >= 2) {
        std::cerr << "stats: " << json{{"corpus_time_linear_r2", n2v::linear_fit_r2(sizes, sample_times)}}.dump()
                  << "\n";
    }
}

int exit_code(n2v::ErrorCategory category) {
    switch (category) {
        case n2v::ErrorCategory::invalid_argument: return 3;
        case n2v::ErrorCategory::io: return 4;
        case n2v::ErrorCategory::parse: return 5;
        case n2v::ErrorCategory::numeric: return 6;
    }
    return 1;
}

int fail(std::string_view category, std::string message, int code) {
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "error[" << category << "]: " << message << std::endl;
    return code;
}

}

int main(int argc, char** argv) {
    CLI::App app{"neighbor2vec: graph embeddings from sampled neighborhoods"};
    app.name("neighbor2vec");
    RunConfig config;
    add_options(app, config);
    app.require_subcommand(1, 1);

    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"sample", "Write the neighborhood corpus (one sentence per line)"},
        {"embed", "Sample and train embeddings"},
        {"propagate", "Smooth embeddings over the graph"},
        {"eval-node", "Node classification with the multi-run MLP protocol"},
        {"eval-link", "Link prediction with the multi-run MLP protocol"},
        {"sweep", "Embed, propagate and evaluate for each value of one option"},
        {"bench", "Time sampling and training per thread count"},
    };
    for (const auto& cmd : commands) {
        app.add_subcommand(cmd.name, cmd.help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const std::string echo = config_echo(app);
    std::cerr << "# neighbor2vec " << command << " resolved config\n" << echo;

    try {
        if (command == "sample") cmd_sample(config);
        else if (command == "embed") cmd_embed(config);
        else if (command == "propagate") cmd_propagate(config);
        else if (command == "eval-node") cmd_eval_node(config, echo);
        else if (command == "eval-link") cmd_eval_link(config, echo);
        else if (command == "sweep") cmd_sweep(config);
        else if (command == "bench") cmd_bench(config);
    } catch (const UsageError& e) {
        return fail("usage", e.what(), 2);
    } catch (const n2v::Error& e) {
        return fail(n2v::to_string(e.category()), e.what(), exit_code(e.category()));
    } catch (const std::filesystem::filesystem_error& e) {
        return fail("io", e.what(), 4);
    } catch (const std::bad_alloc&) {
        return fail("resource", "out of memory", 7);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}

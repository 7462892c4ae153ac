#ifndef NEIGHBOR2VEC_MLP_HPP
#define NEIGHBOR2VEC_MLP_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "random.hpp"

namespace neighbor2vec {

struct MlpConfig {
    /// Two hidden layers, so three weight layers in total.
    std::array<std::size_t, 2> hidden{256, 256};
    double dropout = 0.5;
    std::size_t epochs = 100;
    double lr = 1e-3;
    std::size_t batch = 1024;
    std::uint64_t seed = 0;
};

/**
 * Three-layer perceptron: input -> ReLU -> ReLU -> softmax over classes.
 * Samples are columns. Dropout (inverted) follows each hidden activation
 * during training only.
 */
template <typename Scalar>
class Mlp {
public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    static constexpr std::size_t num_layers = 3;

    struct Parameters {
        std::array<Matrix, num_layers> weights;
        std::array<Vector, num_layers> biases;
    };

    Mlp() = default;

    /// Weights and biases ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
    Mlp(std::size_t input_dim, std::array<std::size_t, 2> hidden, std::size_t classes, std::uint64_t seed) {
        require(input_dim >= 1 && hidden[0] >= 1 && hidden[1] >= 1, "MLP layer sizes must be positive");
        require(classes >= 2, "MLP needs at least two classes");
        const std::array<std::size_t, num_layers + 1> sizes{input_dim, hidden[0], hidden[1], classes};
        Rng rng(seed);
        for (std::size_t l = 0; l < num_layers; ++l) {
            const double bound = 1.0 / std::sqrt(static_cast<double>(sizes[l]));
            Matrix w(sizes[l + 1], sizes[l]);
            Vector b(sizes[l + 1]);
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                w.data()[i] = static_cast<Scalar>(rng.uniform(-bound, bound));
            }
            for (Eigen::Index i = 0; i < b.size(); ++i) {
                b[i] = static_cast<Scalar>(rng.uniform(-bound, bound));
            }
            params_.weights[l] = std::move(w);
            params_.biases[l] = std::move(b);
        }
    }

    std::size_t input_dim() const { return static_cast<std::size_t>(params_.weights[0].cols()); }
    std::size_t classes() const { return static_cast<std::size_t>(params_.weights[2].rows()); }

    Parameters& parameters() { return params_; }
    const Parameters& parameters() const { return params_; }

    /// classes x batch matrix of class probabilities.
    Matrix predict_proba(const Matrix& x) const {
        Matrix h1 = ((params_.weights[0] * x).colwise() + params_.biases[0]).cwiseMax(Scalar(0));
        Matrix h2 = ((params_.weights[1] * h1).colwise() + params_.biases[1]).cwiseMax(Scalar(0));
        Matrix logits = (params_.weights[2] * h2).colwise() + params_.biases[2];
        softmax_columns(logits);
        return logits;
    }

    std::vector<int> predict(const Matrix& x) const {
        const Matrix p = predict_proba(x);
        std::vector<int> out(static_cast<std::size_t>(p.cols()));
        for (Eigen::Index c = 0; c < p.cols(); ++c) {
            Eigen::Index best = 0;
            p.col(c).maxCoeff(&best);
            out[static_cast<std::size_t>(c)] = static_cast<int>(best);
        }
        return out;
    }

    /**
     * Mean cross-entropy over the columns of x and its exact gradient. With
     * dropout > 0 masks are drawn from `rng`; pass dropout = 0 for a
     * deterministic evaluation.
     */
    Scalar loss_and_gradients(const Matrix& x, std::span<const int> labels, Parameters& grads, double dropout,
                              Rng& rng) const {
        const Eigen::Index batch = x.cols();
        require(static_cast<std::size_t>(batch) == labels.size(), "MLP batch/label size mismatch");

        Matrix z1 = (params_.weights[0] * x).colwise() + params_.biases[0];
        Matrix a1 = z1.cwiseMax(Scalar(0));
        Matrix mask1;
        if (dropout > 0.0) {
            mask1 = dropout_mask(a1.rows(), a1.cols(), dropout, rng);
            a1 = a1.cwiseProduct(mask1);
        }
        Matrix z2 = (params_.weights[1] * a1).colwise() + params_.biases[1];
        Matrix a2 = z2.cwiseMax(Scalar(0));
        Matrix mask2;
        if (dropout > 0.0) {
            mask2 = dropout_mask(a2.rows(), a2.cols(), dropout, rng);
            a2 = a2.cwiseProduct(mask2);
        }
        Matrix probs = (params_.weights[2] * a2).colwise() + params_.biases[2];
        softmax_columns(probs);

        Scalar loss = 0;
        const auto classes = probs.rows();
        for (Eigen::Index c = 0; c < batch; ++c) {
            const int y = labels[static_cast<std::size_t>(c)];
            if (y < 0 || y >= classes) {
                throw Error(ErrorCategory::invalid_argument,
                            "class id " + std::to_string(y) + " outside [0, " + std::to_string(classes) + ")");
            }
            loss -= std::log(std::max(probs(y, c), std::numeric_limits<Scalar>::min()));
            probs(y, c) -= Scalar(1);
        }
        const Scalar inv = Scalar(1) / static_cast<Scalar>(batch);
        loss *= inv;
        Matrix delta3 = probs * inv;

        grads.weights[2] = delta3 * a2.transpose();
        grads.biases[2] = delta3.rowwise().sum();
        Matrix delta2 = params_.weights[2].transpose() * delta3;
        if (dropout > 0.0) {
            delta2 = delta2.cwiseProduct(mask2);
        }
        delta2 = delta2.cwiseProduct(relu_derivative(z2));
        grads.weights[1] = delta2 * a1.transpose();
        grads.biases[1] = delta2.rowwise().sum();
        Matrix delta1 = params_.weights[1].transpose() * delta2;
        if (dropout > 0.0) {
            delta1 = delta1.cwiseProduct(mask1);
        }
        delta1 = delta1.cwiseProduct(relu_derivative(z1));
        grads.weights[0] = delta1 * x.transpose();
        grads.biases[0] = delta1.rowwise().sum();
        return loss;
    }

private:
    static void softmax_columns(Matrix& logits) {
        for (Eigen::Index c = 0; c < logits.cols(); ++c) {
            auto col = logits.col(c);
            col.array() -= col.maxCoeff();
            col = col.array().exp().matrix();
            col /= col.sum();
        }
    }

    static Matrix relu_derivative(const Matrix& z) {
        return (z.array() > Scalar(0)).template cast<Scalar>().matrix();
    }

    static Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double dropout, Rng& rng) {
        const Scalar scale = static_cast<Scalar>(1.0 / (1.0 - dropout));
        Matrix mask(rows, cols);
        for (Eigen::Index i = 0; i < mask.size(); ++i) {
            mask.data()[i] = rng.uniform() < dropout ? Scalar(0) : scale;
        }
        return mask;
    }

    Parameters params_;
};

/// Adam with the usual defaults (beta1 0.9, beta2 0.999, eps 1e-8).
template <typename Scalar>
class AdamOptimizer {
public:
    using Parameters = typename Mlp<Scalar>::Parameters;

    AdamOptimizer(const Parameters& shape, double lr) : lr_(lr) {
        for (std::size_t l = 0; l < Mlp<Scalar>::num_layers; ++l) {
            m_.weights[l] = Mlp<Scalar>::Matrix::Zero(shape.weights[l].rows(), shape.weights[l].cols());
            v_.weights[l] = m_.weights[l];
            m_.biases[l] = Mlp<Scalar>::Vector::Zero(shape.biases[l].size());
            v_.biases[l] = m_.biases[l];
        }
    }

    void step(Parameters& params, const Parameters& grads) {
        ++t_;
        const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
        const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
        const auto step_size = static_cast<Scalar>(lr_ * std::sqrt(c2) / c1);
        const auto b1 = static_cast<Scalar>(beta1);
        const auto b2 = static_cast<Scalar>(beta2);
        const auto eps = static_cast<Scalar>(epsilon * std::sqrt(c2));
        auto update = [&](auto& p, auto& m, auto& v, const auto& g) {
            m = b1 * m + (Scalar(1) - b1) * g;
            v = b2 * v + (Scalar(1) - b2) * g.cwiseProduct(g);
            p.array() -= step_size * m.array() / (v.array().sqrt() + eps);
        };
        for (std::size_t l = 0; l < Mlp<Scalar>::num_layers; ++l) {
            update(params.weights[l], m_.weights[l], v_.weights[l], grads.weights[l]);
            update(params.biases[l], m_.biases[l], v_.biases[l], grads.biases[l]);
        }
    }

private:
    static constexpr double beta1 = 0.9;
    static constexpr double beta2 = 0.999;
    static constexpr double epsilon = 1e-8;

    double lr_;
    std::uint64_t t_ = 0;
    Parameters m_;
    Parameters v_;
};

using MlpModel = Mlp<float>;
using FeatureMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic>;

struct MlpTrainingLog {
    std::vector<double> epoch_loss;
    /// 0 means the untrained model; epoch e >= 1 is the state after e epochs.
    std::size_t selected_epoch = 0;
    double selected_score = std::numeric_limits<double>::quiet_NaN();
};

/**
 * Mini-batch Adam on the training columns only.
 *
 * `features` holds one sample per column and `labels` one class per column;
 * only columns listed in `train` are ever read for gradients. When
 * `validation_score` is given the returned model is the checkpoint with the
 * highest score across epochs (ties keep the earlier one); otherwise the
 * final model is returned.
 */
inline MlpModel train_mlp(const FeatureMatrix& features, std::span<const int> labels, std::span<const std::size_t> train,
                          std::size_t num_classes, const MlpConfig& cfg,
                          const std::function<double(const MlpModel&)>& validation_score = {},
                          MlpTrainingLog* log = nullptr) {
    require(static_cast<std::size_t>(features.cols()) == labels.size(), "feature/label count mismatch");
    require(cfg.dropout >= 0.0 && cfg.dropout < 1.0, "dropout must lie in [0, 1)");
    require(cfg.batch >= 1, "batch size must be at least 1");
    for (const std::size_t i : train) {
        require(i < labels.size(), "training index out of range");
        const int y = labels[i];
        if (y < 0 || static_cast<std::size_t>(y) >= num_classes) {
            throw Error(ErrorCategory::invalid_argument, "class id " + std::to_string(y) +
                                                             " outside [0, " + std::to_string(num_classes) + ")");
        }
        if (!features.col(static_cast<Eigen::Index>(i)).allFinite()) {
            throw Error(ErrorCategory::numeric, "non-finite feature in training row " + std::to_string(i));
        }
    }

    MlpModel model(static_cast<std::size_t>(features.rows()), cfg.hidden, num_classes, mix_seed(cfg.seed, 0));
    MlpTrainingLog local_log;
    MlpTrainingLog& out_log = log ? *log : local_log;
    out_log = MlpTrainingLog{};

    MlpModel best = model;
    if (validation_score) {
        out_log.selected_score = validation_score(model);
    }
    if (train.empty() || cfg.epochs == 0) {
        return model;
    }

    AdamOptimizer<float> optimizer(model.parameters(), cfg.lr);
    MlpModel::Parameters grads;
    Rng rng(mix_seed(cfg.seed, 1));
    std::vector<std::size_t> order(train.begin(), train.end());
    FeatureMatrix batch_x;
    std::vector<int> batch_y;
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        shuffle(std::span<std::size_t>(order), rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch) {
            const std::size_t count = std::min(cfg.batch, order.size() - start);
            batch_x.resize(features.rows(), static_cast<Eigen::Index>(count));
            batch_y.resize(count);
            for (std::size_t k = 0; k < count; ++k) {
                batch_x.col(static_cast<Eigen::Index>(k)) = features.col(static_cast<Eigen::Index>(order[start + k]));
                batch_y[k] = labels[order[start + k]];
            }
            const float loss = model.loss_and_gradients(batch_x, batch_y, grads, cfg.dropout, rng);
            if (!std::isfinite(loss)) {
                throw Error(ErrorCategory::numeric, "MLP loss became non-finite in epoch " + std::to_string(epoch));
            }
            epoch_loss += static_cast<double>(loss) * static_cast<double>(count);
            optimizer.step(model.parameters(), grads);
        }
        out_log.epoch_loss.push_back(epoch_loss / static_cast<double>(order.size()));
        if (validation_score) {
            const double score = validation_score(model);
            if (score > out_log.selected_score || std::isnan(out_log.selected_score)) {
                out_log.selected_score = score;
                out_log.selected_epoch = epoch;
                best = model;
            }
        }
    }
    if (!validation_score) {
        out_log.selected_epoch = cfg.epochs;
        return model;
    }
    return best;
}

}

#endif

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "neighbor2vec/metrics.hpp"
#include "neighbor2vec/mlp.hpp"
#include "neighbor2vec/random.hpp"

using namespace neighbor2vec;

namespace {

struct Dataset {
    FeatureMatrix x;
    std::vector<int> y;
    std::vector<std::size_t> all;
};

Dataset blobs(std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    Dataset data{FeatureMatrix(d, n), std::vector<int>(n), std::vector<std::size_t>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 2);
        for (std::size_t j = 0; j < d; ++j) {
            const double center = label == 0 ? -1.5 : 1.5;
            data.x(j, i) = static_cast<float>(center + rng.uniform(-1.0, 1.0));
        }
        data.y[i] = label;
        data.all[i] = i;
    }
    return data;
}

Dataset xor_points() {
    const float pts[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const int labels[4] = {0, 1, 1, 0};
    Dataset data{FeatureMatrix(2, 400), std::vector<int>(400), std::vector<std::size_t>(400)};
    for (std::size_t i = 0; i < 400; ++i) {
        data.x(0, i) = pts[i % 4][0];
        data.x(1, i) = pts[i % 4][1];
        data.y[i] = labels[i % 4];
        data.all[i] = i;
    }
    return data;
}

double train_accuracy(const MlpModel& model, const Dataset& data) {
    return accuracy(model.predict(data.x), data.y);
}

}

TEST(Mlp, SeparableBlobs) {
    const Dataset data = blobs(200, 8, 1);
    MlpConfig cfg;
    cfg.seed = 1;
    const MlpModel model = train_mlp(data.x, data.y, data.all, 2, cfg);
    EXPECT_GE(train_accuracy(model, data), 0.99);
}

TEST(Mlp, XorNeedsHiddenLayers) {
    const Dataset data = xor_points();
    MlpConfig cfg;
    cfg.seed = 2;
    cfg.batch = 32;
    cfg.dropout = 0.0;
    const MlpModel model = train_mlp(data.x, data.y, data.all, 2, cfg);
    EXPECT_GE(train_accuracy(model, data), 0.95);
}

TEST(Mlp, ZeroEpochsIsInitialModel) {
    const Dataset data = blobs(50, 3, 2);
    MlpConfig cfg;
    cfg.epochs = 0;
    cfg.seed = 9;
    cfg.hidden = {16, 8};
    const MlpModel trained = train_mlp(data.x, data.y, data.all, 2, cfg);
    const MlpModel fresh(3, cfg.hidden, 2, mix_seed(cfg.seed, 0));
    EXPECT_TRUE(trained.predict_proba(data.x).isApprox(fresh.predict_proba(data.x), 0.0f));
}

TEST(Mlp, GradientsMatchFiniteDifferences) {
    using M = Mlp<double>;
    Rng rng(4);
    const std::size_t d = 5;
    const std::size_t batch = 7;
    M::Matrix x(d, batch);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform(-1, 1);
    std::vector<int> y(batch);
    for (int& label : y) label = static_cast<int>(rng.below(3));

    M model(d, {6, 4}, 3, 4);
    M::Parameters grads;
    Rng unused(0);
    model.loss_and_gradients(x, y, grads, 0.0, unused);

    const double h = 1e-6;
    double worst = 0.0;
    auto probe = [&](auto& param, const auto& analytic) {
        for (Eigen::Index i = 0; i < param.size(); ++i) {
            const double saved = param.data()[i];
            M::Parameters scratch;
            param.data()[i] = saved + h;
            const double up = model.loss_and_gradients(x, y, scratch, 0.0, unused);
            param.data()[i] = saved - h;
            const double down = model.loss_and_gradients(x, y, scratch, 0.0, unused);
            param.data()[i] = saved;
            const double numeric = (up - down) / (2 * h);
            const double a = analytic.data()[i];
            const double rel = std::abs(numeric - a) / std::max(1e-7, std::abs(numeric) + std::abs(a));
            worst = std::max(worst, rel);
        }
    };
    for (std::size_t l = 0; l < M::num_layers; ++l) {
        probe(model.parameters().weights[l], grads.weights[l]);
        probe(model.parameters().biases[l], grads.biases[l]);
    }
    EXPECT_LT(worst, 1e-3);
}

TEST(Mlp, OnlyTrainColumnsInfluenceTheModel) {
    Dataset data = blobs(120, 4, 5);
    std::vector<std::size_t> train(60);
    std::iota(train.begin(), train.end(), 0);
    MlpConfig cfg;
    cfg.hidden = {32, 32};
    cfg.epochs = 20;
    cfg.batch = 16;
    cfg.seed = 5;
    const MlpModel reference = train_mlp(data.x, data.y, train, 2, cfg);

    // Corrupt everything outside the training split.
    for (std::size_t i = 60; i < 120; ++i) {
        data.x.col(static_cast<Eigen::Index>(i)).setConstant(NAN);
        data.y[i] = 57;
    }
    const MlpModel again = train_mlp(data.x, data.y, train, 2, cfg);
    const FeatureMatrix probe = blobs(30, 4, 6).x;
    EXPECT_TRUE(reference.predict_proba(probe).isApprox(again.predict_proba(probe), 0.0f));
}

TEST(Mlp, DeterministicGivenSeed) {
    const Dataset data = blobs(80, 4, 7);
    MlpConfig cfg;
    cfg.hidden = {16, 16};
    cfg.epochs = 5;
    cfg.batch = 8;
    cfg.seed = 11;
    const MlpModel a = train_mlp(data.x, data.y, data.all, 2, cfg);
    const MlpModel b = train_mlp(data.x, data.y, data.all, 2, cfg);
    EXPECT_TRUE(a.predict_proba(data.x).isApprox(b.predict_proba(data.x), 0.0f));
}

TEST(Mlp, ValidationSelectsBestEpoch) {
    const Dataset data = blobs(100, 4, 8);
    MlpConfig cfg;
    cfg.hidden = {16, 16};
    cfg.epochs = 10;
    cfg.batch = 10;
    MlpTrainingLog log;
    // A score that peaks at epoch 4, independent of the model itself.
    std::size_t calls = 0;
    train_mlp(data.x, data.y, data.all, 2, cfg,
              [&](const MlpModel&) {
                  const double s = -std::abs(static_cast<double>(calls) - 4.0);
                  ++calls;
                  return s;
              },
              &log);
    EXPECT_EQ(calls, 11u);
    EXPECT_EQ(log.selected_epoch, 4u);
    EXPECT_EQ(log.epoch_loss.size(), 10u);
}

TEST(Mlp, Errors) {
    Dataset data = blobs(20, 2, 9);
    MlpConfig cfg;
    cfg.epochs = 1;
    data.y[3] = 2;
    EXPECT_THROW(train_mlp(data.x, data.y, data.all, 2, cfg), Error);
    data.y[3] = 1;
    data.x(0, 5) = INFINITY;
    try {
        train_mlp(data.x, data.y, data.all, 2, cfg);
        FAIL() << "expected a numeric error";
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::numeric);
    }
    data.x(0, 5) = 0.0f;
    cfg.dropout = 1.0;
    EXPECT_THROW(train_mlp(data.x, data.y, data.all, 2, cfg), Error);
    EXPECT_THROW(MlpModel(2, {4, 4}, 1, 0), Error);
}

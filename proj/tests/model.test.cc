// Copyright 2026 The QTC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtc/model.h"

#include <cmath>

#include "gtest/gtest.h"
#include "qtc/errors.h"
#include "qtc/rng.h"

using namespace qtc;

namespace {

SoftmaxHead random_head(size_t C, size_t F, SplitMix64 &rng) {
    std::vector<double> W(C * F);
    std::vector<double> b(C);
    for (auto &w : W) {
        w = rng.normal();
    }
    for (auto &x : b) {
        x = rng.normal();
    }
    return SoftmaxHead::from_params(C, F, std::move(W), std::move(b));
}

std::vector<LabeledFeatures> random_batch(size_t n, size_t C, size_t F, SplitMix64 &rng) {
    std::vector<LabeledFeatures> batch(n);
    for (auto &x : batch) {
        x.features.resize(F);
        for (auto &v : x.features) {
            v = rng.normal();
        }
        x.label = rng.index(C);
    }
    return batch;
}

std::vector<LabeledFeatures> separable_two_class(SplitMix64 &rng) {
    std::vector<LabeledFeatures> data;
    for (size_t i = 0; i < 200; i++) {
        size_t label = i % 2;
        double mean = label == 0 ? -2.0 : 2.0;
        LabeledFeatures x{.features = std::vector<double>(4), .label = label};
        for (auto &v : x.features) {
            v = mean + 0.1 * rng.normal();
        }
        data.push_back(std::move(x));
    }
    return data;
}

}  // namespace

TEST(model, uniform_prediction_from_zero_head) {
    auto head = SoftmaxHead::zeros(7, 5);
    auto p = predict(head, std::vector<double>{1, 2, 3, 4, 5});
    ASSERT_EQ(p.size(), 7u);
    for (double x : p) {
        EXPECT_NEAR(x, 1.0 / 7, 1e-15);
    }
}

TEST(model, bias_only_prediction) {
    auto head = SoftmaxHead::from_params(2, 3, std::vector<double>(6), {10, 0});
    auto p = predict(head, std::vector<double>{0.5, -1, 2});
    EXPECT_NEAR(p[0], 0.9999546021312976, 1e-15);
    EXPECT_NEAR(p[1], 1 - 0.9999546021312976, 1e-15);
}

TEST(model, predictions_normalize) {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 200; trial++) {
        size_t C = 2 + rng.index(9);
        size_t F = 1 + rng.index(10);
        auto head = random_head(C, F, rng);
        std::vector<double> x(F);
        for (auto &v : x) {
            v = rng.normal() * 50;
        }
        auto p = predict(head, x);
        double sum = 0;
        for (double v : p) {
            EXPECT_GE(v, 0.0);
            sum += v;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(model, predict_shape_error) {
    auto head = SoftmaxHead::zeros(3, 4);
    EXPECT_THROW(predict(head, std::vector<double>(5)), ShapeError);
}

TEST(model, head_construction_errors) {
    EXPECT_THROW(SoftmaxHead::zeros(1, 4), ConfigError);
    EXPECT_THROW(SoftmaxHead::zeros(3, 0), ConfigError);
    EXPECT_THROW(SoftmaxHead::from_params(2, 2, std::vector<double>(3), std::vector<double>(2)), ShapeError);
    EXPECT_THROW(SoftmaxHead::from_params(2, 1, {0, INFINITY}, {0, 0}), ConfigError);
}

TEST(model, cross_entropy_examples) {
    std::vector<double> uniform(7, 1.0 / 7);
    EXPECT_NEAR(cross_entropy(uniform, 3), 1.9459101490553132, 1e-12);
    EXPECT_EQ(cross_entropy(std::vector<double>{0, 1, 0}, 1), 0.0);
    EXPECT_NEAR(cross_entropy(std::vector<double>{0, 1, 0}, 0), 27.631021115928547, 1e-9);
    EXPECT_THROW(cross_entropy(uniform, 7), IndexError);
}

TEST(model, confident_correct_batch_has_zero_gradient) {
    // Bias gaps of 1000 push softmax to exactly one-hot in double precision.
    auto head = SoftmaxHead::from_params(3, 2, std::vector<double>(6), {1000, 0, 0});
    std::vector<LabeledFeatures> batch{{{1, 2}, 0}, {{-3, 0.5}, 0}};
    auto g = gradients(head, batch);
    for (double v : g.dW) {
        EXPECT_EQ(v, 0.0);
    }
    for (double v : g.db) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(model, empty_batch_errors) {
    auto head = SoftmaxHead::zeros(2, 2);
    std::vector<LabeledFeatures> empty;
    EXPECT_THROW(gradients(head, empty), ArgumentError);
    EXPECT_THROW(train(empty, 2, TrainConfig{}), ArgumentError);
}

TEST(model, gradients_match_finite_differences) {
    SplitMix64 rng(42);
    const double h = 1e-5;
    for (int trial = 0; trial < 20; trial++) {
        size_t C = 2 + rng.index(6);
        size_t F = 1 + rng.index(8);
        auto head = random_head(C, F, rng);
        auto batch = random_batch(1 + rng.index(16), C, F, rng);
        auto g = gradients(head, batch);
        auto check = [&](double &param, double analytic) {
            double saved = param;
            param = saved + h;
            double up = mean_loss(head, batch);
            param = saved - h;
            double down = mean_loss(head, batch);
            param = saved;
            double numeric = (up - down) / (2 * h);
            double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
            EXPECT_LT(std::abs(analytic - numeric) / scale, 1e-4);
        };
        for (size_t i = 0; i < C * F; i++) {
            check(head.W()[i], g.dW[i]);
        }
        for (size_t c = 0; c < C; c++) {
            check(head.b()[c], g.db[c]);
        }
    }
}

TEST(model, separable_data_trains_to_full_accuracy) {
    SplitMix64 rng(43);
    auto data = separable_two_class(rng);
    auto head = train(data, 2, TrainConfig{.shuffle_seed = 5});
    EXPECT_EQ(accuracy(head, data), 1.0);
}

TEST(model, constant_features_learn_class_prior) {
    std::vector<LabeledFeatures> data;
    for (size_t i = 0; i < 200; i++) {
        data.push_back({std::vector<double>(3, 0.0), i % 5 < 3 ? size_t{0} : size_t{1}});
    }
    auto head = train(data, 2, TrainConfig{.shuffle_seed = 9});
    auto p = predict(head, std::vector<double>(3, 0.0));
    EXPECT_NEAR(p[0], 0.6, 0.02);
    EXPECT_NEAR(p[1], 0.4, 0.02);
}

TEST(model, training_is_deterministic) {
    SplitMix64 rng(44);
    auto data = random_batch(90, 4, 6, rng);
    TrainConfig config{.epochs = 20, .batch_size = 8, .shuffle_seed = 77};
    EXPECT_EQ(train(data, 4, config), train(data, 4, config));
    config.optimizer = Optimizer::sgd;
    EXPECT_EQ(train(data, 4, config), train(data, 4, config));
}

TEST(model, full_batch_sgd_never_increases_loss) {
    SplitMix64 rng(45);
    auto data = random_batch(64, 3, 5, rng);
    auto head = random_head(3, 5, rng);
    double prev = mean_loss(head, data);
    for (int step = 0; step < 500; step++) {
        sgd_step(head, data, 1e-3);
        double now = mean_loss(head, data);
        ASSERT_LE(now, prev + 1e-9) << "step " << step;
        prev = now;
    }
}

TEST(model, epoch_callback_sees_every_epoch) {
    SplitMix64 rng(46);
    auto data = random_batch(10, 2, 2, rng);
    size_t calls = 0;
    train(data, 2, TrainConfig{.epochs = 7}, [&](size_t epoch, const SoftmaxHead &) { EXPECT_EQ(epoch, calls++); });
    EXPECT_EQ(calls, 7u);
}

TEST(model, shifting_all_biases_keeps_prediction) {
    SplitMix64 rng(47);
    for (int trial = 0; trial < 50; trial++) {
        auto head = random_head(5, 4, rng);
        auto shifted = head;
        for (auto &b : shifted.b()) {
            b += 3.25;
        }
        std::vector<double> x(4);
        for (auto &v : x) {
            v = rng.normal();
        }
        EXPECT_EQ(predict_label(head, x), predict_label(shifted, x));
    }
}

TEST(model, json_roundtrip) {
    SplitMix64 rng(48);
    auto head = random_head(4, 3, rng);
    EXPECT_EQ(head_from_json(nlohmann::json::parse(head_to_json(head).dump())), head);
    EXPECT_THROW(head_from_json(nlohmann::json{{"C", 2}}), FormatError);
    EXPECT_THROW(head_from_json(nlohmann::json::array()), FormatError);
}

TEST(model, optimizer_names) {
    EXPECT_EQ(parse_optimizer("sgd"), Optimizer::sgd);
    EXPECT_EQ(optimizer_name(Optimizer::adam), "adam");
    EXPECT_THROW(parse_optimizer("rmsprop"), ConfigError);
}

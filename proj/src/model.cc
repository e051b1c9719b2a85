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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qtc/errors.h"
#include "qtc/rng.h"

namespace qtc {

namespace {

void check_features(const SoftmaxHead &head, std::span<const double> features) {
    if (features.size() != head.feature_dim()) {
        throw ShapeError(
            "feature vector has " + std::to_string(features.size()) + " entries, head expects " +
            std::to_string(head.feature_dim()));
    }
}

std::vector<double> logits(const SoftmaxHead &head, std::span<const double> features) {
    size_t F = head.feature_dim();
    std::vector<double> z(head.num_classes());
    for (size_t c = 0; c < z.size(); c++) {
        double acc = head.b()[c];
        for (size_t f = 0; f < F; f++) {
            acc += head.weight(c, f) * features[f];
        }
        z[c] = acc;
    }
    return z;
}

void softmax_in_place(std::vector<double> &z) {
    double m = *std::max_element(z.begin(), z.end());
    double total = 0;
    for (auto &v : z) {
        v = std::exp(v - m);
        total += v;
    }
    for (auto &v : z) {
        v /= total;
    }
}

void check_sample(const SoftmaxHead &head, const LabeledFeatures &s) {
    check_features(head, s.features);
    if (s.label >= head.num_classes()) {
        throw IndexError(
            "label " + std::to_string(s.label) + " out of range for " + std::to_string(head.num_classes()) + " classes");
    }
}

/// Mean gradient over data[idx] for idx in `rows`.
void accumulate_gradients(
    const SoftmaxHead &head, std::span<const LabeledFeatures> data, std::span<const size_t> rows, Gradients &g) {
    size_t C = head.num_classes();
    size_t F = head.feature_dim();
    g.dW.assign(C * F, 0.0);
    g.db.assign(C, 0.0);
    for (size_t r : rows) {
        const auto &s = data[r];
        check_sample(head, s);
        auto p = predict(head, s.features);
        p[s.label] -= 1.0;
        for (size_t c = 0; c < C; c++) {
            g.db[c] += p[c];
            for (size_t f = 0; f < F; f++) {
                g.dW[c * F + f] += p[c] * s.features[f];
            }
        }
    }
    double inv = 1.0 / static_cast<double>(rows.size());
    for (auto &v : g.dW) {
        v *= inv;
    }
    for (auto &v : g.db) {
        v *= inv;
    }
}

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    size_t t = 0;
};

void adam_update(std::span<double> param, std::span<const double> grad, AdamState &s, const TrainConfig &cfg) {
    double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(s.t));
    double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(s.t));
    for (size_t i = 0; i < param.size(); i++) {
        s.m[i] = cfg.beta1 * s.m[i] + (1 - cfg.beta1) * grad[i];
        s.v[i] = cfg.beta2 * s.v[i] + (1 - cfg.beta2) * grad[i] * grad[i];
        double mhat = s.m[i] / bc1;
        double vhat = s.v[i] / bc2;
        param[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.epsilon);
    }
}

void descend(SoftmaxHead &head, const Gradients &g, double learning_rate) {
    auto W = head.W();
    auto b = head.b();
    for (size_t i = 0; i < W.size(); i++) {
        W[i] -= learning_rate * g.dW[i];
    }
    for (size_t i = 0; i < b.size(); i++) {
        b[i] -= learning_rate * g.db[i];
    }
}

}  // namespace

SoftmaxHead SoftmaxHead::zeros(size_t num_classes, size_t feature_dim) {
    return from_params(
        num_classes, feature_dim, std::vector<double>(num_classes * feature_dim, 0.0), std::vector<double>(num_classes, 0.0));
}

SoftmaxHead SoftmaxHead::from_params(size_t num_classes, size_t feature_dim, std::vector<double> W, std::vector<double> b) {
    if (num_classes < 2) {
        throw ConfigError("softmax head needs at least 2 classes");
    }
    if (feature_dim < 1) {
        throw ConfigError("softmax head needs at least 1 feature");
    }
    if (W.size() != num_classes * feature_dim || b.size() != num_classes) {
        throw ShapeError("softmax head parameter sizes do not match C x F");
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(W.begin(), W.end(), finite) || !std::all_of(b.begin(), b.end(), finite)) {
        throw ConfigError("softmax head parameters must be finite");
    }
    return SoftmaxHead(num_classes, feature_dim, std::move(W), std::move(b));
}

std::string_view optimizer_name(Optimizer opt) {
    return opt == Optimizer::adam ? "adam" : "sgd";
}

Optimizer parse_optimizer(std::string_view name) {
    if (name == "adam") {
        return Optimizer::adam;
    }
    if (name == "sgd") {
        return Optimizer::sgd;
    }
    throw ConfigError("unknown optimizer '" + std::string(name) + "' (expected adam or sgd)");
}

std::vector<double> predict(const SoftmaxHead &head, std::span<const double> features) {
    check_features(head, features);
    auto z = logits(head, features);
    softmax_in_place(z);
    return z;
}

size_t predict_label(const SoftmaxHead &head, std::span<const double> features) {
    check_features(head, features);
    auto z = logits(head, features);
    return static_cast<size_t>(std::max_element(z.begin(), z.end()) - z.begin());
}

double cross_entropy(std::span<const double> probs, size_t label) {
    if (label >= probs.size()) {
        throw IndexError(
            "label " + std::to_string(label) + " out of range for " + std::to_string(probs.size()) + " classes");
    }
    return -std::log(std::max(probs[label], PROB_FLOOR));
}

Gradients gradients(const SoftmaxHead &head, std::span<const LabeledFeatures> batch) {
    if (batch.empty()) {
        throw ArgumentError("gradient of an empty batch");
    }
    std::vector<size_t> rows(batch.size());
    std::iota(rows.begin(), rows.end(), 0);
    Gradients g;
    accumulate_gradients(head, batch, rows, g);
    return g;
}

double mean_loss(const SoftmaxHead &head, std::span<const LabeledFeatures> data) {
    if (data.empty()) {
        throw ArgumentError("loss of an empty dataset");
    }
    double total = 0;
    for (const auto &s : data) {
        check_sample(head, s);
        total += cross_entropy(predict(head, s.features), s.label);
    }
    return total / static_cast<double>(data.size());
}

double accuracy(const SoftmaxHead &head, std::span<const LabeledFeatures> data) {
    if (data.empty()) {
        throw ArgumentError("accuracy of an empty dataset");
    }
    size_t correct = 0;
    for (const auto &s : data) {
        check_sample(head, s);
        correct += predict_label(head, s.features) == s.label;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

void sgd_step(SoftmaxHead &head, std::span<const LabeledFeatures> data, double learning_rate) {
    descend(head, gradients(head, data), learning_rate);
}

SoftmaxHead train(
    std::span<const LabeledFeatures> data, size_t num_classes, const TrainConfig &config, const EpochCallback &on_epoch) {
    if (data.empty()) {
        throw ArgumentError("cannot train on an empty dataset");
    }
    if (!(config.learning_rate > 0) || config.epochs == 0 || config.batch_size == 0) {
        throw ConfigError("learning rate, epochs and batch size must be positive");
    }
    auto head = SoftmaxHead::zeros(num_classes, data.front().features.size());
    for (const auto &s : data) {
        check_sample(head, s);
    }

    SplitMix64 rng(config.shuffle_seed);
    std::vector<size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    AdamState adam_w{std::vector<double>(head.W().size()), std::vector<double>(head.W().size()), 0};
    AdamState adam_b{std::vector<double>(head.b().size()), std::vector<double>(head.b().size()), 0};
    Gradients g;

    for (size_t epoch = 0; epoch < config.epochs; epoch++) {
        for (size_t i = order.size(); i > 1; i--) {
            std::swap(order[i - 1], order[rng.index(i)]);
        }
        for (size_t start = 0; start < order.size(); start += config.batch_size) {
            size_t end = std::min(order.size(), start + config.batch_size);
            accumulate_gradients(head, data, std::span<const size_t>(order).subspan(start, end - start), g);
            if (config.optimizer == Optimizer::adam) {
                adam_w.t++;
                adam_b.t++;
                adam_update(head.W(), g.dW, adam_w, config);
                adam_update(head.b(), g.db, adam_b, config);
            } else {
                descend(head, g, config.learning_rate);
            }
        }
        if (on_epoch) {
            on_epoch(epoch, head);
        }
    }
    return head;
}

nlohmann::json head_to_json(const SoftmaxHead &head) {
    return {
        {"C", head.num_classes()},
        {"F", head.feature_dim()},
        {"W", std::vector<double>(head.W().begin(), head.W().end())},
        {"b", std::vector<double>(head.b().begin(), head.b().end())},
    };
}

SoftmaxHead head_from_json(const nlohmann::json &j) {
    try {
        return SoftmaxHead::from_params(
            j.at("C").get<size_t>(), j.at("F").get<size_t>(), j.at("W").get<std::vector<double>>(),
            j.at("b").get<std::vector<double>>());
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("malformed softmax head JSON: ") + e.what());
    }
}

}  // namespace qtc

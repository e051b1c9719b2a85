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

#ifndef _QTC_MODEL_H
#define _QTC_MODEL_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qtc {

/// One training example: a frozen feature vector and its class index.
struct LabeledFeatures {
    std::vector<double> features;
    size_t label = 0;
};

/// Linear softmax classifier p = softmax(W f + b) over C classes and F features.
class SoftmaxHead {
   public:
    static SoftmaxHead zeros(size_t num_classes, size_t feature_dim);
    /// W is C x F row-major. Throws ShapeError / ConfigError on bad sizes or non-finite entries.
    static SoftmaxHead from_params(size_t num_classes, size_t feature_dim, std::vector<double> W, std::vector<double> b);

    size_t num_classes() const {
        return C_;
    }
    size_t feature_dim() const {
        return F_;
    }
    std::span<const double> W() const {
        return W_;
    }
    std::span<const double> b() const {
        return b_;
    }
    std::span<double> W() {
        return W_;
    }
    std::span<double> b() {
        return b_;
    }
    double weight(size_t c, size_t f) const {
        return W_[c * F_ + f];
    }

    bool operator==(const SoftmaxHead &) const = default;

   private:
    SoftmaxHead(size_t C, size_t F, std::vector<double> W, std::vector<double> b)
        : C_(C), F_(F), W_(std::move(W)), b_(std::move(b)) {
    }

    size_t C_;
    size_t F_;
    std::vector<double> W_;
    std::vector<double> b_;
};

enum class Optimizer { adam, sgd };

struct TrainConfig {
    double learning_rate = 1e-3;
    size_t epochs = 200;
    size_t batch_size = 32;
    Optimizer optimizer = Optimizer::adam;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    uint64_t shuffle_seed = 0;
};

std::string_view optimizer_name(Optimizer opt);
Optimizer parse_optimizer(std::string_view name);

/// Class probabilities, computed with max-subtraction. Throws ShapeError on a
/// feature-length mismatch.
std::vector<double> predict(const SoftmaxHead &head, std::span<const double> features);

/// argmax of the logits (ties go to the lowest class index).
size_t predict_label(const SoftmaxHead &head, std::span<const double> features);

inline constexpr double PROB_FLOOR = 1e-12;

/// -log(max(probs[label], 1e-12)). Throws IndexError when label >= probs.size().
double cross_entropy(std::span<const double> probs, size_t label);

struct Gradients {
    std::vector<double> dW;  // C x F row-major
    std::vector<double> db;
};

/// Gradient of the batch-mean cross-entropy with respect to W and b.
/// Throws ArgumentError on an empty batch.
Gradients gradients(const SoftmaxHead &head, std::span<const LabeledFeatures> batch);

double mean_loss(const SoftmaxHead &head, std::span<const LabeledFeatures> data);
double accuracy(const SoftmaxHead &head, std::span<const LabeledFeatures> data);

/// Called after every epoch with (epoch index, current head).
using EpochCallback = std::function<void(size_t, const SoftmaxHead &)>;

/// Mini-batch training from a zero-initialized head. Batch order comes from
/// SplitMix64(config.shuffle_seed), so a fixed config gives a fixed result.
SoftmaxHead train(
    std::span<const LabeledFeatures> data, size_t num_classes, const TrainConfig &config, const EpochCallback &on_epoch = {});

/// Single full-batch gradient step, exposed for monotonicity checks.
void sgd_step(SoftmaxHead &head, std::span<const LabeledFeatures> data, double learning_rate);

nlohmann::json head_to_json(const SoftmaxHead &head);
SoftmaxHead head_from_json(const nlohmann::json &j);

}  // namespace qtc

#endif

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

#ifndef _QTC_ENCODER_H
#define _QTC_ENCODER_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qtc/data.h"
#include "qtc/vqc.h"

namespace qtc {

enum class EncoderKind { qtc, tcn };

std::string_view encoder_name(EncoderKind kind);
/// Parses "qtc" / "tcn". Throws ConfigError otherwise.
EncoderKind parse_encoder_kind(std::string_view name);

inline constexpr size_t DEFAULT_MAX_LEN = 50;
inline constexpr size_t MAX_FILTERS = 4;
inline constexpr size_t MIN_KERNEL = 2;
inline constexpr size_t MAX_KERNEL = 16;

/// Sliding-window quantum filter: a D -> 1 projection feeding each token of a
/// window into one qubit's Rx encoding, then a frozen random circuit.
struct QtcFilter {
    std::vector<double> projection;
    CircuitSpec circuit;
};

/// Classical baseline filter with the same shape: the same D -> 1 projection per
/// token, then tanh(mixing * window) with a k x k row-major mixing matrix.
struct TcnFilter {
    std::vector<double> projection;
    std::vector<double> mixing;
};

/// n frozen filters sharing kernel size k and embedding dimension D.
class FilterBank {
   public:
    static FilterBank from_qtc_filters(size_t k, size_t D, std::vector<QtcFilter> filters, uint64_t seed = 0);
    static FilterBank from_tcn_filters(size_t k, size_t D, std::vector<TcnFilter> filters, uint64_t seed = 0);

    EncoderKind kind() const {
        return kind_;
    }
    size_t n() const {
        return kind_ == EncoderKind::qtc ? qtc_.size() : tcn_.size();
    }
    size_t k() const {
        return k_;
    }
    size_t D() const {
        return D_;
    }
    uint64_t seed() const {
        return seed_;
    }
    size_t feature_dim() const {
        return n() * k_;
    }
    std::span<const QtcFilter> qtc_filters() const {
        return qtc_;
    }
    std::span<const TcnFilter> tcn_filters() const {
        return tcn_;
    }

    bool operator==(const FilterBank &) const;

   private:
    FilterBank() = default;

    EncoderKind kind_ = EncoderKind::qtc;
    size_t k_ = 0;
    size_t D_ = 0;
    uint64_t seed_ = 0;
    std::vector<QtcFilter> qtc_;
    std::vector<TcnFilter> tcn_;
};

/// Frozen random filter bank. Filter i draws from derive_seed(seed, i):
/// D projection entries ~ Normal(0, 1), then either a circuit seed (QTC,
/// rotations Uniform[0, 2pi)) or k*k mixing entries ~ Normal(0, 1/k) (TCN).
FilterBank init_filter_bank(EncoderKind kind, size_t n, size_t k, size_t D, uint64_t seed);

/// pi * tanh(projection . h / sqrt(D)), always inside (-pi, pi).
double project_token(std::span<const double> projection, std::span<const float> h);

struct FeatureVector {
    std::vector<double> values;
    EncoderKind provenance = EncoderKind::qtc;

    bool operator==(const FeatureVector &) const = default;
};

/// Per-window filter outputs before pooling, laid out [filter][position][channel].
struct WindowOutputs {
    size_t n = 0;
    size_t k = 0;
    size_t positions = 0;
    std::vector<double> values;

    double at(size_t filter, size_t position, size_t channel) const {
        return values[(filter * positions + position) * k + channel];
    }
};

/// Truncates to max_len tokens, right-pads with zero embeddings up to k, and
/// evaluates every filter on each stride-1 window.
WindowOutputs window_outputs(const FilterBank &bank, const EmbeddingSequence &seq, size_t max_len = DEFAULT_MAX_LEN);

/// Global max over window positions for every (filter, channel); length n*k.
FeatureVector max_pool(const WindowOutputs &windows, EncoderKind provenance);

FeatureVector qtc_features(const FilterBank &bank, const EmbeddingSequence &seq, size_t max_len = DEFAULT_MAX_LEN);
FeatureVector tcn_features(const FilterBank &bank, const EmbeddingSequence &seq, size_t max_len = DEFAULT_MAX_LEN);

/// Dispatches on bank.kind().
FeatureVector extract_features(const FilterBank &bank, const EmbeddingSequence &seq, size_t max_len = DEFAULT_MAX_LEN);

/// extract_features over many sequences, split across `threads` workers.
/// The result is indexed like `seqs` and does not depend on the thread count.
std::vector<FeatureVector> extract_all(
    const FilterBank &bank, std::span<const EmbeddingSequence> seqs, size_t max_len = DEFAULT_MAX_LEN, size_t threads = 1);

}  // namespace qtc

#endif

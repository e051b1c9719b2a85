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

#include "qtc/encoder.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "qtc/errors.h"
#include "qtc/rng.h"

namespace qtc {

namespace {

void check_bank_shape(size_t n, size_t k, size_t D) {
    if (n == 0 || n > MAX_FILTERS) {
        throw ConfigError("filter count must be in [1, 4], got " + std::to_string(n));
    }
    if (k < MIN_KERNEL || k > MAX_KERNEL) {
        throw ConfigError("kernel size must be in [2, 16], got " + std::to_string(k));
    }
    if (D == 0) {
        throw ConfigError("embedding dimension must be at least 1");
    }
}

void check_projection(const std::vector<double> &projection, size_t D) {
    if (projection.size() != D) {
        throw ShapeError("filter projection has " + std::to_string(projection.size()) + " entries, expected " + std::to_string(D));
    }
    for (double v : projection) {
        if (!std::isfinite(v)) {
            throw ConfigError("filter projection entries must be finite");
        }
    }
}

std::vector<double> normal_vector(SplitMix64 &rng, size_t len, double stddev) {
    std::vector<double> v(len);
    for (auto &x : v) {
        x = rng.normal() * stddev;
    }
    return v;
}

/// Projected angle of every (padded, truncated) token for one filter.
std::vector<double> token_angles(std::span<const double> projection, const EmbeddingSequence &seq, size_t len) {
    std::vector<double> angles(len, 0.0);
    size_t real = std::min(seq.T, len);
    for (size_t t = 0; t < real; t++) {
        angles[t] = project_token(projection, seq.row(t));
        if (!std::isfinite(angles[t])) {
            throw DataError("non-finite embedding value in utterance " + seq.id);
        }
    }
    return angles;
}

}  // namespace

std::string_view encoder_name(EncoderKind kind) {
    return kind == EncoderKind::qtc ? "qtc" : "tcn";
}

EncoderKind parse_encoder_kind(std::string_view name) {
    if (name == "qtc") {
        return EncoderKind::qtc;
    }
    if (name == "tcn") {
        return EncoderKind::tcn;
    }
    throw ConfigError("unknown encoder '" + std::string(name) + "' (expected qtc or tcn)");
}

FilterBank FilterBank::from_qtc_filters(size_t k, size_t D, std::vector<QtcFilter> filters, uint64_t seed) {
    check_bank_shape(filters.size(), k, D);
    for (const auto &f : filters) {
        check_projection(f.projection, D);
        if (f.circuit.k() != k) {
            throw ShapeError("filter circuit width does not match kernel size");
        }
    }
    FilterBank bank;
    bank.kind_ = EncoderKind::qtc;
    bank.k_ = k;
    bank.D_ = D;
    bank.seed_ = seed;
    bank.qtc_ = std::move(filters);
    return bank;
}

FilterBank FilterBank::from_tcn_filters(size_t k, size_t D, std::vector<TcnFilter> filters, uint64_t seed) {
    check_bank_shape(filters.size(), k, D);
    for (const auto &f : filters) {
        check_projection(f.projection, D);
        if (f.mixing.size() != k * k) {
            throw ShapeError("TCN mixing matrix must be k x k");
        }
        for (double v : f.mixing) {
            if (!std::isfinite(v)) {
                throw ConfigError("TCN mixing entries must be finite");
            }
        }
    }
    FilterBank bank;
    bank.kind_ = EncoderKind::tcn;
    bank.k_ = k;
    bank.D_ = D;
    bank.seed_ = seed;
    bank.tcn_ = std::move(filters);
    return bank;
}

bool FilterBank::operator==(const FilterBank &o) const {
    auto same_qtc = std::equal(qtc_.begin(), qtc_.end(), o.qtc_.begin(), o.qtc_.end(), [](const auto &a, const auto &b) {
        return a.projection == b.projection && a.circuit == b.circuit;
    });
    auto same_tcn = std::equal(tcn_.begin(), tcn_.end(), o.tcn_.begin(), o.tcn_.end(), [](const auto &a, const auto &b) {
        return a.projection == b.projection && a.mixing == b.mixing;
    });
    return kind_ == o.kind_ && k_ == o.k_ && D_ == o.D_ && seed_ == o.seed_ && same_qtc && same_tcn;
}

FilterBank init_filter_bank(EncoderKind kind, size_t n, size_t k, size_t D, uint64_t seed) {
    check_bank_shape(n, k, D);
    if (kind == EncoderKind::qtc) {
        std::vector<QtcFilter> filters;
        for (size_t i = 0; i < n; i++) {
            SplitMix64 rng(derive_seed(seed, i));
            auto projection = normal_vector(rng, D, 1.0);
            filters.push_back(QtcFilter{std::move(projection), init_circuit(k, 1, rng.next_u64())});
        }
        return FilterBank::from_qtc_filters(k, D, std::move(filters), seed);
    }
    std::vector<TcnFilter> filters;
    for (size_t i = 0; i < n; i++) {
        SplitMix64 rng(derive_seed(seed, i));
        auto projection = normal_vector(rng, D, 1.0);
        auto mixing = normal_vector(rng, k * k, 1.0 / static_cast<double>(k));
        filters.push_back(TcnFilter{std::move(projection), std::move(mixing)});
    }
    return FilterBank::from_tcn_filters(k, D, std::move(filters), seed);
}

double project_token(std::span<const double> projection, std::span<const float> h) {
    if (projection.size() != h.size()) {
        throw ShapeError(
            "token embedding has " + std::to_string(h.size()) + " entries, projection expects " +
            std::to_string(projection.size()));
    }
    double dot = 0;
    for (size_t i = 0; i < h.size(); i++) {
        dot += projection[i] * static_cast<double>(h[i]);
    }
    return std::numbers::pi * std::tanh(dot / std::sqrt(static_cast<double>(h.size())));
}

WindowOutputs window_outputs(const FilterBank &bank, const EmbeddingSequence &seq, size_t max_len) {
    if (seq.D != bank.D()) {
        throw ShapeError(
            "utterance " + seq.id + " has embedding dim " + std::to_string(seq.D) + ", filter bank expects " +
            std::to_string(bank.D()));
    }
    if (seq.matrix.size() != seq.T * seq.D) {
        throw ShapeError("utterance " + seq.id + " matrix size does not match T*D");
    }
    size_t k = bank.k();
    size_t len = std::max(std::min(seq.T, max_len), k);
    WindowOutputs w{.n = bank.n(), .k = k, .positions = len - k + 1, .values = {}};
    w.values.resize(w.n * w.positions * k);

    for (size_t f = 0; f < w.n; f++) {
        bool quantum = bank.kind() == EncoderKind::qtc;
        auto angles = quantum ? token_angles(bank.qtc_filters()[f].projection, seq, len)
                              : token_angles(bank.tcn_filters()[f].projection, seq, len);
        for (size_t p = 0; p < w.positions; p++) {
            std::span<const double> window(angles.data() + p, k);
            std::span<double> out(w.values.data() + (f * w.positions + p) * k, k);
            if (quantum) {
                run_circuit_into(bank.qtc_filters()[f].circuit, window, out);
            } else {
                const auto &mixing = bank.tcn_filters()[f].mixing;
                for (size_t r = 0; r < k; r++) {
                    double acc = 0;
                    for (size_t c = 0; c < k; c++) {
                        acc += mixing[r * k + c] * window[c];
                    }
                    out[r] = std::tanh(acc);
                }
            }
        }
    }
    return w;
}

FeatureVector max_pool(const WindowOutputs &windows, EncoderKind provenance) {
    FeatureVector fv{.values = std::vector<double>(windows.n * windows.k), .provenance = provenance};
    for (size_t f = 0; f < windows.n; f++) {
        for (size_t j = 0; j < windows.k; j++) {
            double best = windows.at(f, 0, j);
            for (size_t p = 1; p < windows.positions; p++) {
                best = std::max(best, windows.at(f, p, j));
            }
            fv.values[f * windows.k + j] = best;
        }
    }
    return fv;
}

FeatureVector qtc_features(const FilterBank &bank, const EmbeddingSequence &seq, size_t max_len) {
    if (bank.kind() != EncoderKind::qtc) {
        throw ConfigError("qtc_features needs a QTC filter bank");
    }
    return max_pool(window_outputs(bank, seq, max_len), EncoderKind::qtc);
}

FeatureVector tcn_features(const FilterBank &bank, const EmbeddingSequence &seq, size_t max_len) {
    if (bank.kind() != EncoderKind::tcn) {
        throw ConfigError("tcn_features needs a TCN filter bank");
    }
    return max_pool(window_outputs(bank, seq, max_len), EncoderKind::tcn);
}

FeatureVector extract_features(const FilterBank &bank, const EmbeddingSequence &seq, size_t max_len) {
    return bank.kind() == EncoderKind::qtc ? qtc_features(bank, seq, max_len) : tcn_features(bank, seq, max_len);
}

std::vector<FeatureVector> extract_all(
    const FilterBank &bank, std::span<const EmbeddingSequence> seqs, size_t max_len, size_t threads) {
    std::vector<FeatureVector> out(seqs.size());
    threads = std::clamp<size_t>(threads, 1, std::max<size_t>(seqs.size(), 1));
    if (threads == 1) {
        for (size_t i = 0; i < seqs.size(); i++) {
            out[i] = extract_features(bank, seqs[i], max_len);
        }
        return out;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    for (size_t w = 0; w < threads; w++) {
        workers.emplace_back([&, w] {
            try {
                for (size_t i = w; i < seqs.size(); i += threads) {
                    out[i] = extract_features(bank, seqs[i], max_len);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

}  // namespace qtc

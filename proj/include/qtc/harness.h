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

#ifndef _QTC_HARNESS_H
#define _QTC_HARNESS_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qtc/data.h"
#include "qtc/encoder.h"
#include "qtc/model.h"

namespace qtc {

/// Where the token embeddings of a TSV split come from.
struct EmbeddingSource {
    /// > 0 selects deterministic toy embeddings of this dimension.
    size_t toy_dim = 0;
    /// QTCE files aligned record-by-record with the TSV splits that were given,
    /// in train, dev, test order. A single file may also hold all of them back to back.
    std::vector<std::filesystem::path> qtce_paths;
};

struct ExperimentConfig {
    /// TSV ("text<TAB>intent") or QTCE files; QTCE splits carry their own embeddings.
    std::filesystem::path train_path;
    std::filesystem::path dev_path;
    std::filesystem::path test_path;
    EmbeddingSource embeddings;
    EncoderKind encoder = EncoderKind::qtc;
    size_t n = 2;
    size_t k = 4;
    uint64_t seed = 0;
    size_t folds = 10;
    size_t max_len = DEFAULT_MAX_LEN;
    /// 0 keeps every intent; otherwise keep the top-k train intents.
    size_t top_intents = 0;
    size_t threads = 1;
    TrainConfig train;
};

/// Throws ConfigError when (n, k), folds, or the training settings are out of bounds.
void validate_config(const ExperimentConfig &config);

/// Embedded corpus ready for feature extraction. `pool` is train+dev; `test`
/// may be empty, in which case experiments cross-validate over the pool.
struct PreparedData {
    std::vector<EmbeddingSequence> pool;
    std::vector<EmbeddingSequence> test;
    LabelIndex label_index;
    size_t D = 0;
};

/// Loads, embeds, optionally filters, and indexes the splits named by `config`.
PreparedData load_data(const ExperimentConfig &config);

/// Embeds in-memory utterances with toy embeddings (corpus seed = `seed`).
PreparedData prepare_toy_data(
    const std::vector<LabeledUtterance> &pool, const std::vector<LabeledUtterance> &test, size_t D, uint64_t seed);

struct MetricsReport {
    std::vector<double> runs;
    double mean = 0;
    /// Population standard deviation of `runs`.
    double std = 0;
    /// Share of the evaluation data belonging to the most frequent training class.
    double majority_baseline = 0;
    /// "seeded-runs" on a fixed test split, or "kfold" over train+dev.
    std::string protocol;
    size_t train_size = 0;
    size_t eval_size = 0;
    nlohmann::json config;
    double wall_time_s = 0;
};

/// Seed of the r-th run's filter bank; run r shuffles with derive_seed(run_seed, 1).
uint64_t run_seed(uint64_t seed, size_t run);

/// `folds` independent runs. With a test split every run draws a new filter
/// bank, trains on the pool and scores the test split; without one, run r is
/// fold r of kfold_split over the pool.
MetricsReport run_experiment(const ExperimentConfig &config, const PreparedData &data);
MetricsReport run_experiment(const ExperimentConfig &config);

struct GridCell {
    EncoderKind encoder;
    size_t n;
    size_t k;
    MetricsReport report;
};

struct GridResult {
    std::vector<GridCell> cells;
    nlohmann::json config;
    double wall_time_s = 0;
};

/// The (n, k) columns of the published comparison tables.
std::vector<std::pair<size_t, size_t>> default_grid_cells();

/// Runs every (encoder, n, k) cell. A failing cell is rethrown with its name prepended.
GridResult run_grid(
    const ExperimentConfig &base,
    const PreparedData &data,
    const std::vector<std::pair<size_t, size_t>> &cells = default_grid_cells(),
    const std::vector<EncoderKind> &encoders = {EncoderKind::tcn, EncoderKind::qtc});

/// Rows TCN/QTC, columns (n,k), accuracies in percent with two decimals.
std::string render_table(const GridResult &grid);

nlohmann::json config_to_json(const ExperimentConfig &config);
nlohmann::json report_to_json(const MetricsReport &report);
nlohmann::json grid_to_json(const GridResult &grid);

/// Schema and self-consistency problems of a report JSON (empty when valid):
/// required keys, accuracies in [0, 1], mean/std recomputable from runs,
/// run count equal to config.folds.
std::vector<std::string> check_report(const nlohmann::json &report);
std::vector<std::string> check_grid_report(const nlohmann::json &grid);

}  // namespace qtc

#endif

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

#include "qtc/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "qtc/errors.h"
#include "qtc/qtce.h"
#include "qtc/rng.h"

namespace qtc {

namespace {

struct LoadedSplit {
    std::vector<LabeledUtterance> utterances;
    std::vector<EmbeddingSequence> sequences;
    bool from_tsv = false;
};

LoadedSplit read_split(const std::filesystem::path &path, const ExperimentConfig &config) {
    LoadedSplit split;
    if (!std::filesystem::exists(path)) {
        throw IoError("no such file: " + path.string());
    }
    if (looks_like_qtce(path)) {
        split.sequences = read_embedding_file(path);
        for (const auto &s : split.sequences) {
            split.utterances.push_back(LabeledUtterance{.id = s.id, .tokens = {}, .label = s.label});
        }
        return split;
    }
    split.from_tsv = true;
    split.utterances = parse_intent_tsv(path);
    if (config.embeddings.toy_dim > 0) {
        for (const auto &u : split.utterances) {
            split.sequences.push_back(toy_embeddings(u, config.embeddings.toy_dim, config.seed));
        }
    }
    return split;
}

/// Attaches QTCE records to the TSV splits that still lack embeddings.
void attach_embeddings(std::vector<LoadedSplit *> &tsv_splits, const std::vector<std::filesystem::path> &paths) {
    if (tsv_splits.empty()) {
        return;
    }
    if (paths.empty()) {
        throw ConfigError("TSV splits need an embedding source (--toy-dim or --embeddings)");
    }
    std::vector<std::vector<EmbeddingSequence>> per_split;
    if (paths.size() == tsv_splits.size()) {
        for (const auto &p : paths) {
            per_split.push_back(read_embedding_file(p));
        }
    } else if (paths.size() == 1) {
        auto all = read_embedding_file(paths.front());
        size_t expected = 0;
        for (auto *s : tsv_splits) {
            expected += s->utterances.size();
        }
        if (all.size() != expected) {
            throw DataError(
                "embedding file " + paths.front().string() + " has " + std::to_string(all.size()) +
                " records, the TSV splits have " + std::to_string(expected) + " utterances");
        }
        size_t offset = 0;
        for (auto *s : tsv_splits) {
            per_split.emplace_back(all.begin() + offset, all.begin() + offset + s->utterances.size());
            offset += s->utterances.size();
        }
    } else {
        throw ConfigError(
            "got " + std::to_string(paths.size()) + " embedding files for " + std::to_string(tsv_splits.size()) +
            " TSV splits");
    }
    for (size_t i = 0; i < tsv_splits.size(); i++) {
        auto &split = *tsv_splits[i];
        auto &records = per_split[i];
        if (records.size() != split.utterances.size()) {
            throw DataError(
                "embedding records (" + std::to_string(records.size()) + ") do not match TSV utterances (" +
                std::to_string(split.utterances.size()) + ")");
        }
        for (size_t r = 0; r < records.size(); r++) {
            if (records[r].label != split.utterances[r].label) {
                throw DataError(
                    "embedding record " + std::to_string(r) + " has label '" + records[r].label + "' but " +
                    split.utterances[r].id + " is '" + split.utterances[r].label + "'");
            }
        }
        split.sequences = std::move(records);
    }
}

std::vector<EmbeddingSequence> keep_labels(std::vector<EmbeddingSequence> seqs, const LabelIndex &index) {
    std::erase_if(seqs, [&](const EmbeddingSequence &s) { return !index.contains(s.label); });
    return seqs;
}

size_t common_dim(const PreparedData &data) {
    size_t D = 0;
    for (const auto *list : {&data.pool, &data.test}) {
        for (const auto &s : *list) {
            if (D == 0) {
                D = s.D;
            } else if (s.D != D) {
                throw ShapeError(
                    "utterance " + s.id + " has embedding dim " + std::to_string(s.D) + ", expected " + std::to_string(D));
            }
        }
    }
    return D;
}

std::vector<LabeledFeatures> label_features(
    std::vector<FeatureVector> features, std::span<const EmbeddingSequence> seqs, const LabelIndex &index) {
    std::vector<LabeledFeatures> out;
    out.reserve(features.size());
    for (size_t i = 0; i < features.size(); i++) {
        out.push_back(LabeledFeatures{std::move(features[i].values), index.at(seqs[i].label)});
    }
    return out;
}

size_t majority_label(std::span<const LabeledFeatures> data, size_t num_classes) {
    std::vector<size_t> counts(num_classes, 0);
    for (const auto &s : data) {
        counts[s.label]++;
    }
    return static_cast<size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

double share_of(std::span<const LabeledFeatures> data, size_t label) {
    size_t hits = 0;
    for (const auto &s : data) {
        hits += s.label == label;
    }
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

template <typename Err>
[[noreturn]] void rethrow_with_cell(const std::string &cell, const Err &e) {
    throw Err("grid cell " + cell + ": " + e.what());
}

}  // namespace

void validate_config(const ExperimentConfig &config) {
    if (config.n == 0 || config.n > MAX_FILTERS) {
        throw ConfigError("filter count must be in [1, 4], got " + std::to_string(config.n));
    }
    if (config.k < MIN_KERNEL || config.k > MAX_KERNEL) {
        throw ConfigError("kernel size must be in [2, 16], got " + std::to_string(config.k));
    }
    if (config.folds < 1) {
        throw ConfigError("need at least one run");
    }
    if (config.max_len == 0) {
        throw ConfigError("max length must be positive");
    }
    if (!(config.train.learning_rate > 0) || config.train.epochs == 0 || config.train.batch_size == 0) {
        throw ConfigError("learning rate, epochs and batch size must be positive");
    }
}

PreparedData load_data(const ExperimentConfig &config) {
    validate_config(config);
    if (config.train_path.empty()) {
        throw ConfigError("a training split is required");
    }
    LoadedSplit train = read_split(config.train_path, config);
    LoadedSplit dev;
    LoadedSplit test;
    if (!config.dev_path.empty()) {
        dev = read_split(config.dev_path, config);
    }
    if (!config.test_path.empty()) {
        test = read_split(config.test_path, config);
    }

    if (config.embeddings.toy_dim == 0) {
        std::vector<LoadedSplit *> tsv;
        for (auto *s : {&train, &dev, &test}) {
            if (s->from_tsv) {
                tsv.push_back(s);
            }
        }
        attach_embeddings(tsv, config.embeddings.qtce_paths);
    }

    PreparedData data;
    if (config.top_intents > 0) {
        auto split = filter_top_k_intents(train.utterances, dev.utterances, test.utterances, config.top_intents);
        data.label_index = std::move(split.label_index);
        train.sequences = keep_labels(std::move(train.sequences), data.label_index);
        dev.sequences = keep_labels(std::move(dev.sequences), data.label_index);
        test.sequences = keep_labels(std::move(test.sequences), data.label_index);
    } else {
        const std::vector<LabeledUtterance> *lists[] = {&train.utterances, &dev.utterances, &test.utterances};
        data.label_index = build_label_index(lists);
    }
    data.pool = std::move(train.sequences);
    data.pool.insert(data.pool.end(), dev.sequences.begin(), dev.sequences.end());
    data.test = std::move(test.sequences);
    if (data.pool.empty()) {
        throw DataError("training data is empty");
    }
    data.D = common_dim(data);
    return data;
}

PreparedData prepare_toy_data(
    const std::vector<LabeledUtterance> &pool, const std::vector<LabeledUtterance> &test, size_t D, uint64_t seed) {
    PreparedData data;
    const std::vector<LabeledUtterance> *lists[] = {&pool, &test};
    data.label_index = build_label_index(lists);
    for (const auto &u : pool) {
        data.pool.push_back(toy_embeddings(u, D, seed));
    }
    for (const auto &u : test) {
        data.test.push_back(toy_embeddings(u, D, seed));
    }
    data.D = D;
    return data;
}

uint64_t run_seed(uint64_t seed, size_t run) {
    return derive_seed(seed, run);
}

MetricsReport run_experiment(const ExperimentConfig &config, const PreparedData &data) {
    auto started = std::chrono::steady_clock::now();
    validate_config(config);
    size_t C = data.label_index.size();
    if (C < 2) {
        throw ConfigError("need at least 2 intent classes, found " + std::to_string(C));
    }
    if (data.pool.empty()) {
        throw DataError("training data is empty");
    }
    // Catch dimension problems before any training happens.
    if (common_dim(data) != data.D) {
        throw ShapeError("prepared data dimension does not match its sequences");
    }

    bool cross_validate = data.test.empty();
    std::vector<Fold> folds;
    if (cross_validate) {
        if (config.folds < 2) {
            throw ConfigError("cross-validation needs at least 2 folds");
        }
        folds = kfold_split(data.pool.size(), config.folds, config.seed);
    }

    MetricsReport report;
    report.protocol = cross_validate ? "kfold" : "seeded-runs";
    report.config = config_to_json(config);
    nlohmann::json banks = nlohmann::json::array();

    for (size_t r = 0; r < config.folds; r++) {
        uint64_t seed_r = run_seed(config.seed, r);
        auto bank = init_filter_bank(config.encoder, config.n, config.k, data.D, seed_r);
        nlohmann::json bank_json = {{"seed", seed_r}};
        if (bank.kind() == EncoderKind::qtc) {
            nlohmann::json circuits = nlohmann::json::array();
            for (const auto &f : bank.qtc_filters()) {
                circuits.push_back({{"k", f.circuit.k()}, {"depth", f.circuit.depth()}, {"seed", f.circuit.seed()}});
            }
            bank_json["circuits"] = std::move(circuits);
        }
        banks.push_back(std::move(bank_json));

        auto pool = label_features(extract_all(bank, data.pool, config.max_len, config.threads), data.pool, data.label_index);
        std::vector<LabeledFeatures> train_set;
        std::vector<LabeledFeatures> eval_set;
        if (cross_validate) {
            for (size_t i : folds[r].train_idx) {
                train_set.push_back(pool[i]);
            }
            for (size_t i : folds[r].heldout_idx) {
                eval_set.push_back(pool[i]);
            }
        } else {
            train_set = std::move(pool);
            eval_set = label_features(
                extract_all(bank, data.test, config.max_len, config.threads), data.test, data.label_index);
        }

        TrainConfig tc = config.train;
        tc.shuffle_seed = derive_seed(seed_r, 1);
        auto head = train(train_set, C, tc);
        report.runs.push_back(accuracy(head, eval_set));

        if (r == 0) {
            report.train_size = train_set.size();
            report.eval_size = eval_set.size();
            report.majority_baseline = share_of(eval_set, majority_label(train_set, C));
        }
    }
    report.config["filter_banks"] = std::move(banks);

    double total = 0;
    for (double a : report.runs) {
        total += a;
    }
    report.mean = total / static_cast<double>(report.runs.size());
    double var = 0;
    for (double a : report.runs) {
        var += (a - report.mean) * (a - report.mean);
    }
    report.std = std::sqrt(var / static_cast<double>(report.runs.size()));
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

MetricsReport run_experiment(const ExperimentConfig &config) {
    return run_experiment(config, load_data(config));
}

std::vector<std::pair<size_t, size_t>> default_grid_cells() {
    return {{1, 4}, {2, 2}, {2, 3}, {2, 4}};
}

GridResult run_grid(
    const ExperimentConfig &base,
    const PreparedData &data,
    const std::vector<std::pair<size_t, size_t>> &cells,
    const std::vector<EncoderKind> &encoders) {
    auto started = std::chrono::steady_clock::now();
    GridResult grid;
    grid.config = config_to_json(base);
    grid.config.erase("encoder");
    grid.config.erase("n");
    grid.config.erase("k");
    for (EncoderKind enc : encoders) {
        for (auto [n, k] : cells) {
            ExperimentConfig cfg = base;
            cfg.encoder = enc;
            cfg.n = n;
            cfg.k = k;
            std::string name =
                std::string(encoder_name(enc)) + " (" + std::to_string(n) + "," + std::to_string(k) + ")";
            try {
                grid.cells.push_back(GridCell{enc, n, k, run_experiment(cfg, data)});
            } catch (const ConfigError &e) {
                rethrow_with_cell(name, e);
            } catch (const ShapeError &e) {
                rethrow_with_cell(name, e);
            } catch (const ArgumentError &e) {
                rethrow_with_cell(name, e);
            } catch (const DataError &e) {
                rethrow_with_cell(name, e);
            } catch (const std::exception &e) {
                throw std::runtime_error("grid cell " + name + ": " + e.what());
            }
        }
    }
    grid.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return grid;
}

std::string render_table(const GridResult &grid) {
    std::vector<std::pair<size_t, size_t>> columns;
    std::vector<EncoderKind> rows;
    for (const auto &c : grid.cells) {
        if (std::find(columns.begin(), columns.end(), std::pair{c.n, c.k}) == columns.end()) {
            columns.emplace_back(c.n, c.k);
        }
        if (std::find(rows.begin(), rows.end(), c.encoder) == rows.end()) {
            rows.push_back(c.encoder);
        }
    }
    std::ostringstream out;
    out << std::left << std::setw(8) << "(n,k)";
    for (auto [n, k] : columns) {
        out << std::right << std::setw(8) << ("(" + std::to_string(n) + "," + std::to_string(k) + ")");
    }
    out << "\n";
    for (EncoderKind enc : rows) {
        std::string label = enc == EncoderKind::qtc ? "QTC" : "TCN";
        out << std::left << std::setw(8) << label;
        for (auto [n, k] : columns) {
            auto it = std::find_if(grid.cells.begin(), grid.cells.end(), [&](const GridCell &c) {
                return c.encoder == enc && c.n == n && c.k == k;
            });
            std::ostringstream cell;
            if (it == grid.cells.end()) {
                cell << "-";
            } else {
                cell << std::fixed << std::setprecision(2) << it->report.mean * 100.0;
            }
            out << std::right << std::setw(8) << cell.str();
        }
        out << "\n";
    }
    return out.str();
}

nlohmann::json config_to_json(const ExperimentConfig &config) {
    nlohmann::json qtce = nlohmann::json::array();
    for (const auto &p : config.embeddings.qtce_paths) {
        qtce.push_back(p.string());
    }
    return {
        {"train", config.train_path.string()},
        {"dev", config.dev_path.string()},
        {"test", config.test_path.string()},
        {"embeddings", {{"toy_dim", config.embeddings.toy_dim}, {"qtce", qtce}}},
        {"encoder", encoder_name(config.encoder)},
        {"n", config.n},
        {"k", config.k},
        {"seed", config.seed},
        {"folds", config.folds},
        {"max_len", config.max_len},
        {"top_intents", config.top_intents},
        {"training",
         {{"optimizer", optimizer_name(config.train.optimizer)},
          {"learning_rate", config.train.learning_rate},
          {"epochs", config.train.epochs},
          {"batch_size", config.train.batch_size}}},
    };
}

nlohmann::json report_to_json(const MetricsReport &report) {
    return {
        {"config", report.config},
        {"protocol", report.protocol},
        {"runs", report.runs},
        {"mean", report.mean},
        {"std", report.std},
        {"majority_baseline", report.majority_baseline},
        {"train_size", report.train_size},
        {"eval_size", report.eval_size},
        {"wall_time_s", report.wall_time_s},
    };
}

nlohmann::json grid_to_json(const GridResult &grid) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto &c : grid.cells) {
        cells.push_back({
            {"encoder", encoder_name(c.encoder)},
            {"n", c.n},
            {"k", c.k},
            {"report", report_to_json(c.report)},
        });
    }
    return {{"config", grid.config}, {"cells", cells}, {"table", render_table(grid)}, {"wall_time_s", grid.wall_time_s}};
}

std::vector<std::string> check_report(const nlohmann::json &report) {
    std::vector<std::string> problems;
    for (const char *key : {"config", "runs", "mean", "std", "wall_time_s"}) {
        if (!report.contains(key)) {
            problems.push_back(std::string("missing key '") + key + "'");
        }
    }
    if (!problems.empty()) {
        return problems;
    }
    const auto &runs = report["runs"];
    if (!runs.is_array() || runs.empty()) {
        problems.emplace_back("'runs' must be a non-empty array");
        return problems;
    }
    double total = 0;
    for (const auto &r : runs) {
        if (!r.is_number()) {
            problems.emplace_back("run accuracy is not a number");
            return problems;
        }
        double a = r.get<double>();
        if (a < 0 || a > 1) {
            problems.push_back("run accuracy " + std::to_string(a) + " outside [0, 1]");
        }
        total += a;
    }
    double mean = total / static_cast<double>(runs.size());
    double var = 0;
    for (const auto &r : runs) {
        var += (r.get<double>() - mean) * (r.get<double>() - mean);
    }
    double std = std::sqrt(var / static_cast<double>(runs.size()));
    if (!report["mean"].is_number() || std::abs(report["mean"].get<double>() - mean) > 1e-12) {
        problems.emplace_back("'mean' does not match the runs");
    }
    if (!report["std"].is_number() || std::abs(report["std"].get<double>() - std) > 1e-12) {
        problems.emplace_back("'std' does not match the runs");
    }
    if (report["config"].contains("folds") && report["config"]["folds"].get<size_t>() != runs.size()) {
        problems.emplace_back("run count differs from config.folds");
    }
    if (!report["wall_time_s"].is_number() || report["wall_time_s"].get<double>() < 0) {
        problems.emplace_back("'wall_time_s' must be a non-negative number");
    }
    return problems;
}

std::vector<std::string> check_grid_report(const nlohmann::json &grid) {
    std::vector<std::string> problems;
    if (!grid.contains("cells") || !grid["cells"].is_array()) {
        problems.emplace_back("missing 'cells' array");
        return problems;
    }
    for (const auto &cell : grid["cells"]) {
        for (const char *key : {"encoder", "n", "k", "report"}) {
            if (!cell.contains(key)) {
                problems.push_back(std::string("grid cell missing key '") + key + "'");
            }
        }
        if (cell.contains("report")) {
            for (auto &p : check_report(cell["report"])) {
                problems.push_back("cell " + cell.value("encoder", std::string("?")) + ": " + p);
            }
        }
    }
    return problems;
}

}  // namespace qtc

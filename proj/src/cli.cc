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

#include "qtc/cli.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "qtc/errors.h"
#include "qtc/harness.h"
#include "qtc/qtce.h"
#include "qtc/rng.h"

namespace qtc {

namespace {

struct Options {
    std::string train;
    std::string dev;
    std::string test;
    std::string embeddings;
    size_t toy_dim = 0;
    std::string encoder = "qtc";
    size_t filters = 2;
    size_t kernel = 4;
    uint64_t seed = 0;
    size_t folds = 10;
    size_t epochs = TrainConfig{}.epochs;
    double lr = TrainConfig{}.learning_rate;
    size_t batch_size = TrainConfig{}.batch_size;
    std::string optimizer = "adam";
    size_t max_len = DEFAULT_MAX_LEN;
    size_t top_intents = 0;
    size_t threads = 1;
    std::string out;
    std::string head;
};

std::vector<std::filesystem::path> split_paths(const std::string &csv) {
    std::vector<std::filesystem::path> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.emplace_back(item);
        }
    }
    return out;
}

ExperimentConfig to_config(const Options &o) {
    ExperimentConfig c;
    c.train_path = o.train;
    c.dev_path = o.dev;
    c.test_path = o.test;
    c.embeddings.toy_dim = o.toy_dim;
    c.embeddings.qtce_paths = split_paths(o.embeddings);
    c.encoder = parse_encoder_kind(o.encoder);
    c.n = o.filters;
    c.k = o.kernel;
    c.seed = o.seed;
    c.folds = o.folds;
    c.max_len = o.max_len;
    c.top_intents = o.top_intents;
    c.threads = o.threads;
    c.train.learning_rate = o.lr;
    c.train.epochs = o.epochs;
    c.train.batch_size = o.batch_size;
    c.train.optimizer = parse_optimizer(o.optimizer);
    validate_config(c);
    return c;
}

void add_data_flags(CLI::App *cmd, Options &o, bool train_required) {
    auto *train = cmd->add_option("--train", o.train, "training split (TSV or QTCE)");
    if (train_required) {
        train->required();
    }
    cmd->add_option("--dev", o.dev, "development split, pooled with train (TSV or QTCE)");
    cmd->add_option("--test", o.test, "held-out test split (TSV or QTCE); omit for k-fold CV over train+dev");
    cmd->add_option("--embeddings", o.embeddings, "QTCE file(s) aligned with the TSV splits, comma separated");
    cmd->add_option("--toy-dim", o.toy_dim, "use deterministic toy embeddings of this dimension");
    cmd->add_option("--top-intents", o.top_intents, "keep only the K most frequent train intents");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--max-len", o.max_len, "truncate utterances to this many tokens");
    cmd->add_option("--threads", o.threads, "feature extraction workers");
    cmd->add_option("--out", o.out, "output file");
}

void add_model_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--encoder", o.encoder, "qtc or tcn");
    cmd->add_option("--filters", o.filters, "filter count n (1-4)");
    cmd->add_option("--kernel", o.kernel, "kernel size / qubit count k (2-16)");
}

void add_train_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--folds", o.folds, "number of seeded runs (or CV folds without --test)");
    cmd->add_option("--epochs", o.epochs, "training epochs");
    cmd->add_option("--lr", o.lr, "learning rate");
    cmd->add_option("--batch-size", o.batch_size, "mini-batch size");
    cmd->add_option("--optimizer", o.optimizer, "adam or sgd");
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) {
        throw IoError("cannot write " + path);
    }
    f << text;
    if (!f) {
        throw IoError("write failed for " + path);
    }
}

nlohmann::json read_json(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot read " + path);
    }
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(path + ": " + e.what());
    }
}

std::vector<std::string> labels_by_index(const LabelIndex &index) {
    std::vector<std::string> labels(index.size());
    for (const auto &[label, i] : index) {
        labels[i] = label;
    }
    return labels;
}

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void emit_report_json(const nlohmann::json &j, const std::vector<std::string> &problems, const std::string &path) {
    if (!problems.empty()) {
        throw std::logic_error("report failed self-check: " + problems.front());
    }
    if (!path.empty()) {
        write_text(path, j.dump(2) + "\n");
    }
}

int cmd_features(const Options &o, std::ostream &out) {
    auto config = to_config(o);
    auto data = load_data(config);
    if (ends_with(o.out, ".qtce")) {
        std::vector<EmbeddingSequence> all = data.pool;
        all.insert(all.end(), data.test.begin(), data.test.end());
        write_embedding_file(o.out, all);
        out << "wrote " << all.size() << " embedding records to " << o.out << "\n";
        return EXIT_OK;
    }
    auto bank = init_filter_bank(config.encoder, config.n, config.k, data.D, run_seed(config.seed, 0));
    std::ostringstream lines;
    auto dump = [&](const std::vector<EmbeddingSequence> &seqs, const char *split) {
        auto feats = extract_all(bank, seqs, config.max_len, config.threads);
        for (size_t i = 0; i < seqs.size(); i++) {
            nlohmann::json j = {{"id", seqs[i].id}, {"label", seqs[i].label}, {"split", split}, {"features", feats[i].values}};
            lines << j.dump() << "\n";
        }
    };
    dump(data.pool, "train");
    dump(data.test, "test");
    if (o.out.empty()) {
        out << lines.str();
    } else {
        write_text(o.out, lines.str());
        out << "wrote features for " << data.pool.size() + data.test.size() << " utterances to " << o.out << "\n";
    }
    return EXIT_OK;
}

int cmd_train(const Options &o, std::ostream &out) {
    auto config = to_config(o);
    auto data = load_data(config);
    size_t C = data.label_index.size();
    if (C < 2) {
        throw ConfigError("need at least 2 intent classes");
    }
    uint64_t bank_seed = run_seed(config.seed, 0);
    auto bank = init_filter_bank(config.encoder, config.n, config.k, data.D, bank_seed);
    auto feats = extract_all(bank, data.pool, config.max_len, config.threads);
    std::vector<LabeledFeatures> train_set;
    for (size_t i = 0; i < feats.size(); i++) {
        train_set.push_back({std::move(feats[i].values), data.label_index.at(data.pool[i].label)});
    }
    TrainConfig tc = config.train;
    tc.shuffle_seed = derive_seed(bank_seed, 1);
    auto head = train(train_set, C, tc);
    out << "train accuracy " << std::fixed << std::setprecision(4) << accuracy(head, train_set) << "\n";
    if (!data.test.empty()) {
        auto test_feats = extract_all(bank, data.test, config.max_len, config.threads);
        std::vector<LabeledFeatures> test_set;
        for (size_t i = 0; i < test_feats.size(); i++) {
            test_set.push_back({std::move(test_feats[i].values), data.label_index.at(data.test[i].label)});
        }
        out << "test accuracy " << accuracy(head, test_set) << "\n";
    }
    auto j = head_to_json(head);
    j["labels"] = labels_by_index(data.label_index);
    j["encoder"] = {
        {"kind", encoder_name(config.encoder)},
        {"n", config.n},
        {"k", config.k},
        {"D", data.D},
        {"seed", bank_seed},
        {"max_len", config.max_len},
    };
    j["embeddings"] = {{"toy_dim", config.embeddings.toy_dim}, {"corpus_seed", config.seed}};
    if (!o.out.empty()) {
        write_text(o.out, j.dump(2) + "\n");
        out << "wrote head to " << o.out << "\n";
    }
    return EXIT_OK;
}

int cmd_eval(const Options &o, std::ostream &out) {
    auto config = to_config(o);
    auto report = run_experiment(config);
    auto j = report_to_json(report);
    emit_report_json(j, check_report(j), o.out);
    out << encoder_name(config.encoder) << " (" << config.n << "," << config.k << ") " << report.protocol << ": mean "
        << std::fixed << std::setprecision(2) << report.mean * 100 << "% std " << report.std * 100 << "% over "
        << report.runs.size() << " runs\n";
    return EXIT_OK;
}

int cmd_grid(const Options &o, std::ostream &out) {
    auto config = to_config(o);
    auto data = load_data(config);
    auto grid = run_grid(config, data);
    auto j = grid_to_json(grid);
    emit_report_json(j, check_grid_report(j), o.out);
    out << render_table(grid);
    return EXIT_OK;
}

int cmd_predict(const Options &o, std::ostream &out) {
    auto j = read_json(o.head);
    auto head = head_from_json(j);
    std::vector<std::string> labels;
    size_t D = 0;
    size_t max_len = DEFAULT_MAX_LEN;
    std::optional<FilterBank> bank;
    try {
        labels = j.at("labels").get<std::vector<std::string>>();
        const auto &enc = j.at("encoder");
        D = enc.at("D").get<size_t>();
        max_len = enc.at("max_len").get<size_t>();
        bank = init_filter_bank(
            parse_encoder_kind(enc.at("kind").get<std::string>()), enc.at("n").get<size_t>(), enc.at("k").get<size_t>(), D,
            enc.at("seed").get<uint64_t>());
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(o.head + ": " + e.what());
    }
    if (labels.size() != head.num_classes() || bank->feature_dim() != head.feature_dim()) {
        throw FormatError(o.head + ": labels or encoder shape disagree with the head");
    }

    std::vector<EmbeddingSequence> seqs;
    if (!o.embeddings.empty()) {
        for (const auto &p : split_paths(o.embeddings)) {
            auto part = read_embedding_file(p);
            seqs.insert(seqs.end(), part.begin(), part.end());
        }
    } else if (!o.test.empty()) {
        size_t toy_dim = o.toy_dim > 0 ? o.toy_dim : j.at("embeddings").value("toy_dim", size_t{0});
        uint64_t corpus_seed = j.at("embeddings").value("corpus_seed", uint64_t{0});
        if (toy_dim == 0) {
            throw ConfigError("predicting from TSV needs toy embeddings (--toy-dim)");
        }
        for (const auto &u : parse_intent_tsv(o.test)) {
            seqs.push_back(toy_embeddings(u, toy_dim, corpus_seed));
        }
    } else {
        throw ConfigError("predict needs --embeddings or --test");
    }

    std::ostringstream lines;
    auto feats = extract_all(*bank, seqs, max_len, o.threads);
    for (size_t i = 0; i < seqs.size(); i++) {
        lines << seqs[i].id << "\t" << labels[predict_label(head, feats[i].values)] << "\t" << seqs[i].label << "\n";
    }
    if (o.out.empty()) {
        out << lines.str();
    } else {
        write_text(o.out, lines.str());
    }
    return EXIT_OK;
}

}  // namespace

int cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum temporal convolution toolkit for intent classification"};
    app.name("qtc");
    app.require_subcommand(1);
    Options o;

    auto *features = app.add_subcommand("features", "dump pooled features (JSONL) or embeddings (.qtce)");
    add_data_flags(features, o, true);
    add_model_flags(features, o);

    auto *train_cmd = app.add_subcommand("train", "train a softmax head and write it as JSON");
    add_data_flags(train_cmd, o, true);
    add_model_flags(train_cmd, o);
    add_train_flags(train_cmd, o);

    auto *eval = app.add_subcommand("eval", "run one (encoder, n, k) experiment and write a JSON report");
    add_data_flags(eval, o, true);
    add_model_flags(eval, o);
    add_train_flags(eval, o);

    auto *grid = app.add_subcommand("grid", "run the TCN/QTC x (n,k) grid and print the table");
    add_data_flags(grid, o, true);
    add_model_flags(grid, o);
    add_train_flags(grid, o);

    auto *predict_cmd = app.add_subcommand("predict", "label utterances with a trained head");
    predict_cmd->add_option("--head", o.head, "head JSON written by `train`")->required();
    predict_cmd->add_option("--embeddings", o.embeddings, "QTCE file(s) to label");
    predict_cmd->add_option("--test", o.test, "TSV to label with toy embeddings");
    predict_cmd->add_option("--toy-dim", o.toy_dim, "override the head's toy embedding dimension");
    predict_cmd->add_option("--threads", o.threads, "feature extraction workers");
    predict_cmd->add_option("--out", o.out, "write id<TAB>predicted<TAB>gold lines here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return EXIT_OK;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App *active = &app;
        for (auto *sub : app.get_subcommands()) {
            active = sub;
        }
        err << active->help();
        return EXIT_USAGE;
    }

    try {
        if (features->parsed()) {
            return cmd_features(o, out);
        }
        if (train_cmd->parsed()) {
            return cmd_train(o, out);
        }
        if (eval->parsed()) {
            return cmd_eval(o, out);
        }
        if (grid->parsed()) {
            return cmd_grid(o, out);
        }
        return cmd_predict(o, out);
    } catch (const ConfigError &e) {
        err << "configuration error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const ArgumentError &e) {
        err << "argument error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const DataError &e) {
        err << "data error: " << e.what() << "\n";
        return EXIT_DATA;
    } catch (const ShapeError &e) {
        err << "shape error: " << e.what() << "\n";
        return EXIT_DATA;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_DATA;
    }
}

}  // namespace qtc

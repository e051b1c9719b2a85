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

#include <iomanip>
#include <sstream>

#include "gtest/gtest.h"
#include "qtc/errors.h"
#include "qtc/qtce.h"
#include "qtc/synthetic.h"
#include "test_util.h"

using namespace qtc;

namespace {

KeywordCorpus small_corpus() {
    return make_keyword_corpus(KeywordCorpusOptions{.num_classes = 3, .train_per_class = 6, .test_per_class = 3, .seed = 4});
}

ExperimentConfig quick_config() {
    ExperimentConfig config;
    config.embeddings.toy_dim = 16;
    config.seed = 42;
    config.train.epochs = 20;
    config.train.learning_rate = 0.1;
    return config;
}

void expect_same_report(const MetricsReport &a, const MetricsReport &b) {
    EXPECT_EQ(a.runs, b.runs);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std, b.std);
    EXPECT_EQ(a.majority_baseline, b.majority_baseline);
    EXPECT_EQ(a.protocol, b.protocol);
    EXPECT_EQ(a.config, b.config);
}

}  // namespace

TEST(synthetic, keyword_corpus_layout) {
    auto corpus = small_corpus();
    ASSERT_EQ(corpus.train.size(), 18u);
    ASSERT_EQ(corpus.test.size(), 9u);
    EXPECT_EQ(corpus.train[0].id, "train-1");
    EXPECT_EQ(corpus.train[1].label, "intent1");
    EXPECT_EQ(corpus.train[1].tokens[0], "c1kw0");
    EXPECT_EQ(corpus.train[1].tokens[1], "c1kw1");
    for (const auto &u : corpus.train) {
        EXPECT_LE(u.tokens.size(), 3u);
    }
    EXPECT_EQ(make_keyword_corpus(KeywordCorpusOptions{.seed = 4}).train, make_keyword_corpus(KeywordCorpusOptions{.seed = 4}).train);
    EXPECT_THROW(make_keyword_corpus(KeywordCorpusOptions{.num_classes = 1}), ConfigError);
}

TEST(harness, seeded_runs_report) {
    auto corpus = small_corpus();
    auto config = quick_config();
    auto data = prepare_toy_data(corpus.train, corpus.test, 16, config.seed);
    auto report = run_experiment(config, data);
    EXPECT_EQ(report.protocol, "seeded-runs");
    EXPECT_EQ(report.runs.size(), 10u);
    EXPECT_EQ(report.train_size, 18u);
    EXPECT_EQ(report.eval_size, 9u);
    EXPECT_NEAR(report.majority_baseline, 1.0 / 3, 1e-12);
    for (double a : report.runs) {
        EXPECT_GE(a, 0.0);
        EXPECT_LE(a, 1.0);
    }
    auto j = report_to_json(report);
    EXPECT_TRUE(check_report(j).empty());
    ASSERT_EQ(j["config"]["filter_banks"].size(), 10u);
    EXPECT_EQ(j["config"]["filter_banks"][3]["seed"].get<uint64_t>(), run_seed(42, 3));
    EXPECT_EQ(j["config"]["filter_banks"][0]["circuits"].size(), 2u);
}

TEST(harness, reports_are_deterministic) {
    auto corpus = small_corpus();
    auto config = quick_config();
    config.folds = 3;
    auto data = prepare_toy_data(corpus.train, corpus.test, 16, config.seed);
    expect_same_report(run_experiment(config, data), run_experiment(config, data));
    config.encoder = EncoderKind::tcn;
    expect_same_report(run_experiment(config, data), run_experiment(config, data));
}

TEST(harness, kfold_without_test_split) {
    auto corpus = small_corpus();
    auto config = quick_config();
    config.folds = 6;
    auto data = prepare_toy_data(corpus.train, {}, 16, config.seed);
    auto report = run_experiment(config, data);
    EXPECT_EQ(report.protocol, "kfold");
    EXPECT_EQ(report.runs.size(), 6u);
    EXPECT_EQ(report.eval_size, 3u);
    EXPECT_EQ(report.train_size, 15u);
    EXPECT_TRUE(check_report(report_to_json(report)).empty());
}

TEST(harness, dimension_mismatch_is_caught_before_training) {
    auto corpus = small_corpus();
    auto data = prepare_toy_data(corpus.train, corpus.test, 16, 1);
    data.test[2] = toy_embeddings(corpus.test[2], 8, 1);
    EXPECT_THROW(run_experiment(quick_config(), data), ShapeError);
}

TEST(harness, config_validation) {
    auto config = quick_config();
    config.k = 17;
    EXPECT_THROW(validate_config(config), ConfigError);
    config = quick_config();
    config.n = 0;
    EXPECT_THROW(validate_config(config), ConfigError);
    config = quick_config();
    config.train.epochs = 0;
    EXPECT_THROW(validate_config(config), ConfigError);
    config = quick_config();
    config.folds = 0;
    EXPECT_THROW(validate_config(config), ConfigError);
}

TEST(harness, tampered_reports_are_flagged) {
    auto corpus = small_corpus();
    auto config = quick_config();
    config.folds = 2;
    auto j = report_to_json(run_experiment(config, prepare_toy_data(corpus.train, corpus.test, 16, 1)));
    ASSERT_TRUE(check_report(j).empty());

    auto bad_mean = j;
    bad_mean["mean"] = bad_mean["mean"].get<double>() + 0.01;
    EXPECT_FALSE(check_report(bad_mean).empty());
    auto bad_run = j;
    bad_run["runs"][0] = 1.5;
    EXPECT_FALSE(check_report(bad_run).empty());
    auto extra_run = j;
    extra_run["runs"].push_back(j["runs"][0]);
    EXPECT_FALSE(check_report(extra_run).empty());
    auto missing = j;
    missing.erase("std");
    EXPECT_FALSE(check_report(missing).empty());
}

TEST(harness, grid_table_and_json) {
    auto corpus = small_corpus();
    auto config = quick_config();
    config.folds = 2;
    auto grid = run_grid(config, prepare_toy_data(corpus.train, corpus.test, 16, 1));
    ASSERT_EQ(grid.cells.size(), 8u);
    EXPECT_EQ(grid.cells[0].encoder, EncoderKind::tcn);
    EXPECT_EQ(grid.cells[7].encoder, EncoderKind::qtc);
    EXPECT_EQ(grid.cells[7].n, 2u);
    EXPECT_EQ(grid.cells[7].k, 4u);

    auto table = render_table(grid);
    std::istringstream lines(table);
    std::vector<std::string> rows;
    for (std::string line; std::getline(lines, line);) {
        rows.push_back(line);
    }
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], "(n,k)      (1,4)   (2,2)   (2,3)   (2,4)");
    EXPECT_EQ(rows[1].substr(0, 3), "TCN");
    EXPECT_EQ(rows[2].substr(0, 3), "QTC");
    std::ostringstream qtc24;
    qtc24 << std::fixed << std::setprecision(2) << grid.cells[7].report.mean * 100;
    EXPECT_EQ(rows[2].substr(rows[2].size() - qtc24.str().size()), qtc24.str());

    auto j = grid_to_json(grid);
    EXPECT_TRUE(check_grid_report(j).empty());
    EXPECT_EQ(j["table"].get<std::string>(), table);
    j["cells"][3]["report"]["std"] = 9.0;
    EXPECT_FALSE(check_grid_report(j).empty());
}

TEST(harness, grid_failures_name_the_cell) {
    auto corpus = small_corpus();
    auto data = prepare_toy_data(corpus.train, corpus.test, 16, 1);
    try {
        run_grid(quick_config(), data, {{5, 4}}, {EncoderKind::qtc});
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("qtc (5,4)"), std::string::npos) << e.what();
    }
}

TEST(harness, load_tsv_with_toy_embeddings) {
    qtc_test::TempDir dir;
    auto corpus = small_corpus();
    auto config = quick_config();
    config.train_path = qtc_test::write_text(dir / "train.tsv", qtc_test::to_tsv(corpus.train));
    config.test_path = qtc_test::write_text(dir / "test.tsv", qtc_test::to_tsv(corpus.test));
    auto data = load_data(config);
    EXPECT_EQ(data.pool.size(), 18u);
    EXPECT_EQ(data.test.size(), 9u);
    EXPECT_EQ(data.D, 16u);
    EXPECT_EQ(data.label_index.size(), 3u);
    EXPECT_EQ(data.pool[4].matrix, toy_embeddings(corpus.train[4], 16, config.seed).matrix);

    config.dev_path = qtc_test::write_text(dir / "dev.tsv", qtc_test::to_tsv(corpus.test));
    EXPECT_EQ(load_data(config).pool.size(), 27u);
}

TEST(harness, load_aligned_embedding_files) {
    qtc_test::TempDir dir;
    auto corpus = small_corpus();
    auto config = quick_config();
    config.embeddings.toy_dim = 0;
    config.train_path = qtc_test::write_text(dir / "train.tsv", qtc_test::to_tsv(corpus.train));
    config.test_path = qtc_test::write_text(dir / "test.tsv", qtc_test::to_tsv(corpus.test));
    std::vector<EmbeddingSequence> train_emb;
    std::vector<EmbeddingSequence> test_emb;
    for (const auto &u : corpus.train) {
        train_emb.push_back(toy_embeddings(u, 8, 3));
    }
    for (const auto &u : corpus.test) {
        test_emb.push_back(toy_embeddings(u, 8, 3));
    }
    write_embedding_file(dir / "train.qtce", train_emb);
    write_embedding_file(dir / "test.qtce", test_emb);

    EXPECT_THROW(load_data(config), ConfigError);

    config.embeddings.qtce_paths = {dir / "train.qtce", dir / "test.qtce"};
    auto data = load_data(config);
    EXPECT_EQ(data.D, 8u);
    EXPECT_EQ(data.pool, train_emb);
    EXPECT_EQ(data.test, test_emb);

    auto all = train_emb;
    all.insert(all.end(), test_emb.begin(), test_emb.end());
    write_embedding_file(dir / "all.qtce", all);
    config.embeddings.qtce_paths = {dir / "all.qtce"};
    EXPECT_EQ(load_data(config).test, test_emb);

    config.embeddings.qtce_paths = {dir / "train.qtce"};
    EXPECT_THROW(load_data(config), DataError);

    auto relabeled = test_emb;
    relabeled[1].label = "intent9";
    write_embedding_file(dir / "bad.qtce", relabeled);
    config.embeddings.qtce_paths = {dir / "train.qtce", dir / "bad.qtce"};
    EXPECT_THROW(load_data(config), DataError);
}

TEST(harness, load_qtce_splits_directly) {
    qtc_test::TempDir dir;
    auto corpus = small_corpus();
    std::vector<EmbeddingSequence> train_emb;
    for (const auto &u : corpus.train) {
        train_emb.push_back(toy_embeddings(u, 8, 3));
    }
    ExperimentConfig config;
    config.train_path = dir / "train.qtce";
    write_embedding_file(config.train_path, train_emb);
    auto data = load_data(config);
    EXPECT_EQ(data.pool, train_emb);
    EXPECT_TRUE(data.test.empty());
    EXPECT_EQ(data.label_index.size(), 3u);

    config.test_path = dir / "missing.qtce";
    EXPECT_THROW(load_data(config), IoError);
}

TEST(harness, load_with_top_intents) {
    qtc_test::TempDir dir;
    std::vector<LabeledUtterance> train;
    for (auto [label, count] : std::vector<std::pair<std::string, int>>{{"A", 5}, {"B", 3}, {"C", 1}}) {
        for (int i = 0; i < count; i++) {
            train.push_back({.id = "", .tokens = {"w" + std::to_string(i)}, .label = label});
        }
    }
    auto config = quick_config();
    config.top_intents = 2;
    config.train_path = qtc_test::write_text(dir / "train.tsv", qtc_test::to_tsv(train));
    auto data = load_data(config);
    EXPECT_EQ(data.pool.size(), 8u);
    EXPECT_EQ(data.label_index, (LabelIndex{{"A", 0}, {"B", 1}}));
}

TEST(harness, load_rejects_mixed_dimensions) {
    qtc_test::TempDir dir;
    auto corpus = small_corpus();
    std::vector<EmbeddingSequence> a;
    std::vector<EmbeddingSequence> b;
    for (const auto &u : corpus.train) {
        a.push_back(toy_embeddings(u, 8, 3));
    }
    for (const auto &u : corpus.test) {
        b.push_back(toy_embeddings(u, 12, 3));
    }
    ExperimentConfig config;
    config.train_path = dir / "a.qtce";
    config.test_path = dir / "b.qtce";
    write_embedding_file(config.train_path, a);
    write_embedding_file(config.test_path, b);
    EXPECT_THROW(load_data(config), ShapeError);
}

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

#include "qtc/data.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "qtc/errors.h"
#include "qtc/rng.h"

namespace qtc {

namespace {

std::vector<std::string> lowercase_words(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (!cur.empty()) {
        out.push_back(std::move(cur));
    }
    return out;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

std::vector<LabeledUtterance> parse_intent_tsv_text(std::string_view text) {
    std::vector<LabeledUtterance> out;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (is_blank(line)) {
            continue;
        }
        size_t tab = line.find('\t');
        if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected exactly one TAB separating text and intent");
        }
        std::string label(line.substr(tab + 1));
        // Labels keep their case; only surrounding whitespace is dropped.
        size_t b = label.find_first_not_of(" \t\r\f\v");
        size_t e = label.find_last_not_of(" \t\r\f\v");
        label = b == std::string::npos ? "" : label.substr(b, e - b + 1);
        if (label.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty intent label");
        }
        out.push_back(LabeledUtterance{
            .id = "line-" + std::to_string(line_no),
            .tokens = lowercase_words(line.substr(0, tab)),
            .label = std::move(label),
        });
    }
    return out;
}

std::vector<LabeledUtterance> parse_intent_tsv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_intent_tsv_text(buf.str());
}

LabelIndex build_label_index(std::span<const std::vector<LabeledUtterance> *const> lists) {
    std::set<std::string> labels;
    for (const auto *list : lists) {
        for (const auto &u : *list) {
            labels.insert(u.label);
        }
    }
    LabelIndex index;
    for (const auto &l : labels) {
        index.emplace(l, index.size());
    }
    return index;
}

DatasetSplit filter_top_k_intents(
    const std::vector<LabeledUtterance> &train,
    const std::vector<LabeledUtterance> &dev,
    const std::vector<LabeledUtterance> &test,
    size_t k) {
    if (k == 0) {
        throw ConfigError("top-k intent filter needs k >= 1");
    }
    std::map<std::string, size_t> counts;
    for (const auto &u : train) {
        counts[u.label]++;
    }
    if (counts.size() < k) {
        throw ConfigError(
            "train split has " + std::to_string(counts.size()) + " distinct intents, fewer than k=" + std::to_string(k));
    }
    std::vector<std::pair<std::string, size_t>> ranked(counts.begin(), counts.end());
    // counts is already in label order, so a stable sort breaks ties lexicographically.
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) { return a.second > b.second; });
    std::set<std::string> keep;
    for (size_t i = 0; i < k; i++) {
        keep.insert(ranked[i].first);
    }
    auto select = [&](const std::vector<LabeledUtterance> &src) {
        std::vector<LabeledUtterance> out;
        std::copy_if(src.begin(), src.end(), std::back_inserter(out), [&](const auto &u) {
            return keep.contains(u.label);
        });
        return out;
    };
    DatasetSplit split{.train = select(train), .dev = select(dev), .test = select(test), .label_index = {}};
    const std::vector<LabeledUtterance> *lists[] = {&split.train, &split.dev, &split.test};
    split.label_index = build_label_index(lists);
    return split;
}

std::vector<Fold> kfold_split(size_t num_items, size_t folds, uint64_t seed) {
    if (folds < 2) {
        throw ArgumentError("k-fold split needs at least 2 folds");
    }
    if (num_items < folds) {
        throw ArgumentError(
            "k-fold split needs at least as many items (" + std::to_string(num_items) + ") as folds (" +
            std::to_string(folds) + ")");
    }
    std::vector<size_t> order(num_items);
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(seed);
    for (size_t i = num_items; i > 1; i--) {
        std::swap(order[i - 1], order[rng.index(i)]);
    }
    std::vector<Fold> out(folds);
    size_t base = num_items / folds;
    size_t extra = num_items % folds;
    size_t start = 0;
    for (size_t f = 0; f < folds; f++) {
        size_t len = base + (f < extra ? 1 : 0);
        out[f].heldout_idx.assign(order.begin() + start, order.begin() + start + len);
        out[f].train_idx.reserve(num_items - len);
        out[f].train_idx.insert(out[f].train_idx.end(), order.begin(), order.begin() + start);
        out[f].train_idx.insert(out[f].train_idx.end(), order.begin() + start + len, order.end());
        start += len;
    }
    return out;
}

EmbeddingSequence toy_embeddings(const LabeledUtterance &utt, size_t D, uint64_t corpus_seed) {
    if (D == 0) {
        throw ConfigError("embedding dimension must be at least 1");
    }
    EmbeddingSequence seq{.id = utt.id, .label = utt.label, .T = utt.tokens.size(), .D = D, .matrix = {}};
    seq.matrix.reserve(seq.T * D);
    double scale = 1.0 / std::sqrt(static_cast<double>(D));
    for (const auto &tok : utt.tokens) {
        SplitMix64 rng(splitmix64_mix(corpus_seed ^ fnv1a64(tok)));
        for (size_t d = 0; d < D; d++) {
            seq.matrix.push_back(static_cast<float>(rng.normal() * scale));
        }
    }
    return seq;
}

}  // namespace qtc

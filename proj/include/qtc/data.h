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

#ifndef _QTC_DATA_H
#define _QTC_DATA_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qtc {

struct LabeledUtterance {
    std::string id;
    std::vector<std::string> tokens;
    std::string label;

    bool operator==(const LabeledUtterance &) const = default;
};

/// T x D token embedding matrix (row-major float32) for one utterance.
struct EmbeddingSequence {
    std::string id;
    std::string label;
    size_t T = 0;
    size_t D = 0;
    std::vector<float> matrix;

    std::span<const float> row(size_t t) const {
        return std::span<const float>(matrix).subspan(t * D, D);
    }

    bool operator==(const EmbeddingSequence &) const = default;
};

/// Intent string -> contiguous class index, ordered lexicographically by label.
using LabelIndex = std::map<std::string, size_t>;

struct DatasetSplit {
    std::vector<LabeledUtterance> train;
    std::vector<LabeledUtterance> dev;
    std::vector<LabeledUtterance> test;
    LabelIndex label_index;
};

/// Reads "utterance text<TAB>intent" lines. Tokens are the lowercased
/// whitespace-separated words; ids are "line-N" with N the 1-based line number.
/// Blank lines are skipped.
std::vector<LabeledUtterance> parse_intent_tsv(const std::filesystem::path &path);

/// Same as parse_intent_tsv, reading from an in-memory buffer.
std::vector<LabeledUtterance> parse_intent_tsv_text(std::string_view text);

LabelIndex build_label_index(std::span<const std::vector<LabeledUtterance> *const> lists);

/// Keeps the `k` most frequent intents of the train split (ties broken by
/// label order) and drops every other utterance from all three splits.
DatasetSplit filter_top_k_intents(
    const std::vector<LabeledUtterance> &train,
    const std::vector<LabeledUtterance> &dev,
    const std::vector<LabeledUtterance> &test,
    size_t k = 7);

struct Fold {
    std::vector<size_t> train_idx;
    std::vector<size_t> heldout_idx;
};

/// Shuffles [0, num_items) with SplitMix64(seed) and cuts it into `folds`
/// contiguous blocks whose sizes differ by at most one (larger blocks first).
std::vector<Fold> kfold_split(size_t num_items, size_t folds = 10, uint64_t seed = 0);

/// Deterministic per-token random vectors: token t maps to D draws of
/// Normal(0, 1/sqrt(D)) from SplitMix64(mix(corpus_seed ^ fnv1a64(t))).
EmbeddingSequence toy_embeddings(const LabeledUtterance &utt, size_t D, uint64_t corpus_seed);

}  // namespace qtc

#endif

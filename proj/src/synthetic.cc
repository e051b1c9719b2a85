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

#include "qtc/synthetic.h"

#include <string>

#include "qtc/errors.h"
#include "qtc/rng.h"

namespace qtc {

namespace {

LabeledUtterance make_utterance(const KeywordCorpusOptions &opts, size_t cls, SplitMix64 &rng, std::string id) {
    std::vector<std::string> tokens{
        "c" + std::to_string(cls) + "kw0",
        "c" + std::to_string(cls) + "kw1",
    };
    size_t span = opts.max_fillers - opts.min_fillers + 1;
    size_t fillers = opts.min_fillers + rng.index(span);
    for (size_t i = 0; i < fillers && opts.filler_vocab > 0; i++) {
        tokens.push_back("filler" + std::to_string(rng.index(opts.filler_vocab)));
    }
    return LabeledUtterance{.id = std::move(id), .tokens = std::move(tokens), .label = "intent" + std::to_string(cls)};
}

}  // namespace

KeywordCorpus make_keyword_corpus(const KeywordCorpusOptions &opts) {
    if (opts.num_classes < 2 || opts.max_fillers < opts.min_fillers) {
        throw ConfigError("keyword corpus needs >= 2 classes and min_fillers <= max_fillers");
    }
    SplitMix64 rng(opts.seed);
    KeywordCorpus corpus;
    for (size_t i = 0; i < opts.train_per_class; i++) {
        for (size_t c = 0; c < opts.num_classes; c++) {
            corpus.train.push_back(make_utterance(opts, c, rng, "train-" + std::to_string(corpus.train.size() + 1)));
        }
    }
    for (size_t i = 0; i < opts.test_per_class; i++) {
        for (size_t c = 0; c < opts.num_classes; c++) {
            corpus.test.push_back(make_utterance(opts, c, rng, "test-" + std::to_string(corpus.test.size() + 1)));
        }
    }
    return corpus;
}

}  // namespace qtc

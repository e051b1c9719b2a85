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

#ifndef _QTC_SYNTHETIC_H
#define _QTC_SYNTHETIC_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qtc/data.h"

namespace qtc {

struct KeywordCorpusOptions {
    size_t num_classes = 7;
    size_t train_per_class = 20;
    size_t test_per_class = 10;
    /// Shared non-informative vocabulary mixed into every utterance.
    size_t filler_vocab = 12;
    size_t min_fillers = 0;
    size_t max_fillers = 1;
    uint64_t seed = 0;
};

struct KeywordCorpus {
    std::vector<LabeledUtterance> train;
    std::vector<LabeledUtterance> test;
};

/// Desk-scale intent corpus. Every utterance of class c opens with the carrier
/// phrase "c<c>kw0 c<c>kw1" and is followed by a few filler words drawn from a
/// vocabulary shared by all classes. Labels are "intent<c>".
///
/// The keywords keep a fixed order: with toy (context-free) embeddings and
/// few filters, a keyword landing on varying qubit slots scatters the pooled
/// features across classes.
KeywordCorpus make_keyword_corpus(const KeywordCorpusOptions &opts);

}  // namespace qtc

#endif

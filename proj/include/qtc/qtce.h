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

#ifndef _QTC_QTCE_H
#define _QTC_QTCE_H

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qtc/data.h"

namespace qtc {

/// QTCE embedding container, all integers little-endian:
///
///     "QTCE"  u32 version=1  u64 record_count
///     per record:
///         u32 id_len, id bytes (UTF-8)
///         u32 label_len, label bytes (UTF-8)
///         u32 T, u32 D
///         T*D float32, row-major
inline constexpr uint32_t QTCE_VERSION = 1;

std::vector<uint8_t> encode_embeddings(std::span<const EmbeddingSequence> seqs);
std::vector<EmbeddingSequence> decode_embeddings(std::span<const uint8_t> bytes);

void write_embedding_file(const std::filesystem::path &path, std::span<const EmbeddingSequence> seqs);
std::vector<EmbeddingSequence> read_embedding_file(const std::filesystem::path &path);

/// True when the file starts with the QTCE magic.
bool looks_like_qtce(const std::filesystem::path &path);

}  // namespace qtc

#endif

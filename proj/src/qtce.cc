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

#include "qtc/qtce.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "qtc/errors.h"

namespace qtc {

namespace {

constexpr char MAGIC[4] = {'Q', 'T', 'C', 'E'};

class Writer {
   public:
    void u32(uint32_t v) {
        for (int i = 0; i < 4; i++) {
            out.push_back(static_cast<uint8_t>(v >> (8 * i)));
        }
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; i++) {
            out.push_back(static_cast<uint8_t>(v >> (8 * i)));
        }
    }
    void str(const std::string &s) {
        u32(static_cast<uint32_t>(s.size()));
        out.insert(out.end(), s.begin(), s.end());
    }

    std::vector<uint8_t> out;
};

class Reader {
   public:
    explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {
    }

    void need(size_t n, const char *what) {
        if (bytes_.size() - pos_ < n) {
            throw FormatError(
                "truncated QTCE data at byte offset " + std::to_string(pos_) + " while reading " + what);
        }
    }
    uint32_t u32(const char *what) {
        need(4, what);
        uint32_t v = 0;
        for (int i = 0; i < 4; i++) {
            v |= static_cast<uint32_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += 4;
        return v;
    }
    uint64_t u64(const char *what) {
        need(8, what);
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) {
            v |= static_cast<uint64_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += 8;
        return v;
    }
    std::string str(const char *what) {
        uint32_t n = u32(what);
        need(n, what);
        std::string s(reinterpret_cast<const char *>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }
    void skip(size_t n) {
        pos_ += n;
    }
    size_t pos() const {
        return pos_;
    }
    size_t remaining() const {
        return bytes_.size() - pos_;
    }

   private:
    std::span<const uint8_t> bytes_;
    size_t pos_ = 0;
};

}  // namespace

std::vector<uint8_t> encode_embeddings(std::span<const EmbeddingSequence> seqs) {
    Writer w;
    w.out.insert(w.out.end(), std::begin(MAGIC), std::end(MAGIC));
    w.u32(QTCE_VERSION);
    w.u64(seqs.size());
    for (const auto &s : seqs) {
        if (s.D != seqs.front().D) {
            throw ShapeError(
                "record " + s.id + " has D=" + std::to_string(s.D) + ", expected " + std::to_string(seqs.front().D));
        }
        if (s.matrix.size() != s.T * s.D) {
            throw ShapeError("record " + s.id + " matrix size does not match T*D");
        }
        w.str(s.id);
        w.str(s.label);
        w.u32(static_cast<uint32_t>(s.T));
        w.u32(static_cast<uint32_t>(s.D));
        for (float f : s.matrix) {
            w.u32(std::bit_cast<uint32_t>(f));
        }
    }
    return std::move(w.out);
}

std::vector<EmbeddingSequence> decode_embeddings(std::span<const uint8_t> bytes) {
    Reader body(bytes);
    body.need(4, "magic");
    if (std::memcmp(bytes.data(), MAGIC, 4) != 0) {
        throw FormatError("bad QTCE magic (expected \"QTCE\")");
    }
    body.skip(4);
    std::vector<EmbeddingSequence> out;
    uint32_t version = body.u32("version");
    if (version != QTCE_VERSION) {
        throw FormatError("unsupported QTCE version " + std::to_string(version));
    }
    uint64_t count = body.u64("record count");
    for (uint64_t i = 0; i < count; i++) {
        EmbeddingSequence s;
        s.id = body.str("record id");
        s.label = body.str("record label");
        s.T = body.u32("T");
        s.D = body.u32("D");
        uint64_t n = static_cast<uint64_t>(s.T) * s.D;
        if (n > body.remaining() / 4) {
            throw FormatError(
                "truncated QTCE data at byte offset " + std::to_string(body.pos()) + " while reading matrix of " +
                s.id);
        }
        s.matrix.resize(n);
        for (auto &f : s.matrix) {
            f = std::bit_cast<float>(body.u32("matrix"));
        }
        out.push_back(std::move(s));
    }
    if (body.remaining() != 0) {
        throw FormatError("unexpected trailing bytes at byte offset " + std::to_string(body.pos()));
    }
    return out;
}

void write_embedding_file(const std::filesystem::path &path, std::span<const EmbeddingSequence> seqs) {
    auto bytes = encode_embeddings(seqs);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot write " + path.string());
    }
    f.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) {
        throw IoError("write failed for " + path.string());
    }
}

std::vector<EmbeddingSequence> read_embedding_file(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot read " + path.string());
    }
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return decode_embeddings(bytes);
}

bool looks_like_qtce(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    char head[4] = {};
    if (!f.read(head, 4)) {
        return false;
    }
    return std::memcmp(head, MAGIC, 4) == 0;
}

}  // namespace qtc

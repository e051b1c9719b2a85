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

#ifndef _QTC_RNG_H
#define _QTC_RNG_H

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qtc {

/// SplitMix64 generator.
///
/// All randomness in the toolkit (circuit angles, projections, toy embeddings,
/// shuffles) comes from this generator so that results are reproducible from a
/// single 64-bit seed on any platform with IEEE doubles.
class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {
    }

    uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal draw via Box-Muller on two uniforms (one output per call).
    double normal();

    /// Uniform integer in [0, bound). Requires bound > 0.
    size_t index(size_t bound);

   private:
    uint64_t state_;
};

/// One SplitMix64 output step applied to `x`.
uint64_t splitmix64_mix(uint64_t x);

/// Seed of the `stream`-th independent child stream of `seed`.
uint64_t derive_seed(uint64_t seed, uint64_t stream);

/// 64-bit FNV-1a hash of the bytes of `s`.
uint64_t fnv1a64(std::string_view s);

}  // namespace qtc

#endif

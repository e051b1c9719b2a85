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

#ifndef _QTC_VQC_H
#define _QTC_VQC_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qtc {

/// Parameters of one general single-qubit rotation Rz(gamma) Ry(beta) Rz(alpha).
struct RotationTriple {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;

    bool operator==(const RotationTriple &) const = default;
};

/// A frozen strongly-entangling circuit: Rx angle encoding, then `depth`
/// layers of per-qubit rotations followed by a CNOT ring, then Pauli-Z readout.
///
/// Instances are immutable once built.
class CircuitSpec {
   public:
    /// Explicit rotations, laid out layer-major (rotations[layer * k + qubit]).
    /// Used for hand-traced circuits; `seed` is recorded but not used.
    static CircuitSpec from_rotations(size_t k, size_t depth, std::vector<RotationTriple> rotations, uint64_t seed = 0);

    size_t k() const {
        return k_;
    }
    size_t depth() const {
        return depth_;
    }
    uint64_t seed() const {
        return seed_;
    }
    std::span<const RotationTriple> rotations() const {
        return rotations_;
    }
    const RotationTriple &rotation(size_t layer, size_t qubit) const {
        return rotations_[layer * k_ + qubit];
    }

    bool operator==(const CircuitSpec &) const = default;

   private:
    CircuitSpec(size_t k, size_t depth, std::vector<RotationTriple> rotations, uint64_t seed)
        : k_(k), depth_(depth), seed_(seed), rotations_(std::move(rotations)) {
    }

    size_t k_;
    size_t depth_;
    uint64_t seed_;
    std::vector<RotationTriple> rotations_;
};

/// Draws every rotation angle i.i.d. Uniform[0, 2pi) from SplitMix64(seed).
CircuitSpec init_circuit(size_t k, size_t depth, uint64_t seed);

class StateVector;

/// Final state of the circuit for the given encoding angles.
StateVector simulate_circuit(const CircuitSpec &circuit, std::span<const double> angles);

/// Runs the circuit on |0...0> with the given encoding angles and returns the
/// k Pauli-Z expectations. Throws ShapeError when angles.size() != k.
std::vector<double> run_circuit(const CircuitSpec &circuit, std::span<const double> angles);

/// Same as run_circuit, writing into `out` (size k) to avoid allocation in hot loops.
void run_circuit_into(const CircuitSpec &circuit, std::span<const double> angles, std::span<double> out);

}  // namespace qtc

#endif

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

#include "qtc/vqc.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qtc/errors.h"
#include "qtc/qsim.h"
#include "qtc/rng.h"

namespace qtc {

namespace {

void check_shape(size_t k, size_t depth) {
    if (k == 0 || k > MAX_QUBITS) {
        throw ConfigError("circuit qubit count must be in [1, 16], got " + std::to_string(k));
    }
    if (depth == 0) {
        throw ConfigError("circuit depth must be at least 1");
    }
}

}  // namespace

CircuitSpec CircuitSpec::from_rotations(size_t k, size_t depth, std::vector<RotationTriple> rotations, uint64_t seed) {
    check_shape(k, depth);
    if (rotations.size() != k * depth) {
        throw ShapeError(
            "expected " + std::to_string(k * depth) + " rotation triples, got " + std::to_string(rotations.size()));
    }
    for (const auto &r : rotations) {
        if (!std::isfinite(r.alpha) || !std::isfinite(r.beta) || !std::isfinite(r.gamma)) {
            throw ConfigError("rotation angles must be finite");
        }
    }
    return CircuitSpec(k, depth, std::move(rotations), seed);
}

CircuitSpec init_circuit(size_t k, size_t depth, uint64_t seed) {
    check_shape(k, depth);
    SplitMix64 rng(seed);
    constexpr double two_pi = 2 * std::numbers::pi;
    std::vector<RotationTriple> rotations(k * depth);
    for (auto &r : rotations) {
        r.alpha = rng.uniform() * two_pi;
        r.beta = rng.uniform() * two_pi;
        r.gamma = rng.uniform() * two_pi;
    }
    return CircuitSpec::from_rotations(k, depth, std::move(rotations), seed);
}

StateVector simulate_circuit(const CircuitSpec &circuit, std::span<const double> angles) {
    size_t k = circuit.k();
    if (angles.size() != k) {
        throw ShapeError("expected " + std::to_string(k) + " input angles, got " + std::to_string(angles.size()));
    }
    auto state = StateVector::zero_state(k);
    for (size_t q = 0; q < k; q++) {
        apply_rx(state, q, angles[q]);
    }
    for (size_t layer = 0; layer < circuit.depth(); layer++) {
        for (size_t q = 0; q < k; q++) {
            const auto &r = circuit.rotation(layer, q);
            apply_rot(state, q, r.alpha, r.beta, r.gamma);
        }
        if (k > 1) {
            for (size_t q = 0; q < k; q++) {
                apply_cnot(state, q, (q + 1) % k);
            }
        }
    }
    return state;
}

void run_circuit_into(const CircuitSpec &circuit, std::span<const double> angles, std::span<double> out) {
    if (out.size() != circuit.k()) {
        throw ShapeError("output span must hold " + std::to_string(circuit.k()) + " values");
    }
    auto z = z_expectations(simulate_circuit(circuit, angles));
    std::copy(z.begin(), z.end(), out.begin());
}

std::vector<double> run_circuit(const CircuitSpec &circuit, std::span<const double> angles) {
    std::vector<double> out(circuit.k());
    run_circuit_into(circuit, angles, out);
    return out;
}

}  // namespace qtc

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

#include "qtc/qsim.h"

#include <bit>
#include <cmath>
#include <string>

#include "qtc/errors.h"

namespace qtc {

namespace {

void check_qubit(const StateVector &state, size_t qubit) {
    if (qubit >= state.num_qubits()) {
        throw IndexError(
            "qubit index " + std::to_string(qubit) + " out of range for " + std::to_string(state.num_qubits()) +
            "-qubit register");
    }
}

constexpr double NORM_TOLERANCE = 1e-9;

}  // namespace

StateVector StateVector::zero_state(size_t num_qubits) {
    if (num_qubits == 0) {
        throw ConfigError("qubit count must be at least 1");
    }
    if (num_qubits > MAX_QUBITS) {
        throw ConfigError("qubit count exceeds 16");
    }
    std::vector<Amplitude> amps(size_t{1} << num_qubits);
    amps[0] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    size_t n = amplitudes.size();
    if (n < 2 || !std::has_single_bit(n)) {
        throw ShapeError("amplitude count must be a power of two >= 2, got " + std::to_string(n));
    }
    size_t k = static_cast<size_t>(std::countr_zero(n));
    if (k > MAX_QUBITS) {
        throw ConfigError("qubit count exceeds 16");
    }
    StateVector s(k, std::move(amplitudes));
    if (std::abs(s.norm_squared() - 1.0) > NORM_TOLERANCE) {
        throw ArgumentError("state is not normalized");
    }
    return s;
}

double StateVector::norm_squared() const {
    double t = 0;
    for (const auto &a : amps_) {
        t += std::norm(a);
    }
    return t;
}

Mat2 rx_matrix(double theta) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return {Amplitude{c, 0}, Amplitude{0, -s}, Amplitude{0, -s}, Amplitude{c, 0}};
}

Mat2 rot_matrix(double alpha, double beta, double gamma) {
    double c = std::cos(beta / 2);
    double s = std::sin(beta / 2);
    Amplitude sum_phase = std::polar(1.0, (alpha + gamma) / 2);
    Amplitude diff_phase = std::polar(1.0, (alpha - gamma) / 2);
    return {
        c * std::conj(sum_phase),
        -s * diff_phase,
        s * std::conj(diff_phase),
        c * sum_phase,
    };
}

void apply_single(StateVector &state, size_t qubit, const Mat2 &m) {
    check_qubit(state, qubit);
    auto amps = state.amplitudes();
    size_t mask = qubit_mask(state.num_qubits(), qubit);
    for (size_t i = 0; i < amps.size(); i++) {
        if (i & mask) {
            continue;
        }
        Amplitude a0 = amps[i];
        Amplitude a1 = amps[i | mask];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | mask] = m[2] * a0 + m[3] * a1;
    }
}

void apply_rx(StateVector &state, size_t qubit, double theta) {
    apply_single(state, qubit, rx_matrix(theta));
}

void apply_rot(StateVector &state, size_t qubit, double alpha, double beta, double gamma) {
    apply_single(state, qubit, rot_matrix(alpha, beta, gamma));
}

void apply_cnot(StateVector &state, size_t control, size_t target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) {
        throw InvalidGateError("CNOT control and target must differ (both " + std::to_string(control) + ")");
    }
    auto amps = state.amplitudes();
    size_t cmask = qubit_mask(state.num_qubits(), control);
    size_t tmask = qubit_mask(state.num_qubits(), target);
    for (size_t i = 0; i < amps.size(); i++) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

std::vector<double> z_expectations(const StateVector &state) {
    if (std::abs(state.norm_squared() - 1.0) > NORM_TOLERANCE) {
        throw std::logic_error("z_expectations called on a non-normalized state");
    }
    size_t k = state.num_qubits();
    std::vector<double> out(k, 0.0);
    auto amps = state.amplitudes();
    for (size_t x = 0; x < amps.size(); x++) {
        double p = std::norm(amps[x]);
        for (size_t q = 0; q < k; q++) {
            out[q] += (x & qubit_mask(k, q)) ? -p : p;
        }
    }
    return out;
}

}  // namespace qtc

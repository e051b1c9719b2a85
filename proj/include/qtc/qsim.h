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

#ifndef _QTC_QSIM_H
#define _QTC_QSIM_H

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qtc {

using Amplitude = std::complex<double>;

/// Row-major 2x2 complex matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Amplitude, 4>;

inline constexpr size_t MAX_QUBITS = 16;

/// Dense pure state of a k-qubit register, 1 <= k <= 16.
///
/// Basis ordering: qubit i occupies bit (k - 1 - i) of the basis index, so
/// qubit 0 is the most significant bit. |10> on two qubits is index 2.
class StateVector {
   public:
    /// |0...0> on `num_qubits` qubits. Throws ConfigError outside [1, 16].
    static StateVector zero_state(size_t num_qubits);

    /// Wraps explicit amplitudes. The length must be a power of two and the
    /// state must be normalized within 1e-9.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dim() const {
        return amps_.size();
    }
    std::span<const Amplitude> amplitudes() const {
        return amps_;
    }
    std::span<Amplitude> amplitudes() {
        return amps_;
    }

    double norm_squared() const;

   private:
    StateVector(size_t num_qubits, std::vector<Amplitude> amps) : num_qubits_(num_qubits), amps_(std::move(amps)) {
    }

    size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

/// Bit mask of `qubit` inside a basis index of a `num_qubits` register.
inline size_t qubit_mask(size_t num_qubits, size_t qubit) {
    return size_t{1} << (num_qubits - 1 - qubit);
}

Mat2 rx_matrix(double theta);

/// Closed form of Rz(gamma) * Ry(beta) * Rz(alpha).
Mat2 rot_matrix(double alpha, double beta, double gamma);

/// Applies an arbitrary 2x2 matrix to `qubit`. Throws IndexError when out of range.
void apply_single(StateVector &state, size_t qubit, const Mat2 &m);

void apply_rx(StateVector &state, size_t qubit, double theta);
void apply_rot(StateVector &state, size_t qubit, double alpha, double beta, double gamma);

/// Throws InvalidGateError when control == target, IndexError when either is out of range.
void apply_cnot(StateVector &state, size_t control, size_t target);

/// <Z_i> for every qubit i, each in [-1, 1].
std::vector<double> z_expectations(const StateVector &state);

}  // namespace qtc

#endif

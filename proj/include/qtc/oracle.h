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

#ifndef _QTC_ORACLE_H
#define _QTC_ORACLE_H

#include <cstddef>
#include <span>
#include <vector>

#include "qtc/qsim.h"
#include "qtc/vqc.h"

namespace qtc {

/// Explicit dim x dim complex matrix, row-major.
///
/// This is the brute-force verification path for small circuits. It builds
/// every gate as a full matrix (Kronecker lifts, permutation CNOTs) and
/// multiplies them out, sharing no code with the in-place simulator.
class DenseUnitary {
   public:
    static DenseUnitary identity(size_t dim);

    size_t dim() const {
        return dim_;
    }
    const Amplitude &at(size_t row, size_t col) const {
        return entries_[row * dim_ + col];
    }
    Amplitude &at(size_t row, size_t col) {
        return entries_[row * dim_ + col];
    }

    DenseUnitary operator*(const DenseUnitary &rhs) const;
    std::vector<Amplitude> apply(std::span<const Amplitude> v) const;

    /// Max entrywise |U^dagger U - I|.
    double unitarity_error() const;

   private:
    explicit DenseUnitary(size_t dim) : dim_(dim), entries_(dim * dim) {
    }

    size_t dim_;
    std::vector<Amplitude> entries_;
};

inline constexpr size_t MAX_ORACLE_QUBITS = 4;

/// Rz(gamma) * Ry(beta) * Rz(alpha) by explicit 2x2 multiplication.
Mat2 rot_matrix_product(double alpha, double beta, double gamma);

/// Single-qubit gate lifted to the full register: I x ... x g x ... x I.
DenseUnitary lift_single(size_t num_qubits, size_t qubit, const Mat2 &g);

DenseUnitary cnot_matrix(size_t num_qubits, size_t control, size_t target);

/// Product of all trainable-layer gates (rotations and CNOT rings), excluding
/// the data-dependent Rx encoding. Throws ConfigError for k > 4.
DenseUnitary dense_unitary_of_circuit(const CircuitSpec &circuit);

/// Rx(angles[0]) x ... x Rx(angles[k-1]) from explicit 2x2 Rx matrices.
DenseUnitary dense_encoding_unitary(std::span<const double> angles);

/// Full circuit including the data-dependent Rx encoding layer:
/// dense_unitary_of_circuit(circuit) * dense_encoding_unitary(angles).
DenseUnitary dense_unitary_of_circuit(const CircuitSpec &circuit, std::span<const double> angles);

/// Rx(angles[0]) |0> x ... x Rx(angles[k-1]) |0> as an explicit Kronecker product.
std::vector<Amplitude> encoded_product_state(std::span<const double> angles);

/// Pauli-Z expectations computed from diag(Z_i) applied to a raw amplitude vector.
std::vector<double> dense_z_expectations(size_t num_qubits, std::span<const Amplitude> amps);

/// Circuit output through the oracle path: dense_z(U * encoded(angles)).
std::vector<double> oracle_circuit_output(const CircuitSpec &circuit, std::span<const double> angles);

}  // namespace qtc

#endif

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

#include "qtc/oracle.h"

#include <cmath>
#include <string>

#include "qtc/errors.h"

namespace qtc {

namespace {

Mat2 mul2(const Mat2 &a, const Mat2 &b) {
    return {
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    };
}

Mat2 rz(double theta) {
    return {std::polar(1.0, -theta / 2), Amplitude{0}, Amplitude{0}, std::polar(1.0, theta / 2)};
}

Mat2 ry(double theta) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return {Amplitude{c}, Amplitude{-s}, Amplitude{s}, Amplitude{c}};
}

std::vector<Amplitude> kron(const std::vector<Amplitude> &a, size_t a_dim, const std::vector<Amplitude> &b, size_t b_dim) {
    size_t n = a_dim * b_dim;
    std::vector<Amplitude> out(n * n);
    for (size_t i = 0; i < a_dim; i++) {
        for (size_t j = 0; j < a_dim; j++) {
            for (size_t p = 0; p < b_dim; p++) {
                for (size_t q = 0; q < b_dim; q++) {
                    out[(i * b_dim + p) * n + (j * b_dim + q)] = a[i * a_dim + j] * b[p * b_dim + q];
                }
            }
        }
    }
    return out;
}

void check_oracle_size(size_t k) {
    if (k > MAX_ORACLE_QUBITS) {
        throw ConfigError("dense oracle supports at most 4 qubits, got " + std::to_string(k));
    }
    if (k == 0) {
        throw ConfigError("qubit count must be at least 1");
    }
}

}  // namespace

DenseUnitary DenseUnitary::identity(size_t dim) {
    DenseUnitary u(dim);
    for (size_t i = 0; i < dim; i++) {
        u.at(i, i) = 1.0;
    }
    return u;
}

DenseUnitary DenseUnitary::operator*(const DenseUnitary &rhs) const {
    if (dim_ != rhs.dim_) {
        throw ShapeError("matrix dimension mismatch");
    }
    DenseUnitary out(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            Amplitude t = 0;
            for (size_t m = 0; m < dim_; m++) {
                t += at(i, m) * rhs.at(m, j);
            }
            out.at(i, j) = t;
        }
    }
    return out;
}

std::vector<Amplitude> DenseUnitary::apply(std::span<const Amplitude> v) const {
    if (v.size() != dim_) {
        throw ShapeError("vector length does not match matrix dimension");
    }
    std::vector<Amplitude> out(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            out[i] += at(i, j) * v[j];
        }
    }
    return out;
}

double DenseUnitary::unitarity_error() const {
    double worst = 0;
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            Amplitude t = 0;
            for (size_t m = 0; m < dim_; m++) {
                t += std::conj(at(m, i)) * at(m, j);
            }
            worst = std::max(worst, std::abs(t - Amplitude(i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

Mat2 rot_matrix_product(double alpha, double beta, double gamma) {
    return mul2(rz(gamma), mul2(ry(beta), rz(alpha)));
}

DenseUnitary lift_single(size_t num_qubits, size_t qubit, const Mat2 &g) {
    check_oracle_size(num_qubits);
    if (qubit >= num_qubits) {
        throw IndexError("qubit index out of range");
    }
    std::vector<Amplitude> acc{1.0};
    size_t acc_dim = 1;
    const std::vector<Amplitude> id2{1.0, 0.0, 0.0, 1.0};
    const std::vector<Amplitude> gate(g.begin(), g.end());
    // Qubit 0 is the leftmost Kronecker factor (most significant bit).
    for (size_t q = 0; q < num_qubits; q++) {
        acc = kron(acc, acc_dim, q == qubit ? gate : id2, 2);
        acc_dim *= 2;
    }
    auto u = DenseUnitary::identity(acc_dim);
    for (size_t i = 0; i < acc_dim; i++) {
        for (size_t j = 0; j < acc_dim; j++) {
            u.at(i, j) = acc[i * acc_dim + j];
        }
    }
    return u;
}

DenseUnitary cnot_matrix(size_t num_qubits, size_t control, size_t target) {
    check_oracle_size(num_qubits);
    if (control >= num_qubits || target >= num_qubits) {
        throw IndexError("qubit index out of range");
    }
    if (control == target) {
        throw InvalidGateError("CNOT control and target must differ");
    }
    size_t dim = size_t{1} << num_qubits;
    auto u = DenseUnitary::identity(dim);
    for (size_t col = 0; col < dim; col++) {
        u.at(col, col) = 0;
    }
    for (size_t col = 0; col < dim; col++) {
        // Read the basis state's bits qubit by qubit, then write the image.
        std::vector<int> bits(num_qubits);
        for (size_t q = 0; q < num_qubits; q++) {
            bits[q] = static_cast<int>((col >> (num_qubits - 1 - q)) & 1);
        }
        if (bits[control] == 1) {
            bits[target] ^= 1;
        }
        size_t row = 0;
        for (size_t q = 0; q < num_qubits; q++) {
            row = row * 2 + static_cast<size_t>(bits[q]);
        }
        u.at(row, col) = 1.0;
    }
    return u;
}

DenseUnitary dense_unitary_of_circuit(const CircuitSpec &circuit) {
    size_t k = circuit.k();
    check_oracle_size(k);
    auto u = DenseUnitary::identity(size_t{1} << k);
    for (size_t layer = 0; layer < circuit.depth(); layer++) {
        for (size_t q = 0; q < k; q++) {
            const auto &r = circuit.rotation(layer, q);
            u = lift_single(k, q, rot_matrix_product(r.alpha, r.beta, r.gamma)) * u;
        }
        if (k > 1) {
            for (size_t q = 0; q < k; q++) {
                u = cnot_matrix(k, q, (q + 1) % k) * u;
            }
        }
    }
    return u;
}

DenseUnitary dense_encoding_unitary(std::span<const double> angles) {
    size_t k = angles.size();
    check_oracle_size(k);
    auto u = DenseUnitary::identity(size_t{1} << k);
    for (size_t q = 0; q < k; q++) {
        double c = std::cos(angles[q] / 2);
        double s = std::sin(angles[q] / 2);
        Mat2 rx{Amplitude{c, 0}, Amplitude{0, -s}, Amplitude{0, -s}, Amplitude{c, 0}};
        u = lift_single(k, q, rx) * u;
    }
    return u;
}

DenseUnitary dense_unitary_of_circuit(const CircuitSpec &circuit, std::span<const double> angles) {
    if (angles.size() != circuit.k()) {
        throw ShapeError("angle count does not match circuit width");
    }
    return dense_unitary_of_circuit(circuit) * dense_encoding_unitary(angles);
}

std::vector<Amplitude> encoded_product_state(std::span<const double> angles) {
    check_oracle_size(angles.size());
    std::vector<Amplitude> state{1.0};
    for (double a : angles) {
        // Rx(a)|0> = cos(a/2)|0> - i sin(a/2)|1>
        Amplitude zero{std::cos(a / 2), 0};
        Amplitude one{0, -std::sin(a / 2)};
        std::vector<Amplitude> next;
        next.reserve(state.size() * 2);
        for (const auto &s : state) {
            next.push_back(s * zero);
            next.push_back(s * one);
        }
        state = std::move(next);
    }
    return state;
}

std::vector<double> dense_z_expectations(size_t num_qubits, std::span<const Amplitude> amps) {
    std::vector<double> out;
    for (size_t q = 0; q < num_qubits; q++) {
        Mat2 z{Amplitude{1}, Amplitude{0}, Amplitude{0}, Amplitude{-1}};
        auto zq = lift_single(num_qubits, q, z);
        auto zv = zq.apply(amps);
        Amplitude t = 0;
        for (size_t i = 0; i < amps.size(); i++) {
            t += std::conj(amps[i]) * zv[i];
        }
        out.push_back(t.real());
    }
    return out;
}

std::vector<double> oracle_circuit_output(const CircuitSpec &circuit, std::span<const double> angles) {
    if (angles.size() != circuit.k()) {
        throw ShapeError("angle count does not match circuit width");
    }
    auto u = dense_unitary_of_circuit(circuit);
    auto final_state = u.apply(encoded_product_state(angles));
    return dense_z_expectations(circuit.k(), final_state);
}

}  // namespace qtc

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
#include <numbers>

#include "gtest/gtest.h"
#include "qtc/errors.h"
#include "qtc/rng.h"

using namespace qtc;

namespace {

constexpr double PI = std::numbers::pi;

}  // namespace

TEST(oracle, single_rx_circuit) {
    auto c = CircuitSpec::from_rotations(1, 1, {RotationTriple{}});
    auto u = dense_unitary_of_circuit(c, std::vector<double>{PI});
    ASSERT_EQ(u.dim(), 2u);
    EXPECT_LT(std::abs(u.at(0, 0)), 1e-12);
    EXPECT_LT(std::abs(u.at(0, 1) - Amplitude(0, -1)), 1e-12);
    EXPECT_LT(std::abs(u.at(1, 0) - Amplitude(0, -1)), 1e-12);
    EXPECT_LT(std::abs(u.at(1, 1)), 1e-12);
}

TEST(oracle, zero_angles_fix_ground_state) {
    auto c = CircuitSpec::from_rotations(3, 1, std::vector<RotationTriple>(3));
    auto u = dense_unitary_of_circuit(c, std::vector<double>(3, 0.0));
    std::vector<Amplitude> ground(8);
    ground[0] = 1;
    auto out = u.apply(ground);
    EXPECT_LT(std::abs(out[0] - Amplitude(1)), 1e-12);
    for (size_t i = 1; i < 8; i++) {
        EXPECT_LT(std::abs(out[i]), 1e-12);
    }
}

TEST(oracle, size_limit) {
    auto c = init_circuit(5, 1, 1);
    EXPECT_THROW(dense_unitary_of_circuit(c), ConfigError);
}

TEST(oracle, cnot_matrix_is_truth_table) {
    auto u = cnot_matrix(3, 2, 0);
    // control = qubit 2 (LSB), target = qubit 0 (MSB)
    for (size_t col = 0; col < 8; col++) {
        size_t row = (col & 1) ? (col ^ 4) : col;
        EXPECT_EQ(u.at(row, col), Amplitude(1));
    }
    EXPECT_THROW(cnot_matrix(3, 1, 1), InvalidGateError);
}

TEST(oracle, unitaries_are_unitary) {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 30; trial++) {
        size_t k = 1 + rng.index(4);
        auto c = init_circuit(k, 1 + rng.index(3), rng.next_u64());
        EXPECT_LT(dense_unitary_of_circuit(c).unitarity_error(), 1e-10);
    }
}

TEST(oracle, simulator_final_state_matches_over_random_seeds) {
    SplitMix64 rng(22);
    for (int trial = 0; trial < 100; trial++) {
        auto c = init_circuit(4, 1, rng.next_u64());
        std::vector<double> angles(4);
        for (auto &a : angles) {
            a = (rng.uniform() * 2 - 1) * PI;
        }
        auto ref = dense_unitary_of_circuit(c).apply(encoded_product_state(angles));
        auto sim = simulate_circuit(c, angles);
        double worst = 0;
        for (size_t i = 0; i < ref.size(); i++) {
            worst = std::max(worst, std::abs(ref[i] - sim.amplitudes()[i]));
        }
        EXPECT_LT(worst, 1e-9) << "trial " << trial;
    }
}

TEST(oracle, encoding_paths_agree) {
    std::vector<double> angles{0.3, -1.2, 2.5};
    auto product = encoded_product_state(angles);
    std::vector<Amplitude> ground(8);
    ground[0] = 1;
    auto via_matrix = dense_encoding_unitary(angles).apply(ground);
    for (size_t i = 0; i < 8; i++) {
        EXPECT_LT(std::abs(product[i] - via_matrix[i]), 1e-12);
    }
}

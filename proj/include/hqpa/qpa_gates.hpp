// Copyright 2026 The hqpa Authors
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

#ifndef HQPA_QPA_GATES_HPP
#define HQPA_QPA_GATES_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "hqpa/hybrid_model.hpp"
#include "hqpa/propagation.hpp"
#include "hqpa/tbqcp.hpp"

namespace hqpa {

using QutritUnitary = Eigen::Matrix3cd;

/// The eight gates of the permutation-parity circuit.
enum class GateId { kQft, kPi1, kPi2, kPi3, kPi4, kPi5, kPi6, kQftDagger };

inline constexpr std::array<GateId, 8> kAllGates{GateId::kQft, GateId::kPi1, GateId::kPi2,
                                                 GateId::kPi3, GateId::kPi4, GateId::kPi5,
                                                 GateId::kPi6, GateId::kQftDagger};

/// "UFT", "P1".."P6", "UFTdag".
std::string_view gate_name(GateId gate);
std::optional<GateId> parse_gate_name(std::string_view name);
GateId permutation_gate(int k);

/// (1/sqrt 3)[[1,1,1],[1,w,w*],[1,w*,w]] with w = exp(2 pi i / 3).
QutritUnitary qft_matrix();

/// 0/1 matrix of permutation k in 1..6; k <= 3 are the even (cyclic) ones.
QutritUnitary permutation_matrix(int k);

QutritUnitary gate_unitary(GateId gate);

enum class Parity { kEven, kOdd };
enum class ParityReadout { kEven, kOdd, kInconclusive };

Parity parity(int k);
std::string_view to_string(Parity p);
std::string_view to_string(ParityReadout p);

/// Basis states |j> -> U|j> for j = 1,2,3 and the uniform superposition, embedded in the
/// four-level propagation basis through the model's label map. Uniform weights.
StatePairSet embed_gate_as_state_pairs(const QutritUnitary &u, const ModelBasis &model);

struct ExpectedOutcome {
    int label;                   // logical label of the final state, 2 or 3
    std::complex<double> phase;  // U_FT^dagger Pi_k U_FT |2> = phase * |label>
};
ExpectedOutcome expected_outcome(int k);

struct QpaOutcome {
    std::array<double, 4> probabilities{};  // P1..P4 by logical label
    ParityReadout inferred = ParityReadout::kInconclusive;
    double confidence = 0.0;  // max(P2, P3)
};

/// Readout rule: even if P2 > P3, odd otherwise; inconclusive if max(P2, P3) < 0.5.
QpaOutcome read_out(const StateVector &final_state, const ModelBasis &model);

/// Prepares the ground state |2>, applies the three pulses back to back and reads out parity.
QpaOutcome run_qpa(const ModelBasis &model, const ControlField &pulse_uft, const ControlField &pulse_pi_k,
                   const ControlField &pulse_uft_dag, int k);

/// Same circuit with exact qutrit unitaries in place of pulses.
QpaOutcome run_ideal_qpa(const ModelBasis &model, int k);

}  // namespace hqpa

#endif  // HQPA_QPA_GATES_HPP

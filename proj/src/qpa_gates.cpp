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

#include "hqpa/qpa_gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hqpa/errors.hpp"

namespace hqpa {

namespace {

constexpr std::array<std::string_view, 8> kGateNames{"UFT", "P1", "P2", "P3", "P4", "P5", "P6", "UFTdag"};

void require_permutation_index(int k) {
    if (k < 1 || k > 6) {
        throw std::invalid_argument("permutation index must be in 1..6, got " + std::to_string(k));
    }
}

std::complex<double> omega() {
    return std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
}

}  // namespace

std::string_view gate_name(GateId gate) {
    return kGateNames[static_cast<std::size_t>(gate)];
}

std::optional<GateId> parse_gate_name(std::string_view name) {
    for (std::size_t i = 0; i < kGateNames.size(); ++i) {
        if (kGateNames[i] == name) {
            return static_cast<GateId>(i);
        }
    }
    return std::nullopt;
}

GateId permutation_gate(int k) {
    require_permutation_index(k);
    return static_cast<GateId>(k);
}

QutritUnitary qft_matrix() {
    const std::complex<double> w = omega();
    QutritUnitary u;
    // clang-format off
    u << 1.0, 1.0,          1.0,
         1.0, w,            std::conj(w),
         1.0, std::conj(w), w;
    // clang-format on
    return u / std::sqrt(3.0);
}

QutritUnitary permutation_matrix(int k) {
    require_permutation_index(k);
    // image[k-1][j] is the 0-based row of the 1 in column j.
    static constexpr int kImage[6][3] = {
        {0, 1, 2},  // (1,2,3)
        {2, 0, 1},  // (3,1,2)
        {1, 2, 0},  // (2,3,1)
        {2, 1, 0},  // (3,2,1)
        {1, 0, 2},  // (2,1,3)
        {0, 2, 1},  // (1,3,2)
    };
    QutritUnitary p = QutritUnitary::Zero();
    for (int j = 0; j < 3; ++j) {
        p(kImage[k - 1][j], j) = 1.0;
    }
    return p;
}

QutritUnitary gate_unitary(GateId gate) {
    switch (gate) {
        case GateId::kQft:
            return qft_matrix();
        case GateId::kQftDagger:
            return qft_matrix().adjoint();
        default:
            return permutation_matrix(static_cast<int>(gate));
    }
}

Parity parity(int k) {
    require_permutation_index(k);
    return k <= 3 ? Parity::kEven : Parity::kOdd;
}

std::string_view to_string(Parity p) {
    return p == Parity::kEven ? "even" : "odd";
}

std::string_view to_string(ParityReadout p) {
    switch (p) {
        case ParityReadout::kEven:
            return "even";
        case ParityReadout::kOdd:
            return "odd";
        case ParityReadout::kInconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

StatePairSet embed_gate_as_state_pairs(const QutritUnitary &u, const ModelBasis &model) {
    if ((u.adjoint() * u - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ContractViolation("embed_gate_as_state_pairs: gate is not unitary");
    }
    const auto embed = [&model](const Eigen::Vector3cd &q) {
        StateVector v = StateVector::Zero();
        for (int label = 1; label <= 3; ++label) {
            v(model.index_of(label)) = q(label - 1);
        }
        return v;
    };
    std::vector<StatePair> pairs;
    pairs.reserve(4);
    for (int j = 0; j < 3; ++j) {
        const Eigen::Vector3cd e = Eigen::Vector3cd::Unit(j);
        pairs.push_back({embed(e), embed(u * e)});
    }
    const Eigen::Vector3cd uniform = Eigen::Vector3cd::Ones() / std::sqrt(3.0);
    pairs.push_back({embed(uniform), embed(u * uniform)});
    return StatePairSet::uniform(std::move(pairs));
}

ExpectedOutcome expected_outcome(int k) {
    require_permutation_index(k);
    const std::complex<double> w = omega();
    switch (k) {
        case 1:
            return {2, 1.0};
        case 2:
            return {2, w};
        case 3:
            return {2, std::conj(w)};
        case 4:
            return {3, std::conj(w)};
        case 5:
            return {3, w};
        default:
            return {3, 1.0};
    }
}

QpaOutcome read_out(const StateVector &final_state, const ModelBasis &model) {
    QpaOutcome out;
    for (int label = 1; label <= 4; ++label) {
        out.probabilities[static_cast<std::size_t>(label - 1)] = std::norm(final_state(model.index_of(label)));
    }
    const double p2 = out.probabilities[1];
    const double p3 = out.probabilities[2];
    out.confidence = std::max(p2, p3);
    if (out.confidence < 0.5) {
        out.inferred = ParityReadout::kInconclusive;
    } else {
        out.inferred = p2 > p3 ? ParityReadout::kEven : ParityReadout::kOdd;
    }
    return out;
}

QpaOutcome run_qpa(const ModelBasis &model, const ControlField &pulse_uft, const ControlField &pulse_pi_k,
                   const ControlField &pulse_uft_dag, int k) {
    require_permutation_index(k);
    pulse_uft.validate();
    pulse_pi_k.validate();
    pulse_uft_dag.validate();
    if (!(pulse_uft.grid == pulse_pi_k.grid) || !(pulse_uft.grid == pulse_uft_dag.grid)) {
        throw DimensionError("run_qpa: the three pulses must share one time grid");
    }
    StateVector psi = model.basis_state(2).cast<cdouble>();
    for (const ControlField *pulse : {&pulse_uft, &pulse_pi_k, &pulse_uft_dag}) {
        psi = propagate_forward(model, psi, *pulse).states.back();
    }
    return read_out(psi, model);
}

QpaOutcome run_ideal_qpa(const ModelBasis &model, int k) {
    const Eigen::Vector3cd start = Eigen::Vector3cd::Unit(1);
    const Eigen::Vector3cd end = qft_matrix().adjoint() * permutation_matrix(k) * qft_matrix() * start;
    StateVector psi = StateVector::Zero();
    for (int label = 1; label <= 3; ++label) {
        psi(model.index_of(label)) = end(label - 1);
    }
    return read_out(psi, model);
}

}  // namespace hqpa

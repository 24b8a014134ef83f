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

#ifndef HQPA_HYBRID_MODEL_HPP
#define HQPA_HYBRID_MODEL_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace hqpa {

using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;

/// Physical constants of the four-level double-quantum-dot hybrid qubit.
///
/// Tunnel couplings and level splittings are linear frequencies in GHz (the
/// quantities usually quoted as Delta/2pi). The reference detuning is in ueV.
struct HybridParams {
    double delta1_ghz = 2.62;
    double delta2_ghz = 3.5;
    double delta3_ghz = 4.6;
    double delta4_ghz = 1.65;
    double delta_el_ghz = 52.7;
    double delta_er_ghz = 9.2;
    double eps0_uev = 50.0;

    /// Throws InvalidParameterError if any field is non-finite.
    void validate() const;
};

/// Which sign the detuning control enters the propagation generator with.
///
/// kLiteral propagates under H0 - mu*E, i.e. Z^T H(2*eps0 - eps) Z for
/// E = eps - eps0. kPhysical propagates under H0 + mu*E = Z^T H(eps) Z.
enum class FieldSign { kLiteral, kPhysical };

/// Four-level hybrid-qubit Hamiltonian H(eps) in ueV. Real symmetric.
Matrix4 build_hamiltonian(const HybridParams &params, double eps_uev);

/// The part of H(eps) proportional to eps: diag(1/2, 1/2, -1/2, -1/2).
Matrix4 detuning_operator();

struct Eigensystem {
    Vector4 values;   // ascending
    Matrix4 vectors;  // columns, largest-magnitude component positive
};

/// Symmetric eigendecomposition with a deterministic column-sign convention.
/// Throws ContractViolation when `h` is not symmetric to 1e-12.
Eigensystem eigendecompose(const Matrix4 &h);

/// Propagation basis at the reference detuning.
struct ModelBasis {
    HybridParams params;
    Vector4 h0_diag;  // ascending eigenvalues of H(eps0), ueV
    Matrix4 z;        // eigenvectors of H(eps0) as columns
    Matrix4 mu;       // Z^T diag(1/2,1/2,-1/2,-1/2) Z
    FieldSign sign = FieldSign::kLiteral;
    /// label_map[l-1] is the eigen-index carrying logical label |l>.
    std::array<int, 4> label_map{1, 0, 2, 3};

    /// Operator multiplying E(t) in the generator: H(E) = diag(h0) - coupling()*E.
    Matrix4 coupling() const;
    /// Full generator diag(h0) - coupling()*e_value in ueV.
    Matrix4 generator(double e_value) const;
    /// Eigen-index of logical label (1..4).
    int index_of(int label) const;
    /// Basis vector of logical label (1..4) in the propagation basis.
    Vector4 basis_state(int label) const;
};

/// Minimum eigenvalue gap accepted by build_model_basis.
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Diagonalizes H(eps0) and derives H0, mu and the level labels:
/// ground -> |2>, first excited -> |1>, then |3>, |4> in energy order.
ModelBasis build_model_basis(const HybridParams &params, FieldSign sign = FieldSign::kLiteral);

struct SpectrumRow {
    double eps_uev;
    std::array<double, 4> energies_uev;  // ascending
};

/// Eigenvalues of H(eps) on a uniform detuning grid. With n_points == 1 the
/// single row sits at eps_min.
std::vector<SpectrumRow> energy_spectrum_sweep(const HybridParams &params, double eps_min,
                                               double eps_max, std::size_t n_points);

/// CSV with header `eps_ueV,E1_ueV,E2_ueV,E3_ueV,E4_ueV`, 12 significant digits.
void write_spectrum_sweep_csv(std::ostream &out, const std::vector<SpectrumRow> &rows);

}  // namespace hqpa

#endif  // HQPA_HYBRID_MODEL_HPP

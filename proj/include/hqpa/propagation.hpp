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

#ifndef HQPA_PROPAGATION_HPP
#define HQPA_PROPAGATION_HPP

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "hqpa/hybrid_model.hpp"

namespace hqpa {

using cdouble = std::complex<double>;
/// Amplitudes in the eigenbasis of H(eps0), indexed by eigen-index (not logical label).
using StateVector = Eigen::Vector4cd;
using Unitary4 = Eigen::Matrix4cd;

/// Uniform grid on [0, t_final]; field samples live at the n_steps step midpoints.
struct TimeGrid {
    double t_final_ns = 1.3;
    std::size_t n_steps = 13000;

    double dt() const { return t_final_ns / static_cast<double>(n_steps); }
    double boundary(std::size_t k) const { return dt() * static_cast<double>(k); }
    double midpoint(std::size_t k) const { return dt() * (static_cast<double>(k) + 0.5); }
    void validate() const;

    /// Grid with the default 0.1 ps step.
    static TimeGrid with_default_resolution(double t_final_ns);
};

bool operator==(const TimeGrid &a, const TimeGrid &b);

/// Piecewise-constant control E(t) = eps(t) - eps0 in ueV, one value per step.
struct ControlField {
    TimeGrid grid;
    std::vector<double> values;

    static ControlField zeros(const TimeGrid &grid);
    void validate() const;
};

/// States at the n_steps + 1 step boundaries.
struct Trajectory {
    TimeGrid grid;
    std::vector<StateVector> states;
};

/// exp(-i (diag(h0) - coupling*e) dt / hbar), by eigendecomposition of the real generator.
Unitary4 step_propagator(const Vector4 &h0_diag, const Matrix4 &coupling, double e_value, double dt_ns);
Unitary4 step_propagator(const ModelBasis &model, double e_value, double dt_ns);

/// Per-step unitaries of a field, in time order.
std::vector<Unitary4> step_propagators(const ModelBasis &model, const ControlField &field);

Trajectory propagate_forward(const ModelBasis &model, const StateVector &psi0, const ControlField &field);
Trajectory propagate_forward(const StateVector &psi0, const TimeGrid &grid,
                             const std::vector<Unitary4> &steps);

/// chi(T) = target, chi_k = U_k^dagger chi_{k+1}. The projector |chi(t)><chi(t)| is the
/// target observable evolved backward from T under the same field.
Trajectory propagate_target_backward(const ModelBasis &model, const StateVector &target,
                                     const ControlField &field);
Trajectory propagate_target_backward(const StateVector &target, const TimeGrid &grid,
                                     const std::vector<Unitary4> &steps);

/// Throws ContractViolation unless | ||psi|| - 1 | <= tol.
void require_normalized(const StateVector &psi, double tol, const char *what);

/// CSV `t_ns,P1,P2,P3,P4,re1,im1,...,re4,im4`; columns are logical labels.
void write_trajectory_csv(std::ostream &out, const Trajectory &traj, const ModelBasis &model);

}  // namespace hqpa

#endif  // HQPA_PROPAGATION_HPP

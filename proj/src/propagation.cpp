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

#include "hqpa/propagation.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "hqpa/errors.hpp"
#include "hqpa/units.hpp"

namespace hqpa {

void TimeGrid::validate() const {
    if (n_steps < 1) {
        throw InvalidParameterError("time grid needs at least one step");
    }
    if (!std::isfinite(t_final_ns) || !(t_final_ns > 0.0)) {
        throw InvalidParameterError("time grid duration must be positive and finite");
    }
}

TimeGrid TimeGrid::with_default_resolution(double t_final_ns) {
    constexpr double kDefaultStepNs = 1e-4;
    TimeGrid grid{t_final_ns, static_cast<std::size_t>(std::llround(t_final_ns / kDefaultStepNs))};
    if (grid.n_steps == 0) {
        grid.n_steps = 1;
    }
    grid.validate();
    return grid;
}

bool operator==(const TimeGrid &a, const TimeGrid &b) {
    return a.n_steps == b.n_steps && a.t_final_ns == b.t_final_ns;
}

ControlField ControlField::zeros(const TimeGrid &grid) {
    grid.validate();
    return ControlField{grid, std::vector<double>(grid.n_steps, 0.0)};
}

void ControlField::validate() const {
    grid.validate();
    if (values.size() != grid.n_steps) {
        throw DimensionError("control field has " + std::to_string(values.size()) +
                             " samples for a grid of " + std::to_string(grid.n_steps) + " steps");
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            throw InvalidParameterError("control field sample " + std::to_string(k) + " is not finite");
        }
    }
}

Unitary4 step_propagator(const Vector4 &h0_diag, const Matrix4 &coupling, double e_value, double dt_ns) {
    if (!(dt_ns > 0.0)) {
        throw InvalidParameterError("step_propagator: dt must be positive");
    }
    Matrix4 generator = -e_value * coupling;
    generator.diagonal() += h0_diag;
    const Eigen::SelfAdjointEigenSolver<Matrix4> solver(generator);
    const Eigen::Matrix4cd v = solver.eigenvectors().cast<cdouble>();
    Eigen::Vector4cd phases;
    for (int j = 0; j < 4; ++j) {
        const double angle = -solver.eigenvalues()(j) * dt_ns / kHbar;
        phases(j) = cdouble(std::cos(angle), std::sin(angle));
    }
    return v * phases.asDiagonal() * v.transpose();
}

Unitary4 step_propagator(const ModelBasis &model, double e_value, double dt_ns) {
    return step_propagator(model.h0_diag, model.coupling(), e_value, dt_ns);
}

std::vector<Unitary4> step_propagators(const ModelBasis &model, const ControlField &field) {
    field.validate();
    const Matrix4 coupling = model.coupling();
    const double dt = field.grid.dt();
    std::vector<Unitary4> steps;
    steps.reserve(field.values.size());
    for (double e : field.values) {
        steps.push_back(step_propagator(model.h0_diag, coupling, e, dt));
    }
    return steps;
}

void require_normalized(const StateVector &psi, double tol, const char *what) {
    if (!psi.allFinite() || std::abs(psi.norm() - 1.0) > tol) {
        throw ContractViolation(std::string(what) + ": state is not normalized");
    }
}

Trajectory propagate_forward(const StateVector &psi0, const TimeGrid &grid,
                             const std::vector<Unitary4> &steps) {
    if (steps.size() != grid.n_steps) {
        throw DimensionError("propagate_forward: step count does not match grid");
    }
    require_normalized(psi0, 1e-10, "propagate_forward");
    Trajectory traj{grid, {}};
    traj.states.reserve(grid.n_steps + 1);
    traj.states.push_back(psi0);
    for (const auto &u : steps) {
        traj.states.push_back(u * traj.states.back());
    }
    return traj;
}

Trajectory propagate_forward(const ModelBasis &model, const StateVector &psi0, const ControlField &field) {
    return propagate_forward(psi0, field.grid, step_propagators(model, field));
}

Trajectory propagate_target_backward(const StateVector &target, const TimeGrid &grid,
                                     const std::vector<Unitary4> &steps) {
    if (steps.size() != grid.n_steps) {
        throw DimensionError("propagate_target_backward: step count does not match grid");
    }
    require_normalized(target, 1e-10, "propagate_target_backward");
    Trajectory traj{grid, std::vector<StateVector>(grid.n_steps + 1)};
    traj.states[grid.n_steps] = target;
    for (std::size_t k = grid.n_steps; k-- > 0;) {
        traj.states[k] = steps[k].adjoint() * traj.states[k + 1];
    }
    return traj;
}

Trajectory propagate_target_backward(const ModelBasis &model, const StateVector &target,
                                     const ControlField &field) {
    return propagate_target_backward(target, field.grid, step_propagators(model, field));
}

void write_trajectory_csv(std::ostream &out, const Trajectory &traj, const ModelBasis &model) {
    out << "t_ns,P1,P2,P3,P4,re1,im1,re2,im2,re3,im3,re4,im4\n";
    out << std::setprecision(12);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const StateVector &psi = traj.states[k];
        out << traj.grid.boundary(k);
        for (int label = 1; label <= 4; ++label) {
            out << ',' << std::norm(psi(model.index_of(label)));
        }
        for (int label = 1; label <= 4; ++label) {
            const cdouble a = psi(model.index_of(label));
            out << ',' << a.real() << ',' << a.imag();
        }
        out << '\n';
    }
}

}  // namespace hqpa

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

#include "hqpa/tbqcp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <string>

#include "hqpa/errors.hpp"
#include "hqpa/units.hpp"

namespace hqpa {

StatePairSet StatePairSet::uniform(std::vector<StatePair> pairs) {
    const std::size_t n = pairs.size();
    StatePairSet set{std::move(pairs), {}};
    set.weights.assign(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
    return set;
}

void StatePairSet::validate() const {
    if (pairs.empty()) {
        throw DimensionError("state pair set is empty");
    }
    if (weights.size() != pairs.size()) {
        throw DimensionError("state pair set has " + std::to_string(pairs.size()) + " pairs but " +
                             std::to_string(weights.size()) + " weights");
    }
    for (const auto &pair : pairs) {
        require_normalized(pair.initial, 1e-10, "state pair initial");
        require_normalized(pair.target, 1e-10, "state pair target");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ContractViolation("state pair weights must be non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ContractViolation("state pair weights must sum to 1");
    }
}

void OptimizerConfig::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw InvalidParameterError("optimizer eta must be positive");
    }
    if (fluctuation_window < 1) {
        throw InvalidParameterError("fluctuation window must be at least 1");
    }
    if (!(stop_infidelity >= 0.0) || stop_infidelity >= 1.0) {
        throw InvalidParameterError("stop infidelity must lie in [0, 1)");
    }
    if (!(max_field_uev > 0.0)) {
        throw InvalidParameterError("field bound must be positive");
    }
    if (max_eta_backoffs < 0) {
        throw InvalidParameterError("eta backoff count must be non-negative");
    }
    grid.validate();
    if (initial_field) {
        initial_field->validate();
        if (!(initial_field->grid == grid)) {
            throw DimensionError("initial field grid differs from optimizer grid");
        }
    }
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
        case StopReason::kFluctuation:
            return "fluctuation";
        case StopReason::kMaxIterations:
            return "max_iterations";
        case StopReason::kTargetReached:
            return "target_reached";
    }
    return "unknown";
}

double field_correction(const StateVector &psi, const StateVector &chi, const Matrix4 &mu) {
    const cdouble overlap = chi.dot(psi);  // <chi|psi>
    const StateVector mu_psi = mu.cast<cdouble>() * psi;
    const cdouble value = std::conj(overlap) * chi.dot(mu_psi);  // <psi|chi><chi|mu|psi>
    return -2.0 / kHbar * value.imag();
}

namespace {

// Fidelities of the forward states under the field that produced `backward`, read off at
// t = 0 where the overlap <chi|psi> equals its value at T.
std::vector<double> fidelities_at_start(const StatePairSet &pairs, const std::vector<Trajectory> &backward) {
    std::vector<double> out;
    out.reserve(pairs.pairs.size());
    for (std::size_t j = 0; j < pairs.pairs.size(); ++j) {
        out.push_back(std::norm(backward[j].states.front().dot(pairs.pairs[j].initial)));
    }
    return out;
}

double weighted_mean(const std::vector<double> &values, const std::vector<double> &weights) {
    return std::inner_product(values.begin(), values.end(), weights.begin(), 0.0);
}

double max_infidelity(const std::vector<double> &fidelities) {
    double worst = 0.0;
    for (double f : fidelities) {
        worst = std::max(worst, 1.0 - f);
    }
    return worst;
}

std::vector<Trajectory> backward_pass(const StatePairSet &pairs, const TimeGrid &grid,
                                      const std::vector<Unitary4> &steps) {
    std::vector<Trajectory> out;
    out.reserve(pairs.pairs.size());
    for (const auto &pair : pairs.pairs) {
        out.push_back(propagate_target_backward(pair.target, grid, steps));
    }
    return out;
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

OptimizationResult run_with_eta(const ModelBasis &model, const StatePairSet &pairs,
                                const OptimizerConfig &config, double eta,
                                const IterationObserver &observer) {
    ControlField field = config.initial_field ? *config.initial_field : ControlField::zeros(config.grid);
    std::vector<Unitary4> steps = step_propagators(model, field);
    std::vector<Trajectory> backward = backward_pass(pairs, config.grid, steps);

    OptimizationResult result;
    result.eta_used = eta;
    result.per_pair_fidelity = fidelities_at_start(pairs, backward);
    for (double &f : result.per_pair_fidelity) {
        f = clamp_unit(f);
    }
    result.fidelity_history.push_back(clamp_unit(weighted_mean(result.per_pair_fidelity, pairs.weights)));
    result.max_pair_infidelity_history.push_back(max_infidelity(result.per_pair_fidelity));
    result.field = field;
    if (observer) {
        observer(0, result.fidelity_history.back());
    }

    std::vector<double> infidelity{1.0 - result.fidelity_history.back()};
    double best = result.fidelity_history.back();
    result.stop_reason = StopReason::kMaxIterations;

    if (config.stop_infidelity > 0.0 && infidelity.back() <= config.stop_infidelity) {
        result.stop_reason = StopReason::kTargetReached;
        result.converged = true;
        return result;
    }

    for (std::size_t iteration = 1; iteration <= config.max_iterations; ++iteration) {
        SweepResult sweep;
        try {
            sweep = tbqcp_sweep(model, field, pairs, backward, eta);
        } catch (const DivergenceError &e) {
            throw DivergenceError(iteration, "iteration " + std::to_string(iteration) + ": " + e.what());
        }
        for (double e : sweep.field.values) {
            if (std::abs(e) > config.max_field_uev) {
                throw DivergenceError(iteration, "iteration " + std::to_string(iteration) +
                                                     ": field exceeds " +
                                                     std::to_string(config.max_field_uev) + " ueV");
            }
        }
        field = std::move(sweep.field);
        for (double &f : sweep.pair_fidelity) {
            f = clamp_unit(f);
        }
        const double mean = clamp_unit(weighted_mean(sweep.pair_fidelity, pairs.weights));
        result.fidelity_history.push_back(mean);
        result.max_pair_infidelity_history.push_back(max_infidelity(sweep.pair_fidelity));
        infidelity.push_back(1.0 - mean);
        result.iterations_used = iteration;
        if (observer) {
            observer(iteration, mean);
        }
        if (mean > best) {
            best = mean;
            result.best_iteration = iteration;
            result.field = field;
            result.per_pair_fidelity = sweep.pair_fidelity;
        }
        if (config.stop_infidelity > 0.0 && infidelity.back() <= config.stop_infidelity) {
            result.stop_reason = StopReason::kTargetReached;
            result.converged = true;
            break;
        }
        if (convergence_check(infidelity, config.fluctuation_window)) {
            result.stop_reason = StopReason::kFluctuation;
            result.converged = true;
            break;
        }
        if (iteration < config.max_iterations) {
            backward = backward_pass(pairs, config.grid, sweep.steps);
        }
    }
    return result;
}

}  // namespace

SweepResult tbqcp_sweep(const ModelBasis &model, const ControlField &field, const StatePairSet &pairs,
                        const std::vector<Trajectory> &backward, double eta) {
    field.validate();
    pairs.validate();
    const std::size_t n_pairs = pairs.pairs.size();
    const std::size_t n_steps = field.grid.n_steps;
    if (backward.size() != n_pairs) {
        throw DimensionError("tbqcp_sweep: one backward trajectory per pair is required");
    }
    for (const auto &traj : backward) {
        if (traj.states.size() != n_steps + 1) {
            throw DimensionError("tbqcp_sweep: backward trajectory length does not match grid");
        }
    }

    const Matrix4 coupling = model.coupling();
    const Eigen::Matrix4cd coupling_c = coupling.cast<cdouble>();
    const double dt = field.grid.dt();

    SweepResult out;
    out.field.grid = field.grid;
    out.field.values.resize(n_steps);
    out.steps.reserve(n_steps);

    std::vector<StateVector> psi;
    psi.reserve(n_pairs);
    for (const auto &pair : pairs.pairs) {
        psi.push_back(pair.initial);
    }

    for (std::size_t k = 0; k < n_steps; ++k) {
        double correction = 0.0;
        for (std::size_t j = 0; j < n_pairs; ++j) {
            const StateVector &chi = backward[j].states[k];
            const cdouble overlap = chi.dot(psi[j]);
            const cdouble value = std::conj(overlap) * chi.dot(coupling_c * psi[j]);
            correction += pairs.weights[j] * (-2.0 / kHbar) * value.imag();
        }
        const double e_next = field.values[k] + eta * correction;
        if (!std::isfinite(e_next)) {
            throw DivergenceError(0, "field sample " + std::to_string(k) + " became non-finite");
        }
        out.field.values[k] = e_next;
        out.steps.push_back(step_propagator(model.h0_diag, coupling, e_next, dt));
        const Unitary4 &u = out.steps.back();
        for (auto &state : psi) {
            state = u * state;
        }
    }

    out.pair_fidelity.reserve(n_pairs);
    for (std::size_t j = 0; j < n_pairs; ++j) {
        out.pair_fidelity.push_back(std::norm(pairs.pairs[j].target.dot(psi[j])));
    }
    return out;
}

bool convergence_check(const std::vector<double> &infidelity_history, std::size_t window) {
    if (window == 0 || infidelity_history.size() < window + 1) {
        return false;
    }
    const std::size_t n = infidelity_history.size() - 1;
    return infidelity_history[n] > infidelity_history[n - window];
}

OptimizationResult optimize_gate(const ModelBasis &model, const StatePairSet &pairs,
                                 const OptimizerConfig &config, const IterationObserver &observer) {
    config.validate();
    pairs.validate();
    double eta = config.eta;
    for (int attempt = 0;; ++attempt) {
        try {
            return run_with_eta(model, pairs, config, eta, observer);
        } catch (const DivergenceError &) {
            if (attempt >= config.max_eta_backoffs) {
                throw;
            }
            eta /= 2.0;
        }
    }
}

void write_convergence_log_csv(std::ostream &out, const OptimizationResult &result) {
    out << "iteration,mean_infidelity,max_pair_infidelity\n";
    out << std::setprecision(12);
    for (std::size_t n = 0; n < result.fidelity_history.size(); ++n) {
        out << n << ',' << 1.0 - result.fidelity_history[n] << ',' << result.max_pair_infidelity_history[n]
            << '\n';
    }
}

}  // namespace hqpa

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

#ifndef HQPA_TBQCP_HPP
#define HQPA_TBQCP_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "hqpa/hybrid_model.hpp"
#include "hqpa/propagation.hpp"

namespace hqpa {

struct StatePair {
    StateVector initial;
    StateVector target;
};

/// Initial/target pairs steered by one common field, with objective weights.
struct StatePairSet {
    std::vector<StatePair> pairs;
    std::vector<double> weights;

    static StatePairSet uniform(std::vector<StatePair> pairs);
    /// Throws on unnormalized states, negative weights or weights not summing to 1.
    void validate() const;
};

struct OptimizerConfig {
    /// Gain of the field update E <- E + eta*f, in ueV^2*ns.
    double eta = 10.0;
    std::size_t max_iterations = 20000;
    /// Stop once the infidelity exceeds the one recorded this many iterations earlier.
    std::size_t fluctuation_window = 20;
    /// Stop as soon as the mean infidelity drops to this value; 0 disables.
    double stop_infidelity = 0.0;
    /// |E| beyond this bound (ueV) counts as divergence.
    double max_field_uev = 1e4;
    /// Number of times eta is halved and the run restarted after a divergence.
    int max_eta_backoffs = 6;
    TimeGrid grid = TimeGrid::with_default_resolution(1.3);
    /// Trial field; all-zero when unset.
    std::optional<ControlField> initial_field;

    void validate() const;
};

enum class StopReason { kFluctuation, kMaxIterations, kTargetReached };
std::string_view to_string(StopReason reason);

struct OptimizationResult {
    /// Best field seen (highest mean fidelity), not necessarily the last one.
    ControlField field;
    /// fidelity_history[n] is the mean fidelity of the n-th iterate; entry 0 is the trial field.
    std::vector<double> fidelity_history;
    std::vector<double> max_pair_infidelity_history;
    std::vector<double> per_pair_fidelity;
    std::size_t best_iteration = 0;
    std::size_t iterations_used = 0;
    bool converged = false;
    StopReason stop_reason = StopReason::kMaxIterations;
    double eta_used = 0.0;

    double mean_infidelity() const { return 1.0 - fidelity_history[best_iteration]; }
    double max_pair_infidelity() const { return max_pair_infidelity_history[best_iteration]; }
};

/// f = -(2/hbar) Im{<psi|chi><chi|mu|psi>}: the correction for the observable |chi><chi|.
double field_correction(const StateVector &psi, const StateVector &chi, const Matrix4 &mu);

struct SweepResult {
    ControlField field;
    std::vector<double> pair_fidelity;
    /// Unitaries of the updated field; reused for the next backward pass.
    std::vector<Unitary4> steps;
};

/// One self-consistent forward sweep: at every step the correction is evaluated with
/// the forward states and the backward-propagated targets of the previous field, the
/// field sample is updated, and the forward states advance under the updated sample.
SweepResult tbqcp_sweep(const ModelBasis &model, const ControlField &field, const StatePairSet &pairs,
                        const std::vector<Trajectory> &backward, double eta);

/// True iff at least window+1 values exist and the latest exceeds the one `window` entries earlier.
bool convergence_check(const std::vector<double> &infidelity_history, std::size_t window = 20);

using IterationObserver = std::function<void(std::size_t iteration, double mean_fidelity)>;

/// Full TBQCP loop. Throws DivergenceError if the field runs away even after all eta backoffs.
OptimizationResult optimize_gate(const ModelBasis &model, const StatePairSet &pairs,
                                 const OptimizerConfig &config, const IterationObserver &observer = {});

/// CSV `iteration,mean_infidelity,max_pair_infidelity`.
void write_convergence_log_csv(std::ostream &out, const OptimizationResult &result);

}  // namespace hqpa

#endif  // HQPA_TBQCP_HPP

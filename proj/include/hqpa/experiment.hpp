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

#ifndef HQPA_EXPERIMENT_HPP
#define HQPA_EXPERIMENT_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hqpa/config.hpp"
#include "hqpa/qpa_gates.hpp"
#include "hqpa/tbqcp.hpp"

namespace hqpa {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitTargetMissed = 1,
    kExitConfigError = 2,
    kExitDivergence = 3,
};

struct GateRecord {
    GateId gate{};
    bool diverged = false;
    std::string error;
    std::optional<OptimizationResult> result;
    double wall_seconds = 0.0;
    bool target_met = false;
};

struct QpaRecord {
    int k = 0;
    QpaOutcome outcome;
    Parity expected = Parity::kEven;
    bool match = false;
};

struct RunManifest {
    std::string config_text;
    std::string version;
    std::vector<GateRecord> gates;  // in gate_list order
    std::vector<QpaRecord> qpa;     // empty unless all eight gates converged
    int exit_code = kExitSuccess;

    const GateRecord *find(GateId gate) const;
};

using GateObserver = std::function<void(GateId gate, std::size_t iteration, double mean_fidelity)>;

/// Optimizes every configured gate, runs the permutation circuit when all eight pulses are
/// available, and writes per-gate CSVs, the infidelity table, the QPA report and
/// manifest.json under config.output_dir.
RunManifest run_experiment(const RunConfig &config, const GateObserver &observer = {});

/// Per-k table: P1..P4, inferred parity, expected parity, match flag.
void write_qpa_report(std::ostream &out, const std::vector<QpaRecord> &records);

/// Infidelities x 1e-5 with the gates as columns; one row of pair means, one of worst pairs.
void write_infidelity_table(std::ostream &out, const RunManifest &manifest, double t_final_ns);

}  // namespace hqpa

#endif  // HQPA_EXPERIMENT_HPP

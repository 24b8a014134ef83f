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

#ifndef HQPA_ANALYSIS_HPP
#define HQPA_ANALYSIS_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hqpa/hybrid_model.hpp"
#include "hqpa/propagation.hpp"

namespace hqpa {

/// |<psi|target>|^2. Both states must be normalized to 1e-6.
double fidelity(const StateVector &psi, const StateVector &target);
inline double infidelity(const StateVector &psi, const StateVector &target) {
    return 1.0 - fidelity(psi, target);
}

struct OccupationRow {
    double t_ns;
    std::array<double, 4> p;  // P1..P4 by logical label
};

std::vector<OccupationRow> occupations(const Trajectory &traj, const ModelBasis &model);

struct Leakage {
    double max_p4;
    double final_p4;
};

/// Population of logical level |4> along a trajectory.
Leakage leakage(const Trajectory &traj, const ModelBasis &model);

enum class SpectrumWindow { kNone, kHann };

/// One-sided periodogram of the mean-subtracted field.
struct SpectrumTable {
    std::vector<double> frequencies_ghz;  // k / (n dt), k = 0 .. n/2
    std::vector<double> power;            // normalized to unit sum; all zero for a constant field
    /// Power before normalization; sums to the sum of squared (windowed) samples.
    std::vector<double> raw_power;
};

SpectrumTable power_spectrum(const ControlField &field, SpectrumWindow window = SpectrumWindow::kNone);

/// Fraction of normalized power at frequencies strictly below `cutoff_ghz`.
double power_fraction_below(const SpectrumTable &spectrum, double cutoff_ghz);

/// CSV `freq_GHz,power_normalized`.
void write_spectrum_csv(std::ostream &out, const SpectrumTable &spectrum);

}  // namespace hqpa

#endif  // HQPA_ANALYSIS_HPP

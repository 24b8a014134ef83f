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

#include "hqpa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <type_traits>

#include <fftw3.h>

#include "hqpa/errors.hpp"

namespace hqpa {

double fidelity(const StateVector &psi, const StateVector &target) {
    require_normalized(psi, 1e-6, "fidelity");
    require_normalized(target, 1e-6, "fidelity");
    return std::min(1.0, std::norm(target.dot(psi)));
}

std::vector<OccupationRow> occupations(const Trajectory &traj, const ModelBasis &model) {
    std::vector<OccupationRow> rows;
    rows.reserve(traj.states.size());
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        OccupationRow row{traj.grid.boundary(k), {}};
        for (int label = 1; label <= 4; ++label) {
            row.p[static_cast<std::size_t>(label - 1)] = std::norm(traj.states[k](model.index_of(label)));
        }
        rows.push_back(row);
    }
    return rows;
}

Leakage leakage(const Trajectory &traj, const ModelBasis &model) {
    if (traj.states.empty()) {
        throw DimensionError("leakage: empty trajectory");
    }
    const int idx = model.index_of(4);
    Leakage out{0.0, std::norm(traj.states.back()(idx))};
    for (const auto &psi : traj.states) {
        out.max_p4 = std::max(out.max_p4, std::norm(psi(idx)));
    }
    return out;
}

namespace {

// The FFTW planner is not reentrant.
std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void *p) const { fftw_free(p); }
};
struct PlanDestroy {
    void operator()(fftw_plan p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

}  // namespace

SpectrumTable power_spectrum(const ControlField &field, SpectrumWindow window) {
    field.validate();
    const std::size_t n = field.values.size();
    if (n < 2) {
        throw InvalidParameterError("power_spectrum needs at least two samples");
    }
    const double mean = std::accumulate(field.values.begin(), field.values.end(), 0.0) / static_cast<double>(n);

    const std::size_t n_out = n / 2 + 1;
    std::unique_ptr<double, FftwFree> in(static_cast<double *>(fftw_malloc(sizeof(double) * n)));
    std::unique_ptr<fftw_complex, FftwFree> out(
        static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n_out)));
    std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    for (std::size_t k = 0; k < n; ++k) {
        double w = 1.0;
        if (window == SpectrumWindow::kHann) {
            w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1));
        }
        in.get()[k] = w * (field.values[k] - mean);
    }
    fftw_execute(plan.get());

    SpectrumTable table;
    table.frequencies_ghz.resize(n_out);
    table.raw_power.resize(n_out);
    table.power.resize(n_out);
    const double span = static_cast<double>(n) * field.grid.dt();
    for (std::size_t k = 0; k < n_out; ++k) {
        const fftw_complex &c = out.get()[k];
        const double sq = c[0] * c[0] + c[1] * c[1];
        // Interior bins stand for both +f and -f.
        const bool paired = k != 0 && !(n % 2 == 0 && k == n / 2);
        table.raw_power[k] = (paired ? 2.0 : 1.0) * sq / static_cast<double>(n);
        table.frequencies_ghz[k] = static_cast<double>(k) / span;
    }
    const double total = std::accumulate(table.raw_power.begin(), table.raw_power.end(), 0.0);
    if (total > 0.0) {
        for (std::size_t k = 0; k < n_out; ++k) {
            table.power[k] = table.raw_power[k] / total;
        }
    }
    return table;
}

double power_fraction_below(const SpectrumTable &spectrum, double cutoff_ghz) {
    double acc = 0.0;
    for (std::size_t k = 0; k < spectrum.power.size(); ++k) {
        if (spectrum.frequencies_ghz[k] < cutoff_ghz) {
            acc += spectrum.power[k];
        }
    }
    return acc;
}

void write_spectrum_csv(std::ostream &out, const SpectrumTable &spectrum) {
    out << "freq_GHz,power_normalized\n";
    out << std::setprecision(12);
    for (std::size_t k = 0; k < spectrum.power.size(); ++k) {
        out << spectrum.frequencies_ghz[k] << ',' << spectrum.power[k] << '\n';
    }
}

}  // namespace hqpa

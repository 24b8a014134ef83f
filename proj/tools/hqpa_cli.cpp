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

// Command-line front end: optimize the gate set, inspect pulses, run the permutation circuit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hqpa/analysis.hpp"
#include "hqpa/config.hpp"
#include "hqpa/errors.hpp"
#include "hqpa/experiment.hpp"
#include "hqpa/hybrid_model.hpp"
#include "hqpa/pulse_io.hpp"
#include "hqpa/qpa_gates.hpp"

namespace {

using namespace hqpa;

struct GlobalOptions {
    std::string config_path;
    std::string out_dir;
};

RunConfig resolve_config(const GlobalOptions &g) {
    RunConfig cfg = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
    if (!g.out_dir.empty()) {
        cfg.output_dir = g.out_dir;
    }
    return cfg;
}

// Writes to <out>/<name> when --out is set, to stdout otherwise.
template <typename Fn>
void emit(const GlobalOptions &g, const std::string &name, Fn &&write) {
    if (g.out_dir.empty()) {
        write(std::cout);
        return;
    }
    std::filesystem::create_directories(g.out_dir);
    const auto path = std::filesystem::path(g.out_dir) / name;
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    write(out);
    std::cerr << "wrote " << path.string() << '\n';
}

int cmd_optimize(const GlobalOptions &g, bool verbose) {
    const RunConfig cfg = resolve_config(g);
    GateObserver observer;
    if (verbose) {
        observer = [](GateId gate, std::size_t it, double f) {
            if (it % 100 == 0) {
                std::cerr << gate_name(gate) << " iteration " << it << " infidelity " << 1.0 - f << '\n';
            }
        };
    }
    const RunManifest manifest = run_experiment(cfg, observer);
    write_infidelity_table(std::cout, manifest, cfg.optimizer.grid.t_final_ns);
    for (const auto &rec : manifest.gates) {
        if (!rec.result) {
            std::cerr << gate_name(rec.gate) << ": " << rec.error << '\n';
        }
    }
    if (!manifest.qpa.empty()) {
        std::cout << '\n';
        write_qpa_report(std::cout, manifest.qpa);
    }
    std::cerr << "outputs in " << cfg.output_dir.string() << '\n';
    return manifest.exit_code;
}

int cmd_spectrum(const GlobalOptions &g, const std::string &pulse_path, bool hann) {
    const ControlField field = import_pulse(std::filesystem::path(pulse_path));
    const SpectrumTable spectrum = power_spectrum(field, hann ? SpectrumWindow::kHann : SpectrumWindow::kNone);
    emit(g, "spectrum_" + std::filesystem::path(pulse_path).stem().string() + ".csv",
         [&](std::ostream &out) { write_spectrum_csv(out, spectrum); });
    return kExitSuccess;
}

int cmd_propagate(const GlobalOptions &g, const std::string &pulse_path, int initial) {
    const RunConfig cfg = resolve_config(g);
    const ModelBasis model = build_model_basis(cfg.params, cfg.field_sign);
    const ControlField field = import_pulse(std::filesystem::path(pulse_path));
    const Trajectory traj = propagate_forward(model, model.basis_state(initial).cast<cdouble>(), field);
    emit(g, "trajectory_" + std::filesystem::path(pulse_path).stem().string() + ".csv",
         [&](std::ostream &out) { write_trajectory_csv(out, traj, model); });
    const Leakage leak = leakage(traj, model);
    std::cerr << "final P4 " << leak.final_p4 << ", max P4 " << leak.max_p4 << '\n';
    return kExitSuccess;
}

int cmd_qpa(const GlobalOptions &g, const std::string &pulse_dir, std::optional<int> k_only) {
    const RunConfig cfg = resolve_config(g);
    const ModelBasis model = build_model_basis(cfg.params, cfg.field_sign);
    const std::filesystem::path dir(pulse_dir);
    const ControlField uft = import_pulse(dir / "pulse_UFT.csv");
    const ControlField uft_dag = import_pulse(dir / "pulse_UFTdag.csv", uft.grid);
    std::vector<QpaRecord> records;
    for (int k = 1; k <= 6; ++k) {
        if (k_only && *k_only != k) {
            continue;
        }
        const std::string name(gate_name(permutation_gate(k)));
        const ControlField pi_k = import_pulse(dir / ("pulse_" + name + ".csv"), uft.grid);
        QpaRecord rec;
        rec.k = k;
        rec.outcome = run_qpa(model, uft, pi_k, uft_dag, k);
        rec.expected = parity(k);
        rec.match = (rec.expected == Parity::kEven) ? rec.outcome.inferred == ParityReadout::kEven
                                                    : rec.outcome.inferred == ParityReadout::kOdd;
        records.push_back(rec);
    }
    emit(g, "qpa_report.txt", [&](std::ostream &out) { write_qpa_report(out, records); });
    const bool all_match = std::all_of(records.begin(), records.end(), [](const QpaRecord &r) { return r.match; });
    return all_match ? kExitSuccess : kExitTargetMissed;
}

int cmd_sweep(const GlobalOptions &g, double eps_min, double eps_max, std::size_t points) {
    const RunConfig cfg = resolve_config(g);
    const auto rows = energy_spectrum_sweep(cfg.params, eps_min, eps_max, points);
    emit(g, "energy_levels.csv", [&](std::ostream &out) { write_spectrum_sweep_csv(out, rows); });
    return kExitSuccess;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Optimal-control pulses for qutrit gates on a double-quantum-dot hybrid qubit"};
    app.set_version_flag("--version", HQPA_VERSION);
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--config", global.config_path, "Run configuration (key = value)")->check(CLI::ExistingFile);
    app.add_option("--out", global.out_dir, "Output directory");

    bool verbose = false;
    auto *optimize = app.add_subcommand("optimize", "Optimize the configured gates and run the permutation circuit");
    optimize->add_flag("-v,--verbose", verbose, "Report progress every 100 iterations");

    std::string pulse_path;
    bool hann = false;
    auto *spectrum = app.add_subcommand("spectrum", "Power spectrum of a pulse CSV");
    spectrum->add_option("pulse", pulse_path, "Pulse CSV (t_ns,E_ueV)")->required()->check(CLI::ExistingFile);
    spectrum->add_flag("--hann", hann, "Apply a Hann window before the transform");

    int initial = 2;
    auto *propagate = app.add_subcommand("propagate", "Propagate a logical basis state under a pulse");
    propagate->add_option("pulse", pulse_path, "Pulse CSV (t_ns,E_ueV)")->required()->check(CLI::ExistingFile);
    propagate->add_option("--initial", initial, "Logical level 1..4")->check(CLI::Range(1, 4));

    std::string pulse_dir;
    std::optional<int> k_only;
    auto *qpa = app.add_subcommand("qpa", "Run the permutation-parity circuit from optimized pulses");
    qpa->add_option("--pulses", pulse_dir, "Directory holding pulse_<gate>.csv files")->required();
    qpa->add_option("--k", k_only, "Permutation index 1..6 (all when omitted)")->check(CLI::Range(1, 6));

    double eps_min = -300.0;
    double eps_max = 300.0;
    std::size_t points = 601;
    auto *sweep = app.add_subcommand("sweep-spectrum", "Energy levels versus detuning");
    sweep->add_option("--eps-min", eps_min, "Lowest detuning, ueV");
    sweep->add_option("--eps-max", eps_max, "Highest detuning, ueV");
    sweep->add_option("--points", points, "Number of detuning samples");

    for (auto *sub : {optimize, spectrum, propagate, qpa, sweep}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitSuccess : kExitConfigError;
    }

    try {
        if (*optimize) {
            return cmd_optimize(global, verbose);
        }
        if (*spectrum) {
            return cmd_spectrum(global, pulse_path, hann);
        }
        if (*propagate) {
            return cmd_propagate(global, pulse_path, initial);
        }
        if (*qpa) {
            return cmd_qpa(global, pulse_dir, k_only);
        }
        if (*sweep) {
            return cmd_sweep(global, eps_min, eps_max, points);
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DivergenceError &e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return kExitSuccess;
}

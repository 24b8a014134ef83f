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

#include "hqpa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "hqpa/analysis.hpp"
#include "hqpa/errors.hpp"
#include "hqpa/pulse_io.hpp"

#ifndef HQPA_VERSION
#define HQPA_VERSION "0.0.0"
#endif

namespace hqpa {

const GateRecord *RunManifest::find(GateId gate) const {
    const auto it = std::find_if(gates.begin(), gates.end(), [gate](const GateRecord &r) { return r.gate == gate; });
    return it == gates.end() ? nullptr : &*it;
}

namespace {

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void write_gate_outputs(const std::filesystem::path &dir, const ModelBasis &model, const GateRecord &record) {
    if (!record.result) {
        return;
    }
    const std::string name(gate_name(record.gate));
    const OptimizationResult &result = *record.result;
    export_pulse(dir / ("pulse_" + name + ".csv"), result.field);
    {
        auto out = open_output(dir / ("convergence_" + name + ".csv"));
        write_convergence_log_csv(out, result);
    }
    {
        auto out = open_output(dir / ("spectrum_" + name + ".csv"));
        write_spectrum_csv(out, power_spectrum(result.field));
    }
    {
        auto out = open_output(dir / ("trajectory_" + name + ".csv"));
        const StateVector ground = model.basis_state(2).cast<cdouble>();
        write_trajectory_csv(out, propagate_forward(model, ground, result.field), model);
    }
}

nlohmann::json manifest_json(const RunManifest &m) {
    nlohmann::json j;
    j["version"] = m.version;
    j["config"] = m.config_text;
    j["exit_code"] = m.exit_code;
    j["gates"] = nlohmann::json::array();
    for (const auto &g : m.gates) {
        nlohmann::json row;
        row["gate"] = std::string(gate_name(g.gate));
        row["wall_seconds"] = g.wall_seconds;
        row["target_met"] = g.target_met;
        if (g.result) {
            row["iterations"] = g.result->iterations_used;
            row["best_iteration"] = g.result->best_iteration;
            row["mean_infidelity"] = g.result->mean_infidelity();
            row["max_pair_infidelity"] = g.result->max_pair_infidelity();
            row["stop_reason"] = std::string(to_string(g.result->stop_reason));
            row["eta_used"] = g.result->eta_used;
        } else {
            row["error"] = g.error;
            row["diverged"] = g.diverged;
        }
        j["gates"].push_back(row);
    }
    j["qpa"] = nlohmann::json::array();
    for (const auto &q : m.qpa) {
        j["qpa"].push_back({{"k", q.k},
                            {"probabilities", q.outcome.probabilities},
                            {"inferred", std::string(to_string(q.outcome.inferred))},
                            {"expected", std::string(to_string(q.expected))},
                            {"confidence", q.outcome.confidence},
                            {"match", q.match}});
    }
    return j;
}

}  // namespace

void write_qpa_report(std::ostream &out, const std::vector<QpaRecord> &records) {
    out << "k        P1            P2            P3            P4            inferred      expected  match\n";
    out << std::scientific << std::setprecision(6);
    for (const auto &r : records) {
        out << std::left << std::setw(2) << r.k << std::right;
        for (double p : r.outcome.probabilities) {
            out << "  " << std::setw(12) << p;
        }
        out << "  " << std::left << std::setw(12) << to_string(r.outcome.inferred) << "  " << std::setw(8)
            << to_string(r.expected) << "  " << (r.match ? "yes" : "no") << std::right << '\n';
    }
    out << std::defaultfloat;
}

void write_infidelity_table(std::ostream &out, const RunManifest &manifest, double t_final_ns) {
    out << "# infidelity x 1e-5; 'mean' averages the four state pairs, 'max' is the worst pair\n";
    out << "T_ns,statistic";
    for (const GateId gate : kAllGates) {
        if (manifest.find(gate)) {
            out << ',' << gate_name(gate);
        }
    }
    out << '\n';
    out << std::fixed << std::setprecision(4);
    for (const bool worst : {false, true}) {
        out << std::defaultfloat << std::setprecision(6) << t_final_ns << (worst ? ",max" : ",mean");
        out << std::fixed << std::setprecision(4);
        for (const GateId gate : kAllGates) {
            const GateRecord *rec = manifest.find(gate);
            if (!rec) {
                continue;
            }
            out << ',';
            if (rec->result) {
                out << 1e5 * (worst ? rec->result->max_pair_infidelity() : rec->result->mean_infidelity());
            } else {
                out << "nan";
            }
        }
        out << '\n';
    }
    out << std::defaultfloat;
}

RunManifest run_experiment(const RunConfig &config, const GateObserver &observer) {
    if (config.gates.empty()) {
        throw ConfigError("gate list is empty", 0, "gates");
    }
    config.optimizer.validate();
    const ModelBasis model = build_model_basis(config.params, config.field_sign);
    std::filesystem::create_directories(config.output_dir);

    RunManifest manifest;
    manifest.config_text = to_config_text(config);
    manifest.version = HQPA_VERSION;
    manifest.gates.resize(config.gates.size());

    std::size_t n_workers = config.workers == 0 ? std::thread::hardware_concurrency() : config.workers;
    n_workers = std::clamp<std::size_t>(n_workers, 1, config.gates.size());

    std::mutex mutex;
    std::condition_variable done_cv;
    std::deque<std::size_t> finished;
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (std::size_t i = next++; i < config.gates.size(); i = next++) {
            GateRecord record;
            record.gate = config.gates[i];
            const auto start = std::chrono::steady_clock::now();
            try {
                const StatePairSet pairs = embed_gate_as_state_pairs(gate_unitary(record.gate), model);
                IterationObserver iter_observer;
                if (observer) {
                    iter_observer = [&observer, gate = record.gate](std::size_t it, double f) { observer(gate, it, f); };
                }
                record.result = optimize_gate(model, pairs, config.optimizer, iter_observer);
                record.target_met = record.result->mean_infidelity() <= config.target_infidelity;
            } catch (const DivergenceError &e) {
                record.diverged = true;
                record.error = e.what();
            } catch (const std::exception &e) {
                record.error = e.what();
            }
            record.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            {
                std::lock_guard lock(mutex);
                manifest.gates[i] = std::move(record);
                finished.push_back(i);
            }
            done_cv.notify_one();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back(worker);
    }
    // All file output happens on this thread.
    std::exception_ptr write_error;
    for (std::size_t written = 0; written < config.gates.size(); ++written) {
        std::size_t index = 0;
        {
            std::unique_lock lock(mutex);
            done_cv.wait(lock, [&] { return !finished.empty(); });
            index = finished.front();
            finished.pop_front();
        }
        if (!write_error) {
            try {
                write_gate_outputs(config.output_dir, model, manifest.gates[index]);
            } catch (...) {
                write_error = std::current_exception();
            }
        }
    }
    for (auto &t : pool) {
        t.join();
    }
    if (write_error) {
        std::rethrow_exception(write_error);
    }

    const bool all_gates = std::all_of(kAllGates.begin(), kAllGates.end(), [&](GateId g) {
        const GateRecord *rec = manifest.find(g);
        return rec && rec->result;
    });
    if (all_gates) {
        const ControlField &uft = manifest.find(GateId::kQft)->result->field;
        const ControlField &uft_dag = manifest.find(GateId::kQftDagger)->result->field;
        for (int k = 1; k <= 6; ++k) {
            QpaRecord rec;
            rec.k = k;
            rec.outcome = run_qpa(model, uft, manifest.find(permutation_gate(k))->result->field, uft_dag, k);
            rec.expected = parity(k);
            rec.match = (rec.expected == Parity::kEven && rec.outcome.inferred == ParityReadout::kEven) ||
                        (rec.expected == Parity::kOdd && rec.outcome.inferred == ParityReadout::kOdd);
            manifest.qpa.push_back(rec);
        }
        auto out = open_output(config.output_dir / "qpa_report.txt");
        write_qpa_report(out, manifest.qpa);
    }

    {
        auto out = open_output(config.output_dir / "infidelity_table.csv");
        write_infidelity_table(out, manifest, config.optimizer.grid.t_final_ns);
    }

    const bool any_diverged =
        std::any_of(manifest.gates.begin(), manifest.gates.end(), [](const GateRecord &r) { return r.diverged; });
    const bool any_missed =
        std::any_of(manifest.gates.begin(), manifest.gates.end(), [](const GateRecord &r) { return !r.target_met; });
    manifest.exit_code = any_diverged ? kExitDivergence : any_missed ? kExitTargetMissed : kExitSuccess;

    {
        auto out = open_output(config.output_dir / "manifest.json");
        out << manifest_json(manifest).dump(2) << '\n';
    }
    return manifest;
}

}  // namespace hqpa

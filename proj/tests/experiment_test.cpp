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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "gtest/gtest.h"

#include "hqpa/analysis.hpp"
#include "hqpa/pulse_io.hpp"

using namespace hqpa;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("hqpa_experiment_test_" + name);
    fs::remove_all(dir);
    return dir;
}

RunConfig small_config(const fs::path &dir, const std::string &gates) {
    RunConfig cfg = parse_config("t_final = 1.3\nn_steps = 1300\neta = 10\nmax_iterations = 15\ngates = " + gates + "\n");
    cfg.output_dir = dir;
    return cfg;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(HQPA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(experiment, gate_subset) {
    const fs::path dir = scratch_dir("subset");
    const RunManifest m = run_experiment(small_config(dir, "P1"));
    ASSERT_EQ(m.gates.size(), 1u);
    ASSERT_TRUE(m.gates[0].result.has_value());
    EXPECT_TRUE(fs::exists(dir / "pulse_P1.csv"));
    EXPECT_TRUE(fs::exists(dir / "convergence_P1.csv"));
    EXPECT_TRUE(fs::exists(dir / "spectrum_P1.csv"));
    EXPECT_TRUE(fs::exists(dir / "trajectory_P1.csv"));
    EXPECT_TRUE(fs::exists(dir / "manifest.json"));
    EXPECT_TRUE(fs::exists(dir / "infidelity_table.csv"));
    EXPECT_FALSE(fs::exists(dir / "pulse_P2.csv"));
    EXPECT_FALSE(fs::exists(dir / "qpa_report.txt"));
    EXPECT_TRUE(m.qpa.empty());
    EXPECT_EQ(m.find(GateId::kPi2), nullptr);
    fs::remove_all(dir);
}

TEST(experiment, deterministic_outputs) {
    const fs::path a = scratch_dir("det_a");
    const fs::path b = scratch_dir("det_b");
    RunConfig ca = small_config(a, "P4,UFT");
    RunConfig cb = small_config(b, "P4,UFT");
    ca.workers = 1;
    cb.workers = 2;
    run_experiment(ca);
    run_experiment(cb);
    for (const char *name : {"pulse_P4.csv", "pulse_UFT.csv", "convergence_UFT.csv", "infidelity_table.csv"}) {
        EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(experiment, exported_pulse_reproduces_recorded_fidelity) {
    const fs::path dir = scratch_dir("compose");
    const RunConfig cfg = small_config(dir, "P2");
    const RunManifest m = run_experiment(cfg);
    ASSERT_TRUE(m.gates[0].result.has_value());

    const ModelBasis model = build_model_basis(cfg.params, cfg.field_sign);
    const ControlField pulse = import_pulse(dir / "pulse_P2.csv", cfg.optimizer.grid);
    const StatePairSet pairs = embed_gate_as_state_pairs(gate_unitary(GateId::kPi2), model);
    double mean = 0.0;
    for (std::size_t j = 0; j < pairs.pairs.size(); ++j) {
        const StateVector out = propagate_forward(model, pairs.pairs[j].initial, pulse).states.back();
        mean += pairs.weights[j] * fidelity(out, pairs.pairs[j].target);
    }
    EXPECT_NEAR(1.0 - mean, m.gates[0].result->mean_infidelity(), 1e-9);
    fs::remove_all(dir);
}

TEST(experiment, divergence_is_reported_per_gate) {
    const fs::path dir = scratch_dir("diverge");
    RunConfig cfg = small_config(dir, "P3,P6");
    cfg.optimizer.eta = 1e12;
    cfg.optimizer.max_eta_backoffs = 0;
    const RunManifest m = run_experiment(cfg);
    EXPECT_EQ(m.exit_code, kExitDivergence);
    ASSERT_EQ(m.gates.size(), 2u);
    for (const auto &g : m.gates) {
        EXPECT_TRUE(g.diverged);
        EXPECT_FALSE(g.result.has_value());
        EXPECT_NE(g.error.find("iteration"), std::string::npos);
    }
    EXPECT_TRUE(fs::exists(dir / "manifest.json"));
    fs::remove_all(dir);
}

TEST(experiment, missed_target_exit_code) {
    const fs::path dir = scratch_dir("missed");
    RunConfig cfg = small_config(dir, "UFT");
    cfg.optimizer.max_iterations = 1;
    const RunManifest m = run_experiment(cfg);
    EXPECT_EQ(m.exit_code, kExitTargetMissed);
    EXPECT_FALSE(m.gates[0].target_met);
    fs::remove_all(dir);
}

TEST(experiment, cli_exit_codes) {
    const fs::path dir = scratch_dir("cli");
    fs::create_directories(dir);
    {
        std::ofstream(dir / "bad.cfg") << "eta = -1\n";
        std::ofstream(dir / "unknown.cfg") << "colour = blue\n";
        std::ofstream(dir / "short.cfg") << "t_final = 1.3\nn_steps = 1300\nmax_iterations = 2\ngates = P1\n";
    }
    const std::string out = " --out " + (dir / "out").string();
    EXPECT_EQ(run_cli("--config " + (dir / "bad.cfg").string() + out + " optimize"), kExitConfigError);
    EXPECT_EQ(run_cli("--config " + (dir / "unknown.cfg").string() + out + " optimize"), kExitConfigError);
    EXPECT_EQ(run_cli("--config " + (dir / "missing.cfg").string() + out + " optimize"), kExitConfigError);
    EXPECT_EQ(run_cli("--config " + (dir / "short.cfg").string() + out + " optimize"), kExitTargetMissed);
    EXPECT_TRUE(fs::exists(dir / "out" / "pulse_P1.csv"));
    EXPECT_EQ(run_cli("--config " + (dir / "short.cfg").string() + out + " spectrum " + (dir / "out" / "pulse_P1.csv").string()),
              kExitSuccess);
    EXPECT_EQ(run_cli(out + " sweep-spectrum --points 11"), kExitSuccess);
    EXPECT_TRUE(fs::exists(dir / "out" / "energy_levels.csv"));
    fs::remove_all(dir);
}

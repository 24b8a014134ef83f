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

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

#include "hqpa/config.hpp"
#include "hqpa/errors.hpp"
#include "hqpa/pulse_io.hpp"

using namespace hqpa;

namespace {

std::string to_csv(const ControlField &f) {
    std::ostringstream out;
    export_pulse(out, f);
    return out.str();
}

ControlField from_csv(const std::string &text, const std::optional<TimeGrid> &grid = std::nullopt) {
    std::istringstream in(text);
    return import_pulse(in, grid);
}

}  // namespace

TEST(pulse_io, zero_field_round_trip_is_exact) {
    const ControlField z = ControlField::zeros(TimeGrid{1.3, 13000});
    const ControlField back = from_csv(to_csv(z));
    EXPECT_EQ(back.grid.n_steps, z.grid.n_steps);
    EXPECT_NEAR(back.grid.t_final_ns, z.grid.t_final_ns, 1e-12);
    EXPECT_EQ(back.values, z.values);
}

TEST(pulse_io, random_field_round_trip) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (std::size_t n : {1u, 7u, 13000u}) {
        ControlField f = ControlField::zeros(TimeGrid{1.3, n});
        for (double &v : f.values) {
            v = u(rng);
        }
        const ControlField back = from_csv(to_csv(f), f.grid);
        ASSERT_EQ(back.values.size(), n);
        EXPECT_NEAR(back.grid.t_final_ns, 1.3, 1e-9);
        for (std::size_t k = 0; k < n; ++k) {
            EXPECT_NEAR(back.values[k], f.values[k], 1e-10);
        }
    }
}

TEST(pulse_io, layout) {
    ControlField f = ControlField::zeros(TimeGrid{1.0, 4});
    f.values = {1.0, -2.0, 3.5, 0.0};
    std::istringstream in(to_csv(f));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.front(), '#');
    std::getline(in, line);
    EXPECT_EQ(line, "t_ns,E_ueV");
    std::getline(in, line);
    EXPECT_EQ(line, "0.125,1");
}

TEST(pulse_io, rejects_malformed_input) {
    ControlField f = ControlField::zeros(TimeGrid{1.0, 4});
    f.values = {1.0, 2.0, 3.0, 4.0};
    const std::string good = to_csv(f);
    EXPECT_NO_THROW(from_csv(good));

    // Rows out of order.
    std::string shuffled = "t_ns,E_ueV\n0.375,2\n0.125,1\n0.625,3\n0.875,4\n";
    EXPECT_THROW(from_csv(shuffled), FormatError);
    EXPECT_THROW(from_csv("t_ns,E_ueV\n0.125,1\n0.375,abc\n"), FormatError);
    EXPECT_THROW(from_csv("t_ns,E_ueV\n0.125,1,2\n"), FormatError);
    EXPECT_THROW(from_csv("0.125,1\n"), FormatError);
    EXPECT_THROW(from_csv("t_ns,E_ueV\n"), FormatError);
    EXPECT_THROW(from_csv(""), FormatError);
    // Uneven spacing.
    EXPECT_THROW(from_csv("t_ns,E_ueV\n0.125,1\n0.375,2\n0.7,3\n"), FormatError);
}

TEST(pulse_io, grid_mismatch) {
    const ControlField f = ControlField::zeros(TimeGrid{1.0, 10});
    EXPECT_THROW(from_csv(to_csv(f), TimeGrid{1.3, 10}), DimensionError);
    EXPECT_THROW(from_csv(to_csv(f), TimeGrid{1.0, 11}), DimensionError);
    EXPECT_NO_THROW(from_csv(to_csv(f), TimeGrid{1.0, 10}));
}

TEST(config, empty_text_gives_defaults) {
    const RunConfig cfg = parse_config("# nothing here\n\n");
    const RunConfig def;
    EXPECT_EQ(cfg.optimizer.grid, def.optimizer.grid);
    EXPECT_EQ(cfg.optimizer.grid.n_steps, 13000u);
    EXPECT_DOUBLE_EQ(cfg.params.delta1_ghz, 2.62);
    EXPECT_DOUBLE_EQ(cfg.params.eps0_uev, 50.0);
    EXPECT_EQ(cfg.gates.size(), 8u);
    EXPECT_EQ(cfg.field_sign, FieldSign::kLiteral);
}

TEST(config, duration_sets_default_step_count) {
    const RunConfig cfg = parse_config("t_final = 1.0ns\n");
    EXPECT_EQ(cfg.optimizer.grid.n_steps, 10000u);
    EXPECT_DOUBLE_EQ(cfg.optimizer.grid.t_final_ns, 1.0);
    const RunConfig ps = parse_config("t_final = 1300 ps\nn_steps = 260\n");
    EXPECT_NEAR(ps.optimizer.grid.t_final_ns, 1.3, 1e-12);
    EXPECT_EQ(ps.optimizer.grid.n_steps, 260u);
}

TEST(config, units) {
    const RunConfig cfg = parse_config("delta1 = 2620 MHz\neps0 = 0.05 meV\ndelta_el = 52.7GHz\nmax_field = 5000 ueV\n");
    EXPECT_NEAR(cfg.params.delta1_ghz, 2.62, 1e-12);
    EXPECT_NEAR(cfg.params.eps0_uev, 50.0, 1e-12);
    EXPECT_DOUBLE_EQ(cfg.params.delta_el_ghz, 52.7);
    EXPECT_DOUBLE_EQ(cfg.optimizer.max_field_uev, 5000.0);
    EXPECT_THROW(parse_config("t_final = 1.0 GHz\n"), ConfigError);
    EXPECT_THROW(parse_config("eps0 = 5 furlongs\n"), ConfigError);
}

TEST(config, errors_name_key_and_line) {
    try {
        parse_config("eta = -1\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key(), "eta");
        EXPECT_EQ(e.line(), 1u);
        EXPECT_NE(std::string(e.what()).find("eta"), std::string::npos);
    }
    try {
        parse_config("eta = 1\n\n  bogus = 3\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.line(), 3u);
        const std::string msg = e.what();
        EXPECT_NE(msg.find("bogus"), std::string::npos);
        for (const auto key : config_keys()) {
            EXPECT_NE(msg.find(std::string(key)), std::string::npos) << key;
        }
    }
    EXPECT_THROW(parse_config("eta = 1\neta = 2\n"), ConfigError);
    EXPECT_THROW(parse_config("eta\n"), ConfigError);
    EXPECT_THROW(parse_config("eta =\n"), ConfigError);
    EXPECT_THROW(parse_config("max_iterations = 1.5\n"), ConfigError);
    EXPECT_THROW(parse_config("field_sign = sideways\n"), ConfigError);
    EXPECT_THROW(parse_config("target_infidelity = 0\n"), ConfigError);
}

TEST(config, gates) {
    const RunConfig cfg = parse_config("gates = P1, UFT ,UFTdag\n");
    ASSERT_EQ(cfg.gates.size(), 3u);
    EXPECT_EQ(cfg.gates[0], GateId::kPi1);
    EXPECT_EQ(cfg.gates[1], GateId::kQft);
    EXPECT_EQ(cfg.gates[2], GateId::kQftDagger);
    EXPECT_THROW(parse_config("gates = P1,P1\n"), ConfigError);
    EXPECT_THROW(parse_config("gates = P9\n"), ConfigError);
}

TEST(config, text_round_trip) {
    RunConfig cfg = parse_config(
        "delta3 = 4.7\neps0 = 37.25\nfield_sign = physical\nt_final = 1.0\nn_steps = 777\neta = 3.3\n"
        "max_iterations = 12\nfluctuation_window = 5\nstop_infidelity = 1e-7\ntarget_infidelity = 1e-3\n"
        "max_field = 900\neta_backoffs = 2\ngates = P2,P5\noutput_dir = some/dir\nworkers = 3\n");
    const RunConfig back = parse_config(to_config_text(cfg));
    EXPECT_EQ(to_config_text(back), to_config_text(cfg));
    EXPECT_DOUBLE_EQ(back.params.delta3_ghz, 4.7);
    EXPECT_EQ(back.field_sign, FieldSign::kPhysical);
    EXPECT_EQ(back.optimizer.grid, (TimeGrid{1.0, 777}));
    EXPECT_DOUBLE_EQ(back.optimizer.eta, 3.3);
    EXPECT_EQ(back.optimizer.max_iterations, 12u);
    EXPECT_EQ(back.optimizer.max_eta_backoffs, 2);
    EXPECT_EQ(back.gates, cfg.gates);
    EXPECT_EQ(back.output_dir, cfg.output_dir);
    EXPECT_EQ(back.workers, 3u);
}

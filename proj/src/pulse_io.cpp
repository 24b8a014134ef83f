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

#include "hqpa/pulse_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hqpa/errors.hpp"

namespace hqpa {

namespace {

constexpr double kSpacingTolerance = 1e-9;

double parse_number(std::string_view text, std::size_t line_no) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw FormatError("pulse line " + std::to_string(line_no) + ": bad number '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

void export_pulse(std::ostream &out, const ControlField &field) {
    field.validate();
    out << "# E(t) = eps(t) - eps0 in ueV, constant over each step; t_ns is the step midpoint; T = "
        << std::setprecision(17) << field.grid.t_final_ns << " ns, n_steps = " << field.grid.n_steps << '\n';
    out << "t_ns,E_ueV\n";
    out << std::setprecision(12);
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        out << field.grid.midpoint(k) << ',' << field.values[k] << '\n';
    }
}

void export_pulse(const std::filesystem::path &path, const ControlField &field) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    export_pulse(out, field);
}

ControlField import_pulse(std::istream &in, const std::optional<TimeGrid> &expected) {
    std::vector<double> times;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != "t_ns,E_ueV") {
                throw FormatError("pulse line " + std::to_string(line_no) + ": expected header 't_ns,E_ueV'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw FormatError("pulse line " + std::to_string(line_no) + ": expected two columns");
        }
        times.push_back(parse_number(std::string_view(line).substr(0, comma), line_no));
        values.push_back(parse_number(std::string_view(line).substr(comma + 1), line_no));
    }
    if (!header_seen) {
        throw FormatError("pulse file has no header");
    }
    if (times.empty()) {
        throw FormatError("pulse file has no samples");
    }

    const std::size_t n = times.size();
    const double dt = n == 1 ? 2.0 * times.front() : (times.back() - times.front()) / static_cast<double>(n - 1);
    if (!(dt > 0.0)) {
        throw FormatError("pulse time column is not increasing");
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double expected_t = dt * (static_cast<double>(k) + 0.5);
        if (std::abs(times[k] - expected_t) > kSpacingTolerance) {
            throw FormatError("pulse time column is not a uniform midpoint grid at row " + std::to_string(k + 1));
        }
    }
    TimeGrid grid{dt * static_cast<double>(n), n};
    if (expected) {
        if (expected->n_steps != n || std::abs(expected->t_final_ns - grid.t_final_ns) > kSpacingTolerance) {
            throw DimensionError("pulse grid does not match the expected grid");
        }
        grid = *expected;
    }
    ControlField field{grid, std::move(values)};
    field.validate();
    return field;
}

ControlField import_pulse(const std::filesystem::path &path, const std::optional<TimeGrid> &expected) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open pulse file " + path.string());
    }
    return import_pulse(in, expected);
}

}  // namespace hqpa

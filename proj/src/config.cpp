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

#include "hqpa/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "hqpa/errors.hpp"

namespace hqpa {

namespace {

enum class Dimension { kNone, kTime, kEnergy, kFrequency };

struct UnitScale {
    std::string_view suffix;
    double scale;
};

// Canonical units: ns, ueV, GHz.
const std::map<Dimension, std::vector<UnitScale>> &unit_table() {
    static const std::map<Dimension, std::vector<UnitScale>> table{
        {Dimension::kNone, {}},
        {Dimension::kTime, {{"ns", 1.0}, {"ps", 1e-3}, {"fs", 1e-6}, {"us", 1e3}}},
        {Dimension::kEnergy, {{"ueV", 1.0}, {"\xC2\xB5" "eV", 1.0}, {"neV", 1e-3}, {"meV", 1e3}}},
        {Dimension::kFrequency, {{"GHz", 1.0}, {"MHz", 1e-3}, {"THz", 1e3}}},
    };
    return table;
}

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

struct Entry {
    std::string_view key;
    std::string value;
    std::size_t line;
};

ConfigError value_error(const Entry &e, const std::string &what) {
    return ConfigError("line " + std::to_string(e.line) + ": key '" + std::string(e.key) + "': " + what, e.line,
                       std::string(e.key));
}

double parse_quantity(const Entry &e, Dimension dim) {
    const std::string_view text = e.value;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data()) {
        throw value_error(e, "expected a number, got '" + e.value + "'");
    }
    const std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr)));
    if (!suffix.empty()) {
        const auto &units = unit_table().at(dim);
        const auto it = std::find_if(units.begin(), units.end(), [&](const UnitScale &u) { return u.suffix == suffix; });
        if (it == units.end()) {
            throw value_error(e, "unit '" + std::string(suffix) + "' not allowed here");
        }
        value *= it->scale;
    }
    if (!std::isfinite(value)) {
        throw value_error(e, "value is not finite");
    }
    return value;
}

std::size_t parse_count(const Entry &e) {
    unsigned long long value = 0;
    const char *end = e.value.data() + e.value.size();
    const auto [ptr, ec] = std::from_chars(e.value.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw value_error(e, "expected a non-negative integer, got '" + e.value + "'");
    }
    return static_cast<std::size_t>(value);
}

std::vector<GateId> parse_gates(const Entry &e) {
    std::vector<GateId> gates;
    std::string_view rest = e.value;
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view token = trim(rest.substr(0, comma));
        const auto gate = parse_gate_name(token);
        if (!gate) {
            throw value_error(e, "unknown gate '" + std::string(token) + "' (expected UFT, P1..P6, UFTdag)");
        }
        if (std::find(gates.begin(), gates.end(), *gate) != gates.end()) {
            throw value_error(e, "gate '" + std::string(token) + "' listed twice");
        }
        gates.push_back(*gate);
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    return gates;
}

// Shortest text that parses back to the same double.
std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), result.ptr);
}

}  // namespace

const std::vector<std::string_view> &config_keys() {
    static const std::vector<std::string_view> keys{
        "delta1",       "delta2",         "delta3",     "delta4",         "delta_el",
        "delta_er",     "eps0",           "field_sign", "t_final",        "n_steps",
        "eta",          "max_iterations", "fluctuation_window", "stop_infidelity",
        "target_infidelity", "max_field", "eta_backoffs", "gates",        "output_dir",
        "workers",
    };
    return keys;
}

RunConfig parse_config(std::string_view text) {
    std::vector<Entry> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto &keys = config_keys();
        const auto known = std::find(keys.begin(), keys.end(), key);
        if (known == keys.end()) {
            std::string list;
            for (const auto k : keys) {
                list += (list.empty() ? "" : ", ") + std::string(k);
            }
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) +
                                  "'; valid keys: " + list,
                              line_no, std::string(key));
        }
        if (value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) + "' has no value",
                              line_no, std::string(key));
        }
        for (const auto &prev : entries) {
            if (prev.key == *known) {
                throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) +
                                      "' repeats line " + std::to_string(prev.line),
                                  line_no, std::string(key));
            }
        }
        entries.push_back({*known, std::string(value), line_no});
    }

    RunConfig cfg;
    double t_final = cfg.optimizer.grid.t_final_ns;
    std::size_t n_steps = 0;
    for (const auto &e : entries) {
        const auto require = [&e](bool ok, const char *what) {
            if (!ok) {
                throw value_error(e, what);
            }
        };
        if (e.key == "delta1") {
            cfg.params.delta1_ghz = parse_quantity(e, Dimension::kFrequency);
        } else if (e.key == "delta2") {
            cfg.params.delta2_ghz = parse_quantity(e, Dimension::kFrequency);
        } else if (e.key == "delta3") {
            cfg.params.delta3_ghz = parse_quantity(e, Dimension::kFrequency);
        } else if (e.key == "delta4") {
            cfg.params.delta4_ghz = parse_quantity(e, Dimension::kFrequency);
        } else if (e.key == "delta_el") {
            cfg.params.delta_el_ghz = parse_quantity(e, Dimension::kFrequency);
        } else if (e.key == "delta_er") {
            cfg.params.delta_er_ghz = parse_quantity(e, Dimension::kFrequency);
        } else if (e.key == "eps0") {
            cfg.params.eps0_uev = parse_quantity(e, Dimension::kEnergy);
        } else if (e.key == "field_sign") {
            require(e.value == "literal" || e.value == "physical", "must be 'literal' or 'physical'");
            cfg.field_sign = e.value == "literal" ? FieldSign::kLiteral : FieldSign::kPhysical;
        } else if (e.key == "t_final") {
            t_final = parse_quantity(e, Dimension::kTime);
            require(t_final > 0.0, "must be positive");
        } else if (e.key == "n_steps") {
            n_steps = parse_count(e);
        } else if (e.key == "eta") {
            cfg.optimizer.eta = parse_quantity(e, Dimension::kNone);
            require(cfg.optimizer.eta > 0.0, "must be positive");
        } else if (e.key == "max_iterations") {
            cfg.optimizer.max_iterations = parse_count(e);
        } else if (e.key == "fluctuation_window") {
            cfg.optimizer.fluctuation_window = parse_count(e);
            require(cfg.optimizer.fluctuation_window >= 1, "must be at least 1");
        } else if (e.key == "stop_infidelity") {
            cfg.optimizer.stop_infidelity = parse_quantity(e, Dimension::kNone);
            require(cfg.optimizer.stop_infidelity >= 0.0 && cfg.optimizer.stop_infidelity < 1.0,
                    "must lie in [0, 1)");
        } else if (e.key == "target_infidelity") {
            cfg.target_infidelity = parse_quantity(e, Dimension::kNone);
            require(cfg.target_infidelity > 0.0 && cfg.target_infidelity <= 1.0, "must lie in (0, 1]");
        } else if (e.key == "max_field") {
            cfg.optimizer.max_field_uev = parse_quantity(e, Dimension::kEnergy);
            require(cfg.optimizer.max_field_uev > 0.0, "must be positive");
        } else if (e.key == "eta_backoffs") {
            const std::size_t n = parse_count(e);
            require(n <= 60, "must be at most 60");
            cfg.optimizer.max_eta_backoffs = static_cast<int>(n);
        } else if (e.key == "gates") {
            cfg.gates = parse_gates(e);
        } else if (e.key == "output_dir") {
            cfg.output_dir = e.value;
        } else if (e.key == "workers") {
            cfg.workers = parse_count(e);
        }
    }
    cfg.optimizer.grid = n_steps == 0 ? TimeGrid::with_default_resolution(t_final) : TimeGrid{t_final, n_steps};
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string to_config_text(const RunConfig &cfg) {
    std::ostringstream os;
    const auto &p = cfg.params;
    const auto &o = cfg.optimizer;
    os << "delta1 = " << format_double(p.delta1_ghz) << "GHz\n";
    os << "delta2 = " << format_double(p.delta2_ghz) << "GHz\n";
    os << "delta3 = " << format_double(p.delta3_ghz) << "GHz\n";
    os << "delta4 = " << format_double(p.delta4_ghz) << "GHz\n";
    os << "delta_el = " << format_double(p.delta_el_ghz) << "GHz\n";
    os << "delta_er = " << format_double(p.delta_er_ghz) << "GHz\n";
    os << "eps0 = " << format_double(p.eps0_uev) << "ueV\n";
    os << "field_sign = " << (cfg.field_sign == FieldSign::kLiteral ? "literal" : "physical") << '\n';
    os << "t_final = " << format_double(o.grid.t_final_ns) << "ns\n";
    os << "n_steps = " << o.grid.n_steps << '\n';
    os << "eta = " << format_double(o.eta) << '\n';
    os << "max_iterations = " << o.max_iterations << '\n';
    os << "fluctuation_window = " << o.fluctuation_window << '\n';
    os << "stop_infidelity = " << format_double(o.stop_infidelity) << '\n';
    os << "target_infidelity = " << format_double(cfg.target_infidelity) << '\n';
    os << "max_field = " << format_double(o.max_field_uev) << "ueV\n";
    os << "eta_backoffs = " << o.max_eta_backoffs << '\n';
    os << "gates = ";
    for (std::size_t i = 0; i < cfg.gates.size(); ++i) {
        os << (i ? "," : "") << gate_name(cfg.gates[i]);
    }
    os << '\n';
    os << "output_dir = " << cfg.output_dir.string() << '\n';
    os << "workers = " << cfg.workers << '\n';
    return os.str();
}

}  // namespace hqpa

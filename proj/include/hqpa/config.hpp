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

#ifndef HQPA_CONFIG_HPP
#define HQPA_CONFIG_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hqpa/hybrid_model.hpp"
#include "hqpa/qpa_gates.hpp"
#include "hqpa/tbqcp.hpp"

namespace hqpa {

struct RunConfig {
    HybridParams params;
    FieldSign field_sign = FieldSign::kLiteral;
    OptimizerConfig optimizer;
    std::vector<GateId> gates{kAllGates.begin(), kAllGates.end()};
    /// A gate whose mean infidelity ends above this value fails the run.
    double target_infidelity = 5e-4;
    std::filesystem::path output_dir = "hqpa_out";
    /// Gate optimizations run concurrently on this many threads; 0 means hardware concurrency.
    std::size_t workers = 0;
};

/// Keys accepted by parse_config, in documentation order.
const std::vector<std::string_view> &config_keys();

/// Parses the flat `key = value` format. `#` starts a comment; numbers may carry unit
/// suffixes (`1.3ns`, `1300ps`, `50ueV`, `0.05meV`, `2.62GHz`, `2620MHz`). Missing keys keep
/// their defaults. Throws ConfigError naming the line or the key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path &path);

/// Renders a config that parse_config reads back to an identical RunConfig.
std::string to_config_text(const RunConfig &config);

}  // namespace hqpa

#endif  // HQPA_CONFIG_HPP

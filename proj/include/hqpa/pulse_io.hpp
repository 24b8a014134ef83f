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

#ifndef HQPA_PULSE_IO_HPP
#define HQPA_PULSE_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "hqpa/propagation.hpp"

namespace hqpa {

/// Writes `t_ns,E_ueV` rows (t at step midpoints, 12 significant digits) after a `#` comment line.
void export_pulse(std::ostream &out, const ControlField &field);
void export_pulse(const std::filesystem::path &path, const ControlField &field);

/// Reads a pulse written by export_pulse. The grid is rebuilt from the time column; when
/// `expected` is given the rebuilt grid must match it (n_steps exactly, duration to 1e-9 ns)
/// and the returned field carries `expected` verbatim.
/// Throws FormatError on malformed rows or time spacing that is not uniform to 1e-9 ns.
ControlField import_pulse(std::istream &in, const std::optional<TimeGrid> &expected = std::nullopt);
ControlField import_pulse(const std::filesystem::path &path,
                          const std::optional<TimeGrid> &expected = std::nullopt);

}  // namespace hqpa

#endif  // HQPA_PULSE_IO_HPP

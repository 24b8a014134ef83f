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

#ifndef HQPA_UNITS_HPP
#define HQPA_UNITS_HPP

#include <numbers>

namespace hqpa {

// Internal unit system: energies in ueV, times in ns, linear frequencies in GHz.

/// Reduced Planck constant in ueV*ns.
inline constexpr double kHbar = 0.6582119569;
/// Planck constant in ueV/GHz (h = 2*pi*hbar).
inline constexpr double kPlanck = 2.0 * std::numbers::pi * kHbar;

enum class UnitConversion {
    kGHzToMicroeV,       // h*f
    kMicroeVToGHz,       // E/h
    kMicroeVToRadPerNs,  // E/hbar
    kRadPerNsToMicroeV,  // hbar*omega
};

constexpr double convert_units(double value, UnitConversion direction) {
    switch (direction) {
        case UnitConversion::kGHzToMicroeV:
            return value * kPlanck;
        case UnitConversion::kMicroeVToGHz:
            return value / kPlanck;
        case UnitConversion::kMicroeVToRadPerNs:
            return value / kHbar;
        case UnitConversion::kRadPerNsToMicroeV:
            return value * kHbar;
    }
    return value;
}

}  // namespace hqpa

#endif  // HQPA_UNITS_HPP

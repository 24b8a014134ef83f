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

// Independent reference computations used by the test suites. Nothing here calls into
// the library's eigen solver or propagator.

#ifndef HQPA_TESTS_ORACLES_HPP
#define HQPA_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace hqpa::oracle {

/// Coefficients c[0..4] of det(x I - A) = x^4 + c[1] x^3 + c[2] x^2 + c[3] x + c[4],
/// by the Faddeev-LeVerrier recursion.
inline std::array<double, 5> characteristic_polynomial(const Eigen::Matrix4d &a) {
    std::array<double, 5> c{1.0, 0.0, 0.0, 0.0, 0.0};
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (int k = 1; k <= 4; ++k) {
        m = a * m + c[static_cast<std::size_t>(k - 1)] * Eigen::Matrix4d::Identity();
        c[static_cast<std::size_t>(k)] = -(a * m).trace() / k;
    }
    return c;
}

inline double eval_poly(const std::array<double, 5> &c, double x) {
    return (((x + c[1]) * x + c[2]) * x + c[3]) * x + c[4];
}

/// Real roots of the characteristic polynomial of a symmetric 4x4 matrix, ascending.
/// Scans the Gershgorin interval for sign changes and refines each bracket by bisection.
inline std::vector<double> symmetric_eigenvalues_by_charpoly(const Eigen::Matrix4d &a,
                                                              int scan_points = 400000) {
    const auto c = characteristic_polynomial(a);
    double lo = 0.0;
    double hi = 0.0;
    for (int i = 0; i < 4; ++i) {
        double radius = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (j != i) {
                radius += std::abs(a(i, j));
            }
        }
        lo = std::min(lo, a(i, i) - radius);
        hi = std::max(hi, a(i, i) + radius);
    }
    lo -= 1.0;
    hi += 1.0;
    std::vector<double> roots;
    double x0 = lo;
    double f0 = eval_poly(c, x0);
    for (int s = 1; s <= scan_points; ++s) {
        const double x1 = lo + (hi - lo) * s / scan_points;
        const double f1 = eval_poly(c, x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if (f0 * f1 < 0.0) {
            double a0 = x0;
            double b0 = x1;
            double fa = f0;
            for (int it = 0; it < 200 && b0 - a0 > 1e-14 * std::max(1.0, std::abs(a0)); ++it) {
                const double mid = 0.5 * (a0 + b0);
                const double fm = eval_poly(c, mid);
                if (fa * fm <= 0.0) {
                    b0 = mid;
                } else {
                    a0 = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a0 + b0));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

/// Hand-built Hamiltonian entries for the default parameters: h * f with h = 4.135667696 ueV/GHz.
inline constexpr double kPlanckCodata = 4.135667696;

inline Eigen::Vector4cd random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i) {
        v(i) = {n(rng), n(rng)};
    }
    return v.normalized();
}

}  // namespace hqpa::oracle

#endif  // HQPA_TESTS_ORACLES_HPP

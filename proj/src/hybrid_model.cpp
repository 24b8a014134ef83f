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

#include "hqpa/hybrid_model.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "hqpa/errors.hpp"
#include "hqpa/units.hpp"

namespace hqpa {

void HybridParams::validate() const {
    const std::array<std::pair<const char *, double>, 7> fields{{
        {"delta1", delta1_ghz},
        {"delta2", delta2_ghz},
        {"delta3", delta3_ghz},
        {"delta4", delta4_ghz},
        {"delta_el", delta_el_ghz},
        {"delta_er", delta_er_ghz},
        {"eps0", eps0_uev},
    }};
    for (const auto &[name, value] : fields) {
        if (!std::isfinite(value)) {
            throw InvalidParameterError(std::string("hybrid parameter '") + name + "' is not finite");
        }
    }
}

Matrix4 build_hamiltonian(const HybridParams &params, double eps_uev) {
    params.validate();
    if (!std::isfinite(eps_uev)) {
        throw InvalidParameterError("detuning is not finite");
    }
    const auto energy = [](double f_ghz) { return convert_units(f_ghz, UnitConversion::kGHzToMicroeV); };
    const double d1 = energy(params.delta1_ghz);
    const double d2 = energy(params.delta2_ghz);
    const double d3 = energy(params.delta3_ghz);
    const double d4 = energy(params.delta4_ghz);
    const double el = energy(params.delta_el_ghz);
    const double er = energy(params.delta_er_ghz);
    const double half = eps_uev / 2.0;

    Matrix4 h;
    // clang-format off
    h <<  half,  0.0,        d1,    -d2,
          0.0,   half + el, -d3,     d4,
          d1,   -d3,        -half,   0.0,
         -d2,    d4,         0.0,   -half + er;
    // clang-format on
    return h;
}

Matrix4 detuning_operator() {
    return Vector4(0.5, 0.5, -0.5, -0.5).asDiagonal();
}

Eigensystem eigendecompose(const Matrix4 &h) {
    if (!h.allFinite()) {
        throw ContractViolation("eigendecompose: matrix has non-finite entries");
    }
    if ((h - h.transpose()).cwiseAbs().maxCoeff() >= 1e-12) {
        throw ContractViolation("eigendecompose: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix4> solver(h);
    if (solver.info() != Eigen::Success) {
        throw ContractViolation("eigendecompose: solver did not converge");
    }
    Eigensystem out{solver.eigenvalues(), solver.eigenvectors()};
    for (int j = 0; j < 4; ++j) {
        Eigen::Index arg = 0;
        out.vectors.col(j).cwiseAbs().maxCoeff(&arg);
        if (out.vectors(arg, j) < 0.0) {
            out.vectors.col(j) *= -1.0;
        }
    }
    return out;
}

Matrix4 ModelBasis::coupling() const {
    return sign == FieldSign::kLiteral ? mu : Matrix4(-mu);
}

Matrix4 ModelBasis::generator(double e_value) const {
    Matrix4 g = -e_value * coupling();
    g.diagonal() += h0_diag;
    return g;
}

int ModelBasis::index_of(int label) const {
    if (label < 1 || label > 4) {
        throw std::out_of_range("logical label must be in 1..4, got " + std::to_string(label));
    }
    return label_map[static_cast<std::size_t>(label - 1)];
}

Vector4 ModelBasis::basis_state(int label) const {
    Vector4 v = Vector4::Zero();
    v(index_of(label)) = 1.0;
    return v;
}

ModelBasis build_model_basis(const HybridParams &params, FieldSign sign) {
    const Matrix4 h_ref = build_hamiltonian(params, params.eps0_uev);
    const Eigensystem eig = eigendecompose(h_ref);
    for (int j = 0; j + 1 < 4; ++j) {
        if (eig.values(j + 1) - eig.values(j) < kDegeneracyTolerance) {
            throw DegeneracyError("reference Hamiltonian has degenerate levels " + std::to_string(j) +
                                  " and " + std::to_string(j + 1));
        }
    }
    ModelBasis basis;
    basis.params = params;
    basis.h0_diag = eig.values;
    basis.z = eig.vectors;
    Matrix4 mu = eig.vectors.transpose() * detuning_operator() * eig.vectors;
    basis.mu = 0.5 * (mu + mu.transpose());
    basis.sign = sign;
    return basis;
}

std::vector<SpectrumRow> energy_spectrum_sweep(const HybridParams &params, double eps_min,
                                               double eps_max, std::size_t n_points) {
    params.validate();
    if (!std::isfinite(eps_min) || !std::isfinite(eps_max)) {
        throw InvalidParameterError("sweep bounds must be finite");
    }
    if (n_points == 0) {
        throw InvalidParameterError("sweep needs at least one point");
    }
    if (n_points >= 2 && !(eps_min < eps_max)) {
        throw InvalidParameterError("sweep requires eps_min < eps_max");
    }
    std::vector<SpectrumRow> rows;
    rows.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double eps =
            n_points == 1 ? eps_min
                          : eps_min + (eps_max - eps_min) * static_cast<double>(i) /
                                          static_cast<double>(n_points - 1);
        const Eigensystem eig = eigendecompose(build_hamiltonian(params, eps));
        SpectrumRow row{eps, {}};
        for (int j = 0; j < 4; ++j) {
            row.energies_uev[static_cast<std::size_t>(j)] = eig.values(j);
        }
        rows.push_back(row);
    }
    return rows;
}

void write_spectrum_sweep_csv(std::ostream &out, const std::vector<SpectrumRow> &rows) {
    out << "eps_ueV,E1_ueV,E2_ueV,E3_ueV,E4_ueV\n";
    out << std::setprecision(12);
    for (const auto &row : rows) {
        out << row.eps_uev;
        for (double e : row.energies_uev) {
            out << ',' << e;
        }
        out << '\n';
    }
}

}  // namespace hqpa

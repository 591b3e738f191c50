// Copyright 2026 The QCNN-BP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qcnn/sim/density_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace qcnn::sim {

namespace {

Mat2 conj(const Mat2 &m) {
    return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])};
}

Mat4 conj(const Mat4 &m) {
    Mat4 out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i] = std::conj(m[i]);
    }
    return out;
}

} // namespace

void NoiseConfig::validate() const {
    if (!(p >= 0.0 && p <= 0.75)) {
        throw ConfigError("depolarizing probability " + std::to_string(p) +
                          " outside [0, 0.75]");
    }
}

DensityMatrix DensityMatrix::from_state(const StateVector &state) {
    if (state.num_qubits() > kMaxDensityQubits) {
        throw ConfigError("density matrices are limited to " + std::to_string(kMaxDensityQubits) +
                          " qubits");
    }
    const auto amps = state.amplitudes();
    const std::size_t dim = amps.size();
    std::vector<Complex> e(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            e[r * dim + c] = amps[r] * std::conj(amps[c]);
        }
    }
    return {state.num_qubits(), std::move(e)};
}

DensityMatrix DensityMatrix::from_elements(std::size_t num_qubits, std::vector<Complex> elements) {
    if (num_qubits < 1 || num_qubits > kMaxDensityQubits) {
        throw ConfigError("density qubit count " + std::to_string(num_qubits) + " out of range");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (elements.size() != dim * dim) {
        throw DimensionError("density element count does not match 4^n");
    }
    DensityMatrix rho(num_qubits, std::move(elements));
    if (rho.hermiticity_error() > 1e-10) {
        throw ConfigError("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-10) {
        throw ConfigError("density matrix trace is not 1");
    }
    return rho;
}

void DensityMatrix::apply(const GateOp &op, std::optional<double> angle) {
    op.validate(num_qubits_);
    const std::size_t n2 = 2 * num_qubits_;
    const std::size_t n = num_qubits_;
    switch (op.kind) {
    case GateKind::kRX:
    case GateKind::kRY:
    case GateKind::kRZ:
        apply_1q(op.qubits[0], rotation_matrix(op.kind, *resolve_angle(op, angle)));
        return;
    case GateKind::kCZ:
        kernels::apply_cz(elements_, n2, op.qubits[0], op.qubits[1]);
        kernels::apply_cz(elements_, n2, n + op.qubits[0], n + op.qubits[1]);
        return;
    case GateKind::kCNOT:
        kernels::apply_cnot(elements_, n2, op.qubits[0], op.qubits[1]);
        kernels::apply_cnot(elements_, n2, n + op.qubits[0], n + op.qubits[1]);
        return;
    }
}

void DensityMatrix::apply_1q(std::size_t q, const Mat2 &u) {
    if (q >= num_qubits_) {
        throw DimensionError("density apply_1q: qubit out of range");
    }
    kernels::apply_1q(elements_, 2 * num_qubits_, q, u);
    kernels::apply_1q(elements_, 2 * num_qubits_, num_qubits_ + q, conj(u));
}

void DensityMatrix::apply_2q(std::size_t qa, std::size_t qb, const Mat4 &u) {
    if (qa >= num_qubits_ || qb >= num_qubits_ || qa == qb) {
        throw DimensionError("density apply_2q: bad qubit pair");
    }
    kernels::apply_2q(elements_, 2 * num_qubits_, qa, qb, u);
    kernels::apply_2q(elements_, 2 * num_qubits_, num_qubits_ + qa, num_qubits_ + qb, conj(u));
}

void DensityMatrix::depolarize(std::size_t q, double p) {
    NoiseConfig{p, true}.validate();
    if (q >= num_qubits_) {
        throw DimensionError("depolarize: qubit out of range");
    }
    // Sum_k s_k rho s_k = 2 (Tr_q rho) (x) I - rho, so the channel reduces to
    // (1 - 4p/3) rho + (2p/3) (Tr_q rho) (x) I on each 2x2 block of qubit q.
    const double keep = 1.0 - 4.0 * p / 3.0;
    const double mix = 2.0 * p / 3.0;
    const std::size_t dim = dimension();
    const std::size_t m = std::size_t{1} << bit_position(num_qubits_, q);
    for (std::size_t r = 0; r < dim; ++r) {
        if (r & m) {
            continue;
        }
        for (std::size_t c = 0; c < dim; ++c) {
            if (c & m) {
                continue;
            }
            Complex &e00 = elements_[r * dim + c];
            Complex &e01 = elements_[r * dim + (c | m)];
            Complex &e10 = elements_[(r | m) * dim + c];
            Complex &e11 = elements_[(r | m) * dim + (c | m)];
            const Complex t = e00 + e11;
            e00 = keep * e00 + mix * t;
            e11 = keep * e11 + mix * t;
            e01 *= keep;
            e10 *= keep;
        }
    }
}

Complex DensityMatrix::trace() const {
    Complex t = 0.0;
    const std::size_t dim = dimension();
    for (std::size_t i = 0; i < dim; ++i) {
        t += elements_[i * dim + i];
    }
    return t;
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double acc = 0.0;
    for (const auto &e : elements_) {
        acc += std::norm(e);
    }
    return acc;
}

double DensityMatrix::hermiticity_error() const {
    const std::size_t dim = dimension();
    double err = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r; c < dim; ++c) {
            err = std::max(err, std::abs(elements_[r * dim + c] - std::conj(elements_[c * dim + r])));
        }
    }
    return err;
}

DensityMatrix to_density(const StateVector &state) { return DensityMatrix::from_state(state); }

DensityMatrix apply_depolarizing(DensityMatrix rho, std::size_t qubit, double p) {
    rho.depolarize(qubit, p);
    return rho;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> discard) {
    const std::size_t n = rho.num_qubits();
    std::vector<bool> dropped(n, false);
    for (auto q : discard) {
        if (q >= n) {
            throw DimensionError("partial_trace: qubit " + std::to_string(q) + " out of range");
        }
        dropped[q] = true;
    }
    std::vector<std::size_t> keep_bits;
    std::vector<std::size_t> drop_bits;
    for (std::size_t q = 0; q < n; ++q) {
        (dropped[q] ? drop_bits : keep_bits).push_back(bit_position(n, q));
    }
    if (keep_bits.empty()) {
        throw ConfigError("partial_trace: cannot discard every qubit");
    }
    if (drop_bits.empty()) {
        return rho;
    }
    const std::size_t nk = keep_bits.size();
    const std::size_t kdim = std::size_t{1} << nk;
    const std::size_t ddim = std::size_t{1} << drop_bits.size();

    // scatter[x] places the bits of local index x at the original positions;
    // local qubit order matches original qubit order (MSB first).
    auto scatter = [](const std::vector<std::size_t> &bits, std::size_t dim) {
        std::vector<std::size_t> out(dim, 0);
        const std::size_t k = bits.size();
        for (std::size_t x = 0; x < dim; ++x) {
            std::size_t full = 0;
            for (std::size_t j = 0; j < k; ++j) {
                if (x & (std::size_t{1} << (k - 1 - j))) {
                    full |= std::size_t{1} << bits[j];
                }
            }
            out[x] = full;
        }
        return out;
    };
    const auto keep_map = scatter(keep_bits, kdim);
    const auto drop_map = scatter(drop_bits, ddim);

    const std::size_t dim = rho.dimension();
    const auto e = rho.elements();
    std::vector<Complex> out(kdim * kdim);
    for (std::size_t r = 0; r < kdim; ++r) {
        for (std::size_t c = 0; c < kdim; ++c) {
            Complex acc = 0.0;
            for (std::size_t d = 0; d < ddim; ++d) {
                acc += e[(keep_map[r] | drop_map[d]) * dim + (keep_map[c] | drop_map[d])];
            }
            out[r * kdim + c] = acc;
        }
    }
    return DensityMatrix::from_elements(nk, std::move(out));
}

double expectation_z(const DensityMatrix &rho, std::size_t qubit) {
    if (qubit >= rho.num_qubits()) {
        throw DimensionError("expectation_z: qubit out of range");
    }
    const std::size_t mask = std::size_t{1} << bit_position(rho.num_qubits(), qubit);
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        const double d = rho(i, i).real();
        acc += (i & mask) ? -d : d;
    }
    return acc;
}

double expectation_global_projector(const DensityMatrix &rho, std::span<const std::size_t> qubits) {
    if (qubits.empty()) {
        throw ConfigError("global projector needs a non-empty survivor set");
    }
    std::size_t mask = 0;
    for (auto q : qubits) {
        if (q >= rho.num_qubits()) {
            throw DimensionError("global projector: qubit out of range");
        }
        mask |= std::size_t{1} << bit_position(rho.num_qubits(), q);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        if ((i & mask) == 0) {
            acc += rho(i, i).real();
        }
    }
    return acc;
}

double min_eigenvalue(const DensityMatrix &rho) {
    const auto dim = static_cast<Eigen::Index>(rho.dimension());
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = rho(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

} // namespace qcnn::sim

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
#include "qcnn/tni/mps.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace qcnn::tni {

namespace {

using Matrix = Eigen::MatrixXcd;
using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Singular values below this fraction of the largest are treated as zero.
constexpr double kRankTolerance = 1e-12;
// Same cut on squared singular values for the Gram-matrix split, whose
// eigenvalues carry absolute noise near 1e-16 of the largest.
constexpr double kGramTolerance = 1e-15;

constexpr sim::Mat4 kSwap = {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};

struct Split {
    Matrix left;  // rows x k, orthonormal columns
    Matrix right; // k x cols
    double dropped = 0.0;
};

/// Accurate truncated SVD, used when compressing dense vectors.
Split svd_split(const Matrix &m, std::size_t chi) {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    Eigen::Index keep = 0;
    const double floor = s.size() > 0 ? s(0) * kRankTolerance : 0.0;
    while (keep < s.size() && static_cast<std::size_t>(keep) < chi && s(keep) > floor) {
        ++keep;
    }
    keep = std::max<Eigen::Index>(keep, 1);
    Split out;
    for (Eigen::Index i = keep; i < s.size(); ++i) {
        out.dropped += s(i) * s(i);
    }
    out.left = svd.matrixU().leftCols(keep);
    out.right = s.head(keep).cast<Complex>().asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    return out;
}

/// Truncated split through the eigenvectors of M M^dagger; several times
/// cheaper than an SVD at these sizes. right = U^dagger M, so no division
/// by small singular values occurs.
Split gram_split(const Matrix &m, std::size_t chi) {
    const Matrix gram = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    const auto &w = eig.eigenvalues();
    const Eigen::Index r = w.size();
    const double top = std::max(w(r - 1), 0.0);
    Eigen::Index keep = 0;
    while (keep < r && static_cast<std::size_t>(keep) < chi && w(r - 1 - keep) > top * kGramTolerance) {
        ++keep;
    }
    keep = std::max<Eigen::Index>(keep, 1);
    Split out;
    for (Eigen::Index i = 0; i < r - keep; ++i) {
        out.dropped += std::max(w(i), 0.0);
    }
    out.left = eig.eigenvectors().rightCols(keep).rowwise().reverse();
    out.right = out.left.adjoint() * m;
    return out;
}

/// Physical slice s of a site tensor as an (l x r) matrix.
Matrix slice(const SiteTensor &t, std::size_t s) {
    Matrix m(static_cast<Eigen::Index>(t.left), static_cast<Eigen::Index>(t.right));
    for (std::size_t l = 0; l < t.left; ++l) {
        for (std::size_t r = 0; r < t.right; ++r) {
            m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r)) = t.at(l, s, r);
        }
    }
    return m;
}

/// Rows (l, s), columns r.
Matrix as_left_matrix(const SiteTensor &t) {
    return Eigen::Map<const RowMajor>(t.data.data(), static_cast<Eigen::Index>(t.left * 2),
                                      static_cast<Eigen::Index>(t.right));
}

/// Rows l, columns (s, r).
Matrix as_right_matrix(const SiteTensor &t) {
    return Eigen::Map<const RowMajor>(t.data.data(), static_cast<Eigen::Index>(t.left),
                                      static_cast<Eigen::Index>(2 * t.right));
}

SiteTensor to_site(const Matrix &m, std::size_t left, std::size_t right) {
    SiteTensor t;
    t.left = left;
    t.right = right;
    t.data.resize(left * 2 * right);
    Eigen::Map<RowMajor>(t.data.data(), m.rows(), m.cols()) = m;
    return t;
}

SiteTensor from_left_matrix(const Matrix &m) {
    return to_site(m, static_cast<std::size_t>(m.rows()) / 2, static_cast<std::size_t>(m.cols()));
}

SiteTensor from_right_matrix(const Matrix &m) {
    return to_site(m, static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()) / 2);
}

sim::Mat4 swap_roles(const sim::Mat4 &u) { return sim::matmul(kSwap, sim::matmul(u, kSwap)); }

/// Left environments: env[k] contracts <bra|ket> over sites [0, k).
std::vector<Matrix> left_envs(std::span<const SiteTensor> bra, std::span<const SiteTensor> ket) {
    std::vector<Matrix> env;
    env.reserve(ket.size() + 1);
    env.push_back(Matrix::Ones(1, 1));
    for (std::size_t k = 0; k < ket.size(); ++k) {
        const auto &e = env.back();
        env.push_back(slice(bra[k], 0).adjoint() * e * slice(ket[k], 0) +
                      slice(bra[k], 1).adjoint() * e * slice(ket[k], 1));
    }
    return env;
}

/// Right environments: env[k] contracts sites [k, n).
std::vector<Matrix> right_envs(std::span<const SiteTensor> bra, std::span<const SiteTensor> ket) {
    const std::size_t n = ket.size();
    std::vector<Matrix> env(n + 1);
    env[n] = Matrix::Ones(1, 1);
    for (std::size_t k = n; k-- > 0;) {
        env[k] = slice(ket[k], 0) * env[k + 1] * slice(bra[k], 0).adjoint() +
                 slice(ket[k], 1) * env[k + 1] * slice(bra[k], 1).adjoint();
    }
    return env;
}

} // namespace

MpsState::MpsState(std::vector<SiteTensor> sites) : sites_(std::move(sites)) {
    site_of_.resize(sites_.size());
    qubit_at_.resize(sites_.size());
    std::iota(site_of_.begin(), site_of_.end(), std::size_t{0});
    std::iota(qubit_at_.begin(), qubit_at_.end(), std::size_t{0});
}

MpsState MpsState::from_vector(std::span<const Complex> amplitudes, std::size_t chi_cap) {
    if (chi_cap == 0) {
        throw ConfigError("mps_from_vector: chi_cap must be at least 1");
    }
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionError("mps_from_vector: length " + std::to_string(dim) + " is not a power of two >= 2");
    }
    double norm2 = 0.0;
    for (const auto &a : amplitudes) {
        norm2 += std::norm(a);
    }
    if (!(norm2 > 0.0)) {
        throw ConfigError("mps_from_vector: zero vector");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));

    std::vector<SiteTensor> sites;
    sites.reserve(n);
    // rem rows: open bond; columns: remaining physical indices, row-major.
    Matrix rem(1, static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        rem(0, static_cast<Eigen::Index>(i)) = amplitudes[i];
    }
    double dropped = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Eigen::Index bond = rem.rows();
        const Eigen::Index tail = rem.cols() / 2;
        Matrix m(bond * 2, tail);
        for (Eigen::Index l = 0; l < bond; ++l) {
            for (Eigen::Index s = 0; s < 2; ++s) {
                m.row(l * 2 + s) = rem.row(l).segment(s * tail, tail);
            }
        }
        auto split = svd_split(m, chi_cap);
        dropped += split.dropped;
        sites.push_back(from_left_matrix(split.left));
        rem = std::move(split.right);
    }
    Matrix last(rem.rows() * 2, 1);
    for (Eigen::Index l = 0; l < rem.rows(); ++l) {
        last(l * 2, 0) = rem(l, 0);
        last(l * 2 + 1, 0) = rem(l, 1);
    }
    sites.push_back(from_left_matrix(last / last.norm()));

    MpsState mps(std::move(sites));
    mps.center_ = n - 1;
    mps.truncated_weight_ = dropped / norm2;
    return mps;
}

MpsState MpsState::product(std::span<const std::array<Complex, 2>> sites) {
    if (sites.empty()) {
        throw DimensionError("product MPS needs at least one site");
    }
    std::vector<SiteTensor> tensors;
    for (const auto &s : sites) {
        const double nrm = std::sqrt(std::norm(s[0]) + std::norm(s[1]));
        if (!(nrm > 0.0)) {
            throw ConfigError("product MPS: zero site vector");
        }
        tensors.push_back(SiteTensor{1, 1, {s[0] / nrm, s[1] / nrm}});
    }
    return MpsState(std::move(tensors));
}

std::vector<std::size_t> MpsState::bond_dims() const {
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k + 1 < sites_.size(); ++k) {
        dims.push_back(sites_[k].right);
    }
    return dims;
}

std::size_t MpsState::max_bond() const {
    std::size_t best = 1;
    for (auto d : bond_dims()) {
        best = std::max(best, d);
    }
    return best;
}

std::vector<Complex> MpsState::to_vector() const {
    // Rows index the processed sites, columns the open bond.
    Matrix acc = Matrix::Ones(1, 1);
    for (const auto &t : sites_) {
        const Matrix a0 = slice(t, 0);
        const Matrix a1 = slice(t, 1);
        Matrix next(acc.rows() * 2, static_cast<Eigen::Index>(t.right));
        for (Eigen::Index p = 0; p < acc.rows(); ++p) {
            next.row(p * 2) = acc.row(p) * a0;
            next.row(p * 2 + 1) = acc.row(p) * a1;
        }
        acc = std::move(next);
    }
    const std::size_t n = sites_.size();
    std::vector<Complex> out(static_cast<std::size_t>(acc.rows()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t j = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if ((i >> (n - 1 - s)) & 1U) {
                j |= std::size_t{1} << (n - 1 - qubit_at_[s]);
            }
        }
        out[j] = acc(static_cast<Eigen::Index>(i), 0);
    }
    return out;
}

double MpsState::norm() const { return std::sqrt(left_envs(sites_, sites_).back()(0, 0).real()); }

std::vector<double> MpsState::expectations_z() const {
    const auto left = left_envs(sites_, sites_);
    const auto right = right_envs(sites_, sites_);
    const double total = left.back()(0, 0).real();
    std::vector<double> out(sites_.size());
    for (std::size_t k = 0; k < sites_.size(); ++k) {
        const Matrix a0 = slice(sites_[k], 0);
        const Matrix a1 = slice(sites_[k], 1);
        const Matrix z = a0.adjoint() * left[k] * a0 - a1.adjoint() * left[k] * a1;
        out[qubit_at_[k]] = (z.cwiseProduct(right[k + 1].transpose()).sum()).real() / total;
    }
    return out;
}

double MpsState::expectation_z(std::size_t qubit) const {
    if (qubit >= sites_.size()) {
        throw DimensionError("expectation_z: qubit out of range");
    }
    return expectations_z()[qubit];
}

void MpsState::apply_1q(std::size_t qubit, const sim::Mat2 &u) {
    if (qubit >= sites_.size()) {
        throw DimensionError("apply_1q: qubit out of range");
    }
    auto &t = sites_[site_of_[qubit]];
    for (std::size_t l = 0; l < t.left; ++l) {
        for (std::size_t r = 0; r < t.right; ++r) {
            const Complex a0 = t.at(l, 0, r);
            const Complex a1 = t.at(l, 1, r);
            t.at(l, 0, r) = u[0] * a0 + u[1] * a1;
            t.at(l, 1, r) = u[2] * a0 + u[3] * a1;
        }
    }
}

void MpsState::move_center(std::size_t site) {
    while (center_ < site) {
        const Matrix m = as_left_matrix(sites_[center_]);
        Eigen::HouseholderQR<Matrix> qr(m);
        const Eigen::Index k = std::min(m.rows(), m.cols());
        const Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), k);
        const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        sites_[center_] = from_left_matrix(q);
        sites_[center_ + 1] = from_right_matrix(r * as_right_matrix(sites_[center_ + 1]));
        ++center_;
    }
    while (center_ > site) {
        const Matrix m = as_right_matrix(sites_[center_]);
        Eigen::HouseholderQR<Matrix> qr(m.adjoint());
        const Eigen::Index k = std::min(m.rows(), m.cols());
        const Matrix q = qr.householderQ() * Matrix::Identity(m.cols(), k);
        const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        sites_[center_] = from_right_matrix(q.adjoint());
        sites_[center_ - 1] = from_left_matrix(as_left_matrix(sites_[center_ - 1]) * r.adjoint());
        --center_;
    }
}

void MpsState::apply_adjacent(std::size_t i, const sim::Mat4 &u, std::size_t chi) {
    move_center(i);
    const auto &a = sites_[i];
    const auto &b = sites_[i + 1];
    const auto L = static_cast<Eigen::Index>(a.left);
    const auto R = static_cast<Eigen::Index>(b.right);
    // theta(l s1, s2 r) = sum_m A(l s1, m) B(m, s2 r)
    const Matrix theta = as_left_matrix(a) * as_right_matrix(b);
    Matrix out(L * 2, 2 * R);
    for (Eigen::Index l = 0; l < L; ++l) {
        for (Eigen::Index r = 0; r < R; ++r) {
            const Complex in[4] = {theta(l * 2, r), theta(l * 2, R + r), theta(l * 2 + 1, r),
                                   theta(l * 2 + 1, R + r)};
            for (std::size_t row = 0; row < 4; ++row) {
                const Complex v = u[row * 4] * in[0] + u[row * 4 + 1] * in[1] + u[row * 4 + 2] * in[2] +
                                  u[row * 4 + 3] * in[3];
                out(l * 2 + static_cast<Eigen::Index>(row >> 1), static_cast<Eigen::Index>(row & 1U) * R + r) = v;
            }
        }
    }
    const double total = out.squaredNorm();
    auto split = gram_split(out, chi);
    if (split.dropped > 0.0) {
        truncated_weight_ += split.dropped / total;
        split.right *= std::sqrt(total) / split.right.norm();
    }
    sites_[i] = from_left_matrix(split.left);
    sites_[i + 1] = from_right_matrix(split.right);
    center_ = i + 1;
}

void MpsState::apply_adjacent(const AdjacentOp &op, std::size_t chi, bool inverse) {
    if (op.site + 1 >= sites_.size()) {
        throw DimensionError("apply_adjacent: site out of range");
    }
    apply_adjacent(op.site, inverse ? sim::adjoint(op.u) : op.u, chi);
    if (op.swap) {
        std::swap(qubit_at_[op.site], qubit_at_[op.site + 1]);
        site_of_[qubit_at_[op.site]] = op.site;
        site_of_[qubit_at_[op.site + 1]] = op.site + 1;
    }
}

std::vector<AdjacentOp> MpsState::apply_2q(std::size_t a, std::size_t b, const sim::Mat4 &u, std::size_t chi) {
    if (a >= sites_.size() || b >= sites_.size() || a == b) {
        throw DimensionError("apply_2q: invalid qubit pair");
    }
    if (chi == 0) {
        throw ConfigError("apply_2q: chi must be at least 1");
    }
    std::vector<AdjacentOp> done;
    while (site_of_[b] > site_of_[a] + 1) {
        done.push_back(AdjacentOp{site_of_[b] - 1, kSwap, true});
        apply_adjacent(done.back(), chi);
    }
    while (site_of_[b] + 1 < site_of_[a]) {
        done.push_back(AdjacentOp{site_of_[b], kSwap, true});
        apply_adjacent(done.back(), chi);
    }
    const bool a_first = site_of_[a] < site_of_[b];
    done.push_back(AdjacentOp{std::min(site_of_[a], site_of_[b]), a_first ? u : swap_roles(u), false});
    apply_adjacent(done.back(), chi);
    return done;
}

MpsState mps_from_vector(std::span<const Complex> amplitudes, std::size_t chi_cap) {
    return MpsState::from_vector(amplitudes, chi_cap);
}

sim::Mat4 two_site_transition(const MpsState &bra, const MpsState &ket, std::size_t qa, std::size_t qb) {
    const std::size_t n = ket.num_sites();
    if (bra.num_sites() != n || qa >= n || qb >= n) {
        throw DimensionError("two_site_transition: incompatible states");
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (bra.qubit_at(s) != ket.qubit_at(s)) {
            throw DimensionError("two_site_transition: layouts differ");
        }
    }
    const std::size_t sa = ket.site_of(qa);
    const std::size_t sb = ket.site_of(qb);
    if (sa + 1 != sb && sb + 1 != sa) {
        throw DimensionError("two_site_transition: qubits are not adjacent");
    }
    const std::size_t s = std::min(sa, sb);
    const auto left = left_envs(bra.sites().first(s), ket.sites().first(s));
    const auto right = right_envs(bra.sites().subspan(s + 2), ket.sites().subspan(s + 2));
    const auto &L = left.back();
    const Matrix Rt = right.front().transpose();
    Matrix kb[4];
    Matrix bb[4];
    for (std::size_t x = 0; x < 4; ++x) {
        kb[x] = slice(ket.sites()[s], x >> 1) * slice(ket.sites()[s + 1], x & 1U);
        bb[x] = (slice(bra.sites()[s], x >> 1) * slice(bra.sites()[s + 1], x & 1U)).adjoint() * L;
    }
    sim::Mat4 t{};
    for (std::size_t row = 0; row < 4; ++row) {
        for (std::size_t col = 0; col < 4; ++col) {
            t[row * 4 + col] = (bb[row] * kb[col]).cwiseProduct(Rt).sum();
        }
    }
    return sa < sb ? t : swap_roles(t);
}

Complex two_site_matrix_element(const MpsState &bra, const MpsState &ket, std::size_t qa, std::size_t qb,
                                const sim::Mat4 &op) {
    const auto t = two_site_transition(bra, ket, qa, qb);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        acc += op[i] * t[i];
    }
    return acc;
}

double reconstruction_error(const MpsState &mps, std::span<const Complex> amplitudes) {
    const auto v = mps.to_vector();
    if (v.size() != amplitudes.size()) {
        throw DimensionError("reconstruction_error: length mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += std::norm(v[i] - amplitudes[i]);
    }
    return std::sqrt(acc);
}

} // namespace qcnn::tni

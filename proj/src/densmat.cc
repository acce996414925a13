// Copyright 2026 The repmem Authors
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

#include "repmem/densmat.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace repmem {

namespace {

// Index offsets of every assignment of the listed qubits, first qubit most
// significant within the assignment.
std::vector<std::size_t> assignment_offsets(std::size_t num_qubits, std::span<const QubitIndex> qubits) {
    std::size_t k = qubits.size();
    std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
    for (std::size_t s = 0; s < offsets.size(); s++) {
        std::size_t off = 0;
        for (std::size_t j = 0; j < k; j++) {
            if ((s >> (k - 1 - j)) & 1) {
                off |= std::size_t{1} << (num_qubits - 1 - qubits[j]);
            }
        }
        offsets[s] = off;
    }
    return offsets;
}

std::vector<QubitIndex> complement(std::size_t num_qubits, std::span<const QubitIndex> qubits) {
    std::vector<bool> used(num_qubits, false);
    for (auto q : qubits) {
        used[q] = true;
    }
    std::vector<QubitIndex> out;
    for (QubitIndex q = 0; q < num_qubits; q++) {
        if (!used[q]) {
            out.push_back(q);
        }
    }
    return out;
}

}  // namespace

std::size_t qubits_for_dimension(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        n++;
    }
    return n;
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    num_qubits_ = qubits_for_dimension(static_cast<std::size_t>(amplitudes_.size()));
    double norm2 = amplitudes_.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kStateTolerance) {
        throw std::invalid_argument("pure state is not normalized (squared norm " + std::to_string(norm2) + ")");
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::size_t num_qubits)
    : matrix_(std::move(matrix)), num_qubits_(num_qubits) {
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    num_qubits_ = qubits_for_dimension(static_cast<std::size_t>(matrix_.rows()));
    if (!matrix_.allFinite()) {
        throw std::invalid_argument("density matrix has non-finite entries");
    }
    if (hermiticity_error() > kStateTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(trace() - Complex{1.0, 0.0}) > kStateTolerance) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    const auto &v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint(), psi.num_qubits());
}

DensityMatrix DensityMatrix::ground(std::size_t num_qubits) {
    std::size_t dim = std::size_t{1} << num_qubits;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(0, 0) = 1.0;
    return DensityMatrix(std::move(m), num_qubits);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix matrix) {
    std::size_t n = qubits_for_dimension(static_cast<std::size_t>(matrix.rows()));
    return DensityMatrix(std::move(matrix), n);
}

double DensityMatrix::hermiticity_error() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_valid() const {
    return matrix_.allFinite() && hermiticity_error() <= kStateTolerance &&
           std::abs(trace() - Complex{1.0, 0.0}) <= kStateTolerance && min_eigenvalue() >= kEigenvalueFloor;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

bool is_unitary(const ComplexMatrix &u, double tolerance) {
    if (u.rows() != u.cols()) {
        return false;
    }
    ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
    return ((u.adjoint() * u) - id).cwiseAbs().maxCoeff() <= tolerance;
}

void check_targets(std::size_t num_qubits, std::size_t operator_dim, std::span<const QubitIndex> targets) {
    if (targets.empty()) {
        throw std::invalid_argument("operator needs at least one target qubit");
    }
    if ((std::size_t{1} << targets.size()) != operator_dim) {
        throw std::invalid_argument(
            "operator of dimension " + std::to_string(operator_dim) + " does not act on " +
            std::to_string(targets.size()) + " qubits");
    }
    std::vector<bool> seen(num_qubits, false);
    for (auto q : targets) {
        if (q >= num_qubits) {
            throw std::invalid_argument(
                "target qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits) + " qubits");
        }
        if (seen[q]) {
            throw std::invalid_argument("duplicate target qubit " + std::to_string(q));
        }
        seen[q] = true;
    }
}

namespace {

// Blockwise sum_k E_k B E_k^dagger. `Block` is a fixed-size Eigen type for
// one- and two-qubit operators, which is what nearly every call uses.
template <typename Block>
void sandwich_blocks(
    const ComplexMatrix &rho, std::span<const ComplexMatrix> operators, const std::vector<std::size_t> &offsets,
    const std::vector<std::size_t> &bases, ComplexMatrix &out) {
    const std::size_t sub = offsets.size();
    std::vector<Block> ops;
    std::vector<Block> ops_dag;
    for (const auto &e : operators) {
        ops.push_back(e);
        ops_dag.push_back(e.adjoint());
    }
    Block block(sub, sub);
    Block half(sub, sub);
    Block acc(sub, sub);
    for (auto rb : bases) {
        for (auto cb : bases) {
            for (std::size_t i = 0; i < sub; i++) {
                for (std::size_t j = 0; j < sub; j++) {
                    block(i, j) = rho(rb + offsets[i], cb + offsets[j]);
                }
            }
            acc.setZero();
            for (std::size_t k = 0; k < ops.size(); k++) {
                half.noalias() = ops[k] * block;
                acc.noalias() += half * ops_dag[k];
            }
            for (std::size_t i = 0; i < sub; i++) {
                for (std::size_t j = 0; j < sub; j++) {
                    out(rb + offsets[i], cb + offsets[j]) = acc(i, j);
                }
            }
        }
    }
}

}  // namespace

ComplexMatrix sandwich_sum(
    const ComplexMatrix &rho, std::span<const ComplexMatrix> operators, std::span<const QubitIndex> targets) {
    std::size_t dim = static_cast<std::size_t>(rho.rows());
    std::size_t n = qubits_for_dimension(dim);

    auto offsets = assignment_offsets(n, targets);
    auto bases = assignment_offsets(n, complement(n, targets));

    ComplexMatrix out(dim, dim);
    switch (targets.size()) {
        case 1:
            sandwich_blocks<Eigen::Matrix2cd>(rho, operators, offsets, bases, out);
            break;
        case 2:
            sandwich_blocks<Eigen::Matrix4cd>(rho, operators, offsets, bases, out);
            break;
        default:
            sandwich_blocks<ComplexMatrix>(rho, operators, offsets, bases, out);
            break;
    }
    return out;
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const ComplexMatrix &u, std::span<const QubitIndex> targets) {
    if (!is_unitary(u)) {
        throw std::invalid_argument("apply_unitary: operator is not unitary");
    }
    check_targets(rho.num_qubits(), static_cast<std::size_t>(u.rows()), targets);
    ComplexMatrix ops[] = {u};
    return DensityMatrix::unchecked(sandwich_sum(rho.matrix(), ops, targets));
}

ComplexMatrix partial_trace_matrix(const ComplexMatrix &rho, std::size_t num_qubits, std::span<const QubitIndex> keep) {
    auto traced = complement(num_qubits, keep);
    auto keep_off = assignment_offsets(num_qubits, keep);
    auto trace_off = assignment_offsets(num_qubits, traced);
    std::size_t m = keep_off.size();
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (std::size_t i = 0; i < m; i++) {
        for (std::size_t j = 0; j < m; j++) {
            Complex s = 0;
            for (auto t : trace_off) {
                s += rho(keep_off[i] + t, keep_off[j] + t);
            }
            out(i, j) = s;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const QubitIndex> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    check_targets(rho.num_qubits(), std::size_t{1} << keep.size(), keep);
    return DensityMatrix::unchecked(partial_trace_matrix(rho.matrix(), rho.num_qubits(), keep));
}

double fidelity(const PureState &psi, const DensityMatrix &rho) {
    if (psi.dimension() != rho.dimension()) {
        throw std::invalid_argument("fidelity: state and density matrix dimensions differ");
    }
    const auto &v = psi.amplitudes();
    Complex f = v.dot(rho.matrix() * v);
    return f.real();
}

std::vector<PureState> bloch_2design_states() {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    auto make = [](Complex a, Complex b) {
        ComplexVector v(2);
        v << a, b;
        return PureState(std::move(v));
    };
    return {
        make(1.0, 0.0), make(0.0, 1.0), make(s, s), make(s, -s), make(s, i * s), make(s, -i * s),
    };
}

namespace gates {

ComplexMatrix identity(std::size_t dim) {
    return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    const Complex i{0.0, 1.0};
    ComplexMatrix m(2, 2);
    m << 0, -i, i, 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m << s, s, s, -s;
    return m;
}

ComplexMatrix phase_s() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, Complex(0, 1);
    return m;
}

ComplexMatrix phase_s_dagger() {
    return phase_s().adjoint();
}

ComplexMatrix phase_t() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, std::polar(1.0, M_PI / 4);
    return m;
}

ComplexMatrix phase_t_dagger() {
    return phase_t().adjoint();
}

ComplexMatrix controlled(const ComplexMatrix &u) {
    std::size_t d = static_cast<std::size_t>(u.rows());
    ComplexMatrix m = ComplexMatrix::Identity(2 * d, 2 * d);
    m.bottomRightCorner(d, d) = u;
    return m;
}

ComplexMatrix cnot() {
    return controlled(pauli_x());
}

ComplexMatrix cz() {
    return controlled(pauli_z());
}

ComplexMatrix cs_dagger() {
    return controlled(phase_s_dagger());
}

}  // namespace gates

}  // namespace repmem

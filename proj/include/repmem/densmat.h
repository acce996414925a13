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

#ifndef REPMEM_DENSMAT_H
#define REPMEM_DENSMAT_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace repmem {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Position of a qubit in a register. Qubit 0 is the data qubit and is the
/// most significant bit of a basis-state index; ancillas follow.
using QubitIndex = std::size_t;

inline constexpr double kStateTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

/// Number of qubits n such that 2^n == dim. Throws if dim is not a power of two.
std::size_t qubits_for_dimension(std::size_t dim);

/// Normalized pure state vector over a register of qubits.
class PureState {
   public:
    /// Throws std::invalid_argument unless the dimension is a power of two and
    /// the squared norm is 1 within kStateTolerance.
    explicit PureState(ComplexVector amplitudes);

    const ComplexVector &amplitudes() const { return amplitudes_; }
    std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
    std::size_t num_qubits() const { return num_qubits_; }

   private:
    ComplexVector amplitudes_;
    std::size_t num_qubits_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a qubit register.
///
/// The public constructor validates Hermiticity and trace. Positivity is
/// expensive to check, so it is exposed separately through min_eigenvalue().
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix matrix);

    static DensityMatrix from_pure(const PureState &psi);
    /// |0...0><0...0| on n qubits.
    static DensityMatrix ground(std::size_t num_qubits);
    /// Skips validation. For matrices produced by trace-preserving evolution.
    static DensityMatrix unchecked(ComplexMatrix matrix);

    const ComplexMatrix &matrix() const { return matrix_; }
    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

    Complex trace() const { return matrix_.trace(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;
    /// Hermitian and unit trace within kStateTolerance, eigenvalues above kEigenvalueFloor.
    bool is_valid() const;

   private:
    DensityMatrix(ComplexMatrix matrix, std::size_t num_qubits);

    ComplexMatrix matrix_;
    std::size_t num_qubits_;
};

/// Standard Kronecker product; a's indices are the more significant ones.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

bool is_unitary(const ComplexMatrix &u, double tolerance = kUnitaryTolerance);

/// Sum over k of E_k * rho * E_k^dagger with each E_k embedded on `targets`
/// (identity elsewhere). The first target is the most significant bit of the
/// operator's index. No validation; callers check targets and shapes.
ComplexMatrix sandwich_sum(
    const ComplexMatrix &rho, std::span<const ComplexMatrix> operators, std::span<const QubitIndex> targets);

/// Throws std::invalid_argument on duplicate or out-of-range targets, or when
/// the operator dimension doesn't match the number of targets.
void check_targets(std::size_t num_qubits, std::size_t operator_dim, std::span<const QubitIndex> targets);

/// rho -> U rho U^dagger with U acting on `targets`.
DensityMatrix apply_unitary(const DensityMatrix &rho, const ComplexMatrix &u, std::span<const QubitIndex> targets);

/// Reduced state on `keep`, kept qubits in their original relative order.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const QubitIndex> keep);

/// Raw-matrix partial trace used on hot paths; no validation beyond shape.
ComplexMatrix partial_trace_matrix(const ComplexMatrix &rho, std::size_t num_qubits, std::span<const QubitIndex> keep);

/// <psi|rho|psi>. The imaginary part (roundoff only) is discarded.
double fidelity(const PureState &psi, const DensityMatrix &rho);

/// The six Pauli eigenstates |0>,|1>,|+>,|->,|+i>,|-i>. Their uniform mean
/// reproduces the Bloch-sphere average of any quantity quadratic in both the
/// ket and the bra of the input state, which includes <psi|E(|psi><psi|)|psi>.
std::vector<PureState> bloch_2design_states();

/// Single-qubit constants.
namespace gates {
ComplexMatrix identity(std::size_t dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
ComplexMatrix phase_s();
ComplexMatrix phase_s_dagger();
ComplexMatrix phase_t();
ComplexMatrix phase_t_dagger();
/// Two-qubit controlled-u, control is the first (more significant) qubit.
ComplexMatrix controlled(const ComplexMatrix &u);
ComplexMatrix cnot();
ComplexMatrix cz();
ComplexMatrix cs_dagger();
}  // namespace gates

}  // namespace repmem

#endif

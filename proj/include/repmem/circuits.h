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

#ifndef REPMEM_CIRCUITS_H
#define REPMEM_CIRCUITS_H

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "repmem/densmat.h"
#include "repmem/noise.h"

namespace repmem {

enum class CodeKind { BitFlip, PhaseFlip };

/// How the correction step is realized.
///
/// Cnot: single-qubit gates and CNOTs, Toffoli as the 6-CNOT / 7-T network.
/// Cscz: single-qubit gates, CZ and controlled-S^dagger.
/// Ideal: every gate noiseless, correction as one majority-vote permutation.
/// Cnot and Cscz exist for n = 3 only.
enum class Decomposition { Cnot, Cscz, Ideal };

/// Which depolarizing channel follows a gate.
enum class GateClass { OneQubit, TwoQubit, Noiseless };

std::string_view to_string(CodeKind code);
std::string_view to_string(Decomposition decomposition);
/// Accepts "bit"/"bit-flip" and "phase"/"phase-flip"; throws otherwise.
CodeKind parse_code_kind(std::string_view text);
/// Accepts "cnot", "cscz", "ideal" (case-insensitive); throws otherwise.
Decomposition parse_decomposition(std::string_view text);

struct Gate {
    std::string name;
    ComplexMatrix unitary;
    std::vector<QubitIndex> targets;
    GateClass gate_class = GateClass::OneQubit;
};

/// Marks the idle period where every qubit decoheres.
struct IdleMarker {};

using Segment = std::variant<Gate, IdleMarker>;

/// One error-correction cycle.
struct Circuit {
    std::size_t num_qubits = 0;
    std::vector<Segment> segments;

    std::vector<const Gate *> gates() const;
    std::size_t gate_count() const;
    /// Product of every gate unitary in order, ignoring idle markers.
    ComplexMatrix unitary() const;
};

/// Permutation unitary on n qubits (data = qubit 0) that flips the data qubit
/// iff at least (n+1)/2 of the n-1 ancillas read 1. For n = 3 this is the
/// Toffoli gate with both ancillas as controls. Self-inverse.
///
/// Throws std::invalid_argument unless n is odd and 3 <= n <= 9.
ComplexMatrix majority_correction_unitary(std::size_t n);

/// Builds one memory cycle: encode, (Hadamards), idle, (Hadamards), recall,
/// correct. Bit-flip cycles omit the Hadamard layers. n = 1 yields a bare
/// idle qubit.
///
/// Throws std::invalid_argument for even n, n > 9, or Cnot/Cscz with n != 3.
Circuit build_cycle(CodeKind code, std::size_t n, Decomposition decomposition);

/// A full storage experiment: N cycles over total time t_tot, each idling
/// for t_tot / N.
struct ProtocolSpec {
    CodeKind code = CodeKind::PhaseFlip;
    std::size_t n = 3;
    Decomposition decomposition = Decomposition::Ideal;
    std::size_t cycles = 1;
    bool reset = true;
    double t1 = kNoDecay;
    double t2star = 1.0;
    double t_tot = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;

    double t_idle() const {
        return t_tot / static_cast<double>(cycles);
    }
    NoiseParams cycle_noise() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Test and analysis hooks for run_protocol.
struct RunOptions {
    /// When set, only the gate with this ordinal (counted within one cycle)
    /// gets a depolarizing channel, with `fault_probability`; p1 and p2 are
    /// ignored. A noiseless-class gate gets nothing.
    std::optional<std::size_t> only_faulty_gate;
    double fault_probability = 1.0;
    /// Unitaries applied right after the idle damping in every cycle.
    std::vector<Gate> idle_insertions;
};

/// Evolves input (data qubit) (x) |0...0> through spec.cycles cycles. With
/// reset, ancillas are traced out and replaced by fresh |0> between cycles.
/// Returns the full register state after the last cycle.
DensityMatrix run_protocol(const ProtocolSpec &spec, const PureState &input, const RunOptions &options = {});

/// Mean fidelity between each of the six 2-design states and the data-qubit
/// marginal of run_protocol.
double average_fidelity(const ProtocolSpec &spec, const RunOptions &options = {});

/// Linear map of one cycle on the data qubit when the ancillas start in |0>,
/// as a 4x4 matrix acting on column-stacked 2x2 matrices. Uses the per-cycle
/// idle time of `spec`.
ComplexMatrix data_cycle_transfer(const ProtocolSpec &spec, const RunOptions &options = {});

/// average_fidelity for reset protocols (or a single cycle) computed by
/// raising data_cycle_transfer to the N-th power.
double average_fidelity_via_transfer(const ProtocolSpec &spec, const RunOptions &options = {});

}  // namespace repmem

#endif

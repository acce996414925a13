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

#include "repmem/circuits.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace repmem {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

class CycleBuilder {
   public:
    explicit CycleBuilder(std::size_t n, GateClass one, GateClass two) : one_(one), two_(two) {
        circuit_.num_qubits = n;
    }

    void one(std::string name, ComplexMatrix u, QubitIndex q) {
        circuit_.segments.push_back(Gate{std::move(name), std::move(u), {q}, one_});
    }
    void two(std::string name, ComplexMatrix u, QubitIndex a, QubitIndex b) {
        circuit_.segments.push_back(Gate{std::move(name), std::move(u), {a, b}, two_});
    }
    void noiseless(std::string name, ComplexMatrix u, std::vector<QubitIndex> targets) {
        circuit_.segments.push_back(Gate{std::move(name), std::move(u), std::move(targets), GateClass::Noiseless});
    }
    void idle() {
        circuit_.segments.push_back(IdleMarker{});
    }
    void hadamard_layer() {
        for (QubitIndex q = 0; q < circuit_.num_qubits; q++) {
            one("H", gates::hadamard(), q);
        }
    }
    Circuit take() {
        return std::move(circuit_);
    }

   private:
    Circuit circuit_;
    GateClass one_;
    GateClass two_;
};

Circuit ideal_cycle(CodeKind code, std::size_t n) {
    CycleBuilder b(n, GateClass::Noiseless, GateClass::Noiseless);
    if (n == 1) {
        b.idle();
        return b.take();
    }
    bool phase = code == CodeKind::PhaseFlip;
    for (QubitIndex k = 1; k < n; k++) {
        b.two("CNOT", gates::cnot(), 0, k);
    }
    if (phase) {
        b.hadamard_layer();
    }
    b.idle();
    if (phase) {
        b.hadamard_layer();
    }
    for (QubitIndex k = 1; k < n; k++) {
        b.two("CNOT", gates::cnot(), 0, k);
    }
    std::vector<QubitIndex> all(n);
    for (QubitIndex q = 0; q < n; q++) {
        all[q] = q;
    }
    b.noiseless("MAJ", majority_correction_unitary(n), std::move(all));
    return b.take();
}

// Toffoli(a, b -> c) as H, 6 CNOTs and 7 T/T^dagger gates. The trailing
// T(a), T^dagger(b) and the a-b CNOT pair only fix a controlled phase between
// the two controls.
void toffoli_cnot_network(CycleBuilder &b, QubitIndex a, QubitIndex bq, QubitIndex c) {
    using namespace gates;
    b.one("H", hadamard(), c);
    b.two("CNOT", cnot(), bq, c);
    b.one("T_DAG", phase_t_dagger(), c);
    b.two("CNOT", cnot(), a, c);
    b.one("T", phase_t(), c);
    b.two("CNOT", cnot(), bq, c);
    b.one("T_DAG", phase_t_dagger(), c);
    b.two("CNOT", cnot(), a, c);
    b.one("T", phase_t(), bq);
    b.one("T", phase_t(), c);
    b.one("H", hadamard(), c);
    b.two("CNOT", cnot(), a, bq);
    b.one("T", phase_t(), a);
    b.one("T_DAG", phase_t_dagger(), bq);
    b.two("CNOT", cnot(), a, bq);
}

Circuit cnot_cycle(CodeKind code) {
    using namespace gates;
    CycleBuilder b(3, GateClass::OneQubit, GateClass::TwoQubit);
    bool phase = code == CodeKind::PhaseFlip;
    b.two("CNOT", cnot(), 0, 1);
    b.two("CNOT", cnot(), 0, 2);
    if (phase) {
        b.hadamard_layer();
    }
    b.idle();
    if (phase) {
        b.hadamard_layer();
    }
    b.two("CNOT", cnot(), 0, 1);
    b.two("CNOT", cnot(), 0, 2);
    toffoli_cnot_network(b, 1, 2, 0);
    return b.take();
}

// Toffoli(1, 2 -> 0) from CZ and CS^dagger with data-qubit rotations between
// them. On the data qubit the four controlled gates compose as
// Z^a V^b Z^a V'^b where V and V' are -pi/2 rotations about +x and -x, which
// multiply to X exactly when a = b = 1. This leaves the ancilla-only phase
// diag(1, -i, 1, -1), removed by S(2), CZ(1,2), CS^dagger(1,2).
//
// With `flip_data` an extra X is folded into the last data rotation.
void toffoli_cscz_network(CycleBuilder &b, bool flip_data) {
    using namespace gates;
    const ComplexMatrix h = hadamard();
    const ComplexMatrix x = pauli_x();
    b.two("CZ", cz(), 1, 0);
    b.one("H", h, 0);
    b.two("CS_DAG", cs_dagger(), 2, 0);
    b.one("H", h, 0);
    b.two("CZ", cz(), 1, 0);
    b.one("RY(+pi/2)", x * h, 0);
    b.two("CS_DAG", cs_dagger(), 2, 0);
    if (flip_data) {
        b.one("XHX", x * h * x, 0);
    } else {
        b.one("RY(-pi/2)", h * x, 0);
    }
    b.one("S", phase_s(), 2);
    b.two("CZ", cz(), 1, 2);
    b.two("CS_DAG", cs_dagger(), 1, 2);
}

Circuit cscz_cycle(CodeKind code) {
    using namespace gates;
    CycleBuilder b(3, GateClass::OneQubit, GateClass::TwoQubit);
    const ComplexMatrix h = hadamard();
    if (code == CodeKind::PhaseFlip) {
        // CNOT = H_t CZ H_t with the target Hadamards cancelled against the
        // Hadamard layers. The data rotation and the ancilla Zs prepare
        // a|---> + b|+++>, which leaves the data bit flipped after recall;
        // the correction network undoes it.
        b.one("H", h, 1);
        b.one("H", h, 2);
        b.two("CZ", cz(), 0, 1);
        b.two("CZ", cz(), 0, 2);
        b.one("RY(-pi/2)", h * pauli_x(), 0);
        b.one("Z", pauli_z(), 1);
        b.one("Z", pauli_z(), 2);
        b.idle();
        b.one("H", h, 0);
        b.two("CZ", cz(), 0, 1);
        b.two("CZ", cz(), 0, 2);
        b.one("H", h, 1);
        b.one("H", h, 2);
        toffoli_cscz_network(b, true);
    } else {
        for (int pass = 0; pass < 2; pass++) {
            b.one("H", h, 1);
            b.one("H", h, 2);
            b.two("CZ", cz(), 0, 1);
            b.two("CZ", cz(), 0, 2);
            b.one("H", h, 1);
            b.one("H", h, 2);
            if (pass == 0) {
                b.idle();
            }
        }
        toffoli_cscz_network(b, false);
    }
    return b.take();
}

// A gate with its noise folded in: rho -> sum_k K_k rho K_k^dagger. A
// noiseless basis permutation on the whole register (the majority vote) is
// stored as an index map instead; a dense 512 x 512 product costs seconds.
struct CompiledStep {
    std::vector<ComplexMatrix> operators;
    std::vector<QubitIndex> targets;
    std::vector<std::size_t> permutation;
};

// Index map of a 0/1 permutation matrix acting on qubits 0..n-1 in order, or
// empty if `gate` is not one.
std::vector<std::size_t> as_register_permutation(const Gate &gate, std::size_t num_qubits) {
    if (gate.targets.size() != num_qubits || num_qubits < 3) {
        return {};
    }
    for (QubitIndex q = 0; q < num_qubits; q++) {
        if (gate.targets[q] != q) {
            return {};
        }
    }
    const auto dim = static_cast<std::size_t>(gate.unitary.rows());
    std::vector<std::size_t> perm(dim);
    for (std::size_t col = 0; col < dim; col++) {
        std::size_t ones = 0;
        for (std::size_t row = 0; row < dim; row++) {
            Complex v = gate.unitary(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
            if (v == Complex{1.0, 0.0}) {
                perm[col] = row;
                ones++;
            } else if (v != Complex{0.0, 0.0}) {
                return {};
            }
        }
        if (ones != 1) {
            return {};
        }
    }
    return perm;
}

struct CompiledCycle {
    std::size_t num_qubits = 0;
    std::vector<CompiledStep> steps;
};

CompiledStep with_noise(const Gate &gate, double p) {
    CompiledStep step;
    step.targets = gate.targets;
    if (p <= 0.0 || gate.gate_class == GateClass::Noiseless) {
        step.operators = {gate.unitary};
        return step;
    }
    KrausChannel ch = gate.gate_class == GateClass::OneQubit ? depolarizing_1q(p) : depolarizing_2q(p);
    for (const auto &e : ch.operators) {
        step.operators.push_back(e * gate.unitary);
    }
    return step;
}

CompiledCycle compile(const Circuit &circuit, const ProtocolSpec &spec, const RunOptions &options) {
    CompiledCycle out;
    out.num_qubits = circuit.num_qubits;
    KrausChannel damping = damping_channel(spec.t1, spec.t2star, spec.t_idle());
    std::size_t ordinal = 0;
    for (const auto &seg : circuit.segments) {
        if (const auto *gate = std::get_if<Gate>(&seg)) {
            double p = 0.0;
            if (options.only_faulty_gate.has_value()) {
                p = *options.only_faulty_gate == ordinal ? options.fault_probability : 0.0;
            } else {
                p = gate->gate_class == GateClass::OneQubit ? spec.p1 : spec.p2;
            }
            CompiledStep step = with_noise(*gate, p);
            if (step.operators.size() == 1) {
                step.permutation = as_register_permutation(*gate, circuit.num_qubits);
            }
            out.steps.push_back(std::move(step));
            ordinal++;
        } else {
            for (QubitIndex q = 0; q < circuit.num_qubits; q++) {
                out.steps.push_back(CompiledStep{damping.operators, {q}, {}});
            }
            for (const auto &g : options.idle_insertions) {
                check_targets(circuit.num_qubits, static_cast<std::size_t>(g.unitary.rows()), g.targets);
                out.steps.push_back(CompiledStep{{g.unitary}, g.targets, {}});
            }
        }
    }
    if (options.only_faulty_gate.has_value() && *options.only_faulty_gate >= ordinal) {
        throw std::invalid_argument("faulty gate ordinal out of range");
    }
    if (options.only_faulty_gate.has_value() &&
        !(options.fault_probability >= 0.0 && options.fault_probability <= 1.0)) {
        throw std::invalid_argument("fault_probability must lie in [0, 1]");
    }
    return out;
}

void evolve(ComplexMatrix &rho, const CompiledCycle &cycle) {
    for (const auto &step : cycle.steps) {
        if (!step.permutation.empty()) {
            const auto &perm = step.permutation;
            ComplexMatrix out(rho.rows(), rho.cols());
            for (std::size_t j = 0; j < perm.size(); j++) {
                for (std::size_t i = 0; i < perm.size(); i++) {
                    out(perm[i], perm[j]) = rho(i, j);
                }
            }
            rho = std::move(out);
        } else {
            rho = sandwich_sum(rho, step.operators, step.targets);
        }
    }
}

ComplexMatrix with_fresh_ancillas(const ComplexMatrix &data, std::size_t n) {
    if (n == 1) {
        return data;
    }
    return kron(data, DensityMatrix::ground(n - 1).matrix());
}

}  // namespace

std::string_view to_string(CodeKind code) {
    return code == CodeKind::BitFlip ? "bit-flip" : "phase-flip";
}

std::string_view to_string(Decomposition decomposition) {
    switch (decomposition) {
        case Decomposition::Cnot:
            return "cnot";
        case Decomposition::Cscz:
            return "cscz";
        case Decomposition::Ideal:
            return "ideal";
    }
    return "?";
}

CodeKind parse_code_kind(std::string_view text) {
    auto t = lower(text);
    if (t == "bit" || t == "bit-flip" || t == "bitflip") {
        return CodeKind::BitFlip;
    }
    if (t == "phase" || t == "phase-flip" || t == "phaseflip") {
        return CodeKind::PhaseFlip;
    }
    throw std::invalid_argument("unknown code kind '" + std::string(text) + "' (expected bit or phase)");
}

Decomposition parse_decomposition(std::string_view text) {
    auto t = lower(text);
    if (t == "cnot") {
        return Decomposition::Cnot;
    }
    if (t == "cscz" || t == "cs-cz") {
        return Decomposition::Cscz;
    }
    if (t == "ideal") {
        return Decomposition::Ideal;
    }
    throw std::invalid_argument(
        "unknown decomposition '" + std::string(text) + "' (expected cnot, cscz or ideal)");
}

std::vector<const Gate *> Circuit::gates() const {
    std::vector<const Gate *> out;
    for (const auto &seg : segments) {
        if (const auto *g = std::get_if<Gate>(&seg)) {
            out.push_back(g);
        }
    }
    return out;
}

std::size_t Circuit::gate_count() const {
    return gates().size();
}

ComplexMatrix Circuit::unitary() const {
    std::size_t dim = std::size_t{1} << num_qubits;
    ComplexMatrix total = ComplexMatrix::Identity(dim, dim);
    for (const auto *g : gates()) {
        // Embed the gate into the full register column by column.
        ComplexMatrix embedded = ComplexMatrix::Zero(dim, dim);
        std::size_t k = g->targets.size();
        for (std::size_t col = 0; col < dim; col++) {
            std::size_t sub_in = 0;
            for (std::size_t j = 0; j < k; j++) {
                sub_in = (sub_in << 1) | ((col >> (num_qubits - 1 - g->targets[j])) & 1);
            }
            for (std::size_t sub_out = 0; sub_out < (std::size_t{1} << k); sub_out++) {
                Complex amp = g->unitary(sub_out, sub_in);
                if (amp == Complex{0.0, 0.0}) {
                    continue;
                }
                std::size_t row = col;
                for (std::size_t j = 0; j < k; j++) {
                    std::size_t bit = std::size_t{1} << (num_qubits - 1 - g->targets[j]);
                    if ((sub_out >> (k - 1 - j)) & 1) {
                        row |= bit;
                    } else {
                        row &= ~bit;
                    }
                }
                embedded(row, col) += amp;
            }
        }
        total = embedded * total;
    }
    return total;
}

ComplexMatrix majority_correction_unitary(std::size_t n) {
    if (n % 2 == 0 || n < 3 || n > 9) {
        throw std::invalid_argument("majority correction needs odd n in [3, 9], got " + std::to_string(n));
    }
    std::size_t dim = std::size_t{1} << n;
    std::size_t data_bit = std::size_t{1} << (n - 1);
    std::size_t ancilla_mask = data_bit - 1;
    std::size_t threshold = (n + 1) / 2;
    ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; i++) {
        std::size_t weight = static_cast<std::size_t>(std::popcount(i & ancilla_mask));
        std::size_t j = weight >= threshold ? (i ^ data_bit) : i;
        u(j, i) = 1.0;
    }
    return u;
}

Circuit build_cycle(CodeKind code, std::size_t n, Decomposition decomposition) {
    if (n % 2 == 0 || n > 9) {
        throw std::invalid_argument("code size n must be odd and at most 9, got " + std::to_string(n));
    }
    switch (decomposition) {
        case Decomposition::Ideal:
            return ideal_cycle(code, n);
        case Decomposition::Cnot:
        case Decomposition::Cscz:
            if (n != 3) {
                throw std::invalid_argument(
                    std::string(to_string(decomposition)) + " decomposition exists only for n = 3, got n = " +
                    std::to_string(n));
            }
            return decomposition == Decomposition::Cnot ? cnot_cycle(code) : cscz_cycle(code);
    }
    throw std::invalid_argument("unknown decomposition");
}

NoiseParams ProtocolSpec::cycle_noise() const {
    return NoiseParams{t1, t2star, t_idle(), p1, p2};
}

void ProtocolSpec::validate() const {
    if (n % 2 == 0 || n > 9) {
        throw std::invalid_argument("n must be odd and at most 9, got " + std::to_string(n));
    }
    if (decomposition != Decomposition::Ideal && n != 3) {
        throw std::invalid_argument("decomposition " + std::string(to_string(decomposition)) + " requires n = 3");
    }
    if (cycles < 1) {
        throw std::invalid_argument("cycles must be at least 1");
    }
    if (!(t_tot >= 0.0) || std::isinf(t_tot)) {
        throw std::invalid_argument("t_tot must be finite and non-negative");
    }
    cycle_noise().validate();
}

DensityMatrix run_protocol(const ProtocolSpec &spec, const PureState &input, const RunOptions &options) {
    spec.validate();
    if (input.num_qubits() != 1) {
        throw std::invalid_argument("run_protocol: input must be a single-qubit state");
    }
    Circuit circuit = build_cycle(spec.code, spec.n, spec.decomposition);
    CompiledCycle cycle = compile(circuit, spec, options);
    const std::size_t n = spec.n;
    const QubitIndex data[] = {0};

    ComplexMatrix rho = with_fresh_ancillas(DensityMatrix::from_pure(input).matrix(), n);
    for (std::size_t c = 0; c < spec.cycles; c++) {
        if (c > 0 && spec.reset && n > 1) {
            rho = with_fresh_ancillas(partial_trace_matrix(rho, n, data), n);
        }
        evolve(rho, cycle);
    }
    return DensityMatrix::unchecked(std::move(rho));
}

double average_fidelity(const ProtocolSpec &spec, const RunOptions &options) {
    const QubitIndex data[] = {0};
    double sum = 0.0;
    auto states = bloch_2design_states();
    for (const auto &psi : states) {
        DensityMatrix out = run_protocol(spec, psi, options);
        sum += fidelity(psi, partial_trace(out, data));
    }
    return sum / static_cast<double>(states.size());
}

ComplexMatrix data_cycle_transfer(const ProtocolSpec &spec, const RunOptions &options) {
    spec.validate();
    Circuit circuit = build_cycle(spec.code, spec.n, spec.decomposition);
    CompiledCycle cycle = compile(circuit, spec, options);
    const QubitIndex data[] = {0};
    ComplexMatrix transfer(4, 4);
    for (std::size_t j = 0; j < 2; j++) {
        for (std::size_t i = 0; i < 2; i++) {
            ComplexMatrix unit = ComplexMatrix::Zero(2, 2);
            unit(i, j) = 1.0;
            ComplexMatrix rho = with_fresh_ancillas(unit, spec.n);
            evolve(rho, cycle);
            ComplexMatrix out = partial_trace_matrix(rho, spec.n, data);
            transfer.col(static_cast<Eigen::Index>(i + 2 * j)) = out.reshaped();
        }
    }
    return transfer;
}

double average_fidelity_via_transfer(const ProtocolSpec &spec, const RunOptions &options) {
    if (!spec.reset && spec.cycles > 1 && spec.n > 1) {
        throw std::invalid_argument("transfer-matrix evaluation requires ancilla reset");
    }
    ComplexMatrix step = data_cycle_transfer(spec, options);
    ComplexMatrix total = ComplexMatrix::Identity(4, 4);
    for (std::size_t c = 0; c < spec.cycles; c++) {
        total = step * total;
    }
    double sum = 0.0;
    auto states = bloch_2design_states();
    for (const auto &psi : states) {
        const auto &v = psi.amplitudes();
        ComplexMatrix rho = v * v.adjoint();
        ComplexVector out = total * rho.reshaped();
        ComplexMatrix out_rho = out.reshaped(2, 2);
        sum += v.dot(out_rho * v).real();
    }
    return sum / static_cast<double>(states.size());
}

}  // namespace repmem

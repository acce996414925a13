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

#ifndef REPMEM_ANALYTIC_H
#define REPMEM_ANALYTIC_H

#include <cstddef>
#include <string>

#include "repmem/circuits.h"
#include "repmem/noise.h"

namespace repmem {

/// Times for a closed-form evaluation. `t` is the idle time of one cycle or
/// the total storage time, depending on the formula.
struct ClosedFormParams {
    double t1 = kNoDecay;
    double t2star = 1.0;
    double t = 0.0;

    double t2() const {
        return combined_t2(t1, t2star);
    }
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Average fidelity of a bare idle qubit.
double f_idle(const ClosedFormParams &p);
/// One cycle of the three-qubit bit-flip code.
double f_bit(const ClosedFormParams &p);
/// One cycle of the three-qubit phase-flip code.
double f_phase(const ClosedFormParams &p);
/// One cycle of the n-qubit phase-flip code (n odd). n = 1 is the idle qubit.
double f_phase_n(std::size_t n, const ClosedFormParams &p);
/// N reset cycles of the three-qubit phase-flip code over total time p.t.
double f_phase_reset(std::size_t cycles, const ClosedFormParams &p);
/// N -> infinity limit of f_phase_reset: (2 + e^{-3t/T1}) / 3.
double f_phase_reset_limit(const ClosedFormParams &p);
/// Two cycles without ancilla reset over total time p.t.
double f_phase_noreset_2(const ClosedFormParams &p);

/// First-order fidelity loss per unit p1 (f1) and per unit p2 (f2).
struct GateErrorCoefficients {
    double f1 = 0.0;
    double f2 = 0.0;
};

/// Closed-form f1, f2 for one phase-flip cycle. Throws for Ideal.
GateErrorCoefficients gate_error_coefficients(Decomposition decomposition, const ClosedFormParams &p);

/// f_phase - p1 f1 - p2 f2. Only meaningful for small p1, p2.
double f_phase_error(Decomposition decomposition, const ClosedFormParams &p, double p1, double p2);

/// The code beats the idle qubit iff p2 < c0 - c1 p1.
struct BreakEvenLine {
    double c0 = 0.0;
    double c1 = 0.0;

    /// "p2 < 0.019 - 1.3*p1" with both coefficients at 2 significant figures.
    std::string to_string() const;
    bool reachable() const {
        return c0 > 0.0;
    }
};

BreakEvenLine breakeven_inequality(Decomposition decomposition, const ClosedFormParams &p);

struct CodeSizeChoice {
    std::size_t n = 1;
    double fidelity = 0.0;
};

/// Best n in {1, 3, ..., n_max} for a single cycle; ties go to the smaller n.
CodeSizeChoice optimal_code_size(const ClosedFormParams &p, std::size_t n_max);

/// printf("%.*g") with the given number of significant digits.
std::string format_significant(double value, int digits);

}  // namespace repmem

#endif

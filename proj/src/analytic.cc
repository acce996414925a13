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

#include "repmem/analytic.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace repmem {

namespace {

// Differences below this count as ties in argmax selections.
constexpr double kTieTolerance = 1e-14;

// e^{-k t / T}, with T = inf giving exactly 1.
double decay(double k, double t, double time_constant) {
    return std::exp(-k * t / time_constant);
}

double int_pow(double base, std::size_t e) {
    double r = 1.0;
    for (std::size_t i = 0; i < e; i++) {
        r *= base;
    }
    return r;
}

// 2^{-N} e^{-3 t_tot / T2} (3 e^{u} e^{w} - 1)^N with u = 2 t_tot / (N T2),
// rewritten as [(1 + 1.5 expm1(u + w)) e^{-1.5 u}]^N so large N stays finite.
double reset_term(std::size_t cycles, double u, double w) {
    double base = std::log1p(1.5 * std::expm1(u + w));
    double n = static_cast<double>(cycles);
    if (std::isnan(base)) {
        // 3 e^{u+w} < 1: the bracket is negative.
        double magnitude = -(1.0 + 1.5 * std::expm1(u + w));
        double value = std::exp(n * (std::log(magnitude) - 1.5 * u));
        return cycles % 2 == 0 ? value : -value;
    }
    return std::exp(n * (base - 1.5 * u));
}

}  // namespace

void ClosedFormParams::validate() const {
    NoiseParams{t1, t2star, t, 0.0, 0.0}.validate();
}

double f_idle(const ClosedFormParams &p) {
    p.validate();
    return (3.0 + decay(1, p.t, p.t1) + 2.0 * decay(1, p.t, p.t2())) / 6.0;
}

double f_bit(const ClosedFormParams &p) {
    p.validate();
    return (3.0 + 2.0 * decay(3, p.t, p.t2()) - 2.0 * decay(3, p.t, p.t1) + 3.0 * decay(2, p.t, p.t1)) / 6.0;
}

double f_phase(const ClosedFormParams &p) {
    p.validate();
    double t2 = p.t2();
    return (6.0 + 2.0 * decay(3, p.t, p.t1) - 2.0 * decay(3, p.t, t2) +
            3.0 * decay(1, p.t, t2) * (1.0 + decay(2, p.t, p.t1))) /
           12.0;
}

double f_phase_n(std::size_t n, const ClosedFormParams &p) {
    if (n % 2 == 0) {
        throw std::invalid_argument("f_phase_n: n must be odd, got " + std::to_string(n));
    }
    p.validate();
    double q1 = decay(1, p.t, p.t1);
    double q2 = decay(1, p.t, p.t2());
    double sum = 0.0;
    double binom = 1.0;
    for (std::size_t k = 0; k <= (n - 1) / 2; k++) {
        sum += binom * (int_pow(1.0 - q2, k) * int_pow(1.0 + q2, n - k) + int_pow(q1 - q2, k) * int_pow(q1 + q2, n - k));
        binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return 1.0 / 3.0 + sum / (3.0 * std::ldexp(1.0, static_cast<int>(n)));
}

double f_phase_reset(std::size_t cycles, const ClosedFormParams &p) {
    if (cycles < 1) {
        throw std::invalid_argument("f_phase_reset: cycles must be at least 1");
    }
    p.validate();
    double n = static_cast<double>(cycles);
    double u = 2.0 * p.t / (n * p.t2());
    double w = -2.0 * p.t / (n * p.t1);
    return (3.0 + decay(3, p.t, p.t1) + reset_term(cycles, u, 0.0) + reset_term(cycles, u, w)) / 6.0;
}

double f_phase_reset_limit(const ClosedFormParams &p) {
    p.validate();
    return (2.0 + decay(3, p.t, p.t1)) / 3.0;
}

double f_phase_noreset_2(const ClosedFormParams &p) {
    p.validate();
    double t2 = p.t2();
    return (12.0 + 4.0 * decay(3, p.t, p.t1) - 2.0 * decay(3, p.t, t2) +
            5.0 * decay(1, p.t, t2) * (1.0 + decay(2, p.t, p.t1))) /
           24.0;
}

GateErrorCoefficients gate_error_coefficients(Decomposition decomposition, const ClosedFormParams &p) {
    p.validate();
    double t2 = p.t2();
    double a = decay(3, p.t, p.t1);
    double b = decay(3, p.t, t2);
    double c = decay(1, p.t, t2);
    double d = std::exp(-p.t * (1.0 / t2 + 2.0 / p.t1));
    GateErrorCoefficients out;
    out.f2 = 8.0 / 45.0 * (8.0 * a - 8.0 * b + 11.0 * c + 12.0 * d);
    switch (decomposition) {
        case Decomposition::Cnot:
            out.f1 = 4.0 / 3.0 * (2.0 * a - 2.0 * b + 2.0 * c + 3.0 * d);
            break;
        case Decomposition::Cscz:
            out.f1 = 4.0 / 9.0 * (4.0 * a - 6.0 * b + 5.0 * c + 7.0 * d);
            break;
        case Decomposition::Ideal:
            throw std::invalid_argument("gate error coefficients exist only for the cnot and cscz decompositions");
    }
    return out;
}

double f_phase_error(Decomposition decomposition, const ClosedFormParams &p, double p1, double p2) {
    auto k = gate_error_coefficients(decomposition, p);
    return f_phase(p) - p1 * k.f1 - p2 * k.f2;
}

std::string format_significant(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

std::string BreakEvenLine::to_string() const {
    return "p2 < " + format_significant(c0, 2) + " - " + format_significant(c1, 2) + "*p1";
}

BreakEvenLine breakeven_inequality(Decomposition decomposition, const ClosedFormParams &p) {
    auto k = gate_error_coefficients(decomposition, p);
    return BreakEvenLine{(f_phase(p) - f_idle(p)) / k.f2, k.f1 / k.f2};
}

CodeSizeChoice optimal_code_size(const ClosedFormParams &p, std::size_t n_max) {
    if (n_max % 2 == 0) {
        throw std::invalid_argument("n_max must be odd, got " + std::to_string(n_max));
    }
    CodeSizeChoice best{1, f_idle(p)};
    for (std::size_t n = 3; n <= n_max; n += 2) {
        double f = f_phase_n(n, p);
        if (f > best.fidelity + kTieTolerance) {
            best = {n, f};
        }
    }
    return best;
}

}  // namespace repmem

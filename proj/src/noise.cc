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

#include "repmem/noise.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace repmem {

namespace {

void require_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

void require_positive_time(double t, const char *name) {
    // NaN fails both comparisons.
    if (!(t > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be positive, got " + std::to_string(t));
    }
}

}  // namespace

double combined_t2(double t1, double t2star) {
    return 1.0 / (1.0 / t2star + 1.0 / (2.0 * t1));
}

double KrausChannel::completeness_error() const {
    std::size_t dim = std::size_t{1} << arity;
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto &e : operators) {
        sum += e.adjoint() * e;
    }
    return (sum - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

void NoiseParams::validate() const {
    require_positive_time(t1, "t1");
    require_positive_time(t2star, "t2star");
    if (!(t_idle >= 0.0) || std::isinf(t_idle)) {
        throw std::invalid_argument("t_idle must be finite and non-negative, got " + std::to_string(t_idle));
    }
    require_probability(p1, "p1");
    require_probability(p2, "p2");
}

KrausChannel damping_channel(double t1, double t2star, double t) {
    require_positive_time(t1, "t1");
    require_positive_time(t2star, "t2star");
    if (!(t >= 0.0) || std::isinf(t)) {
        throw std::invalid_argument("idle time must be finite and non-negative, got " + std::to_string(t));
    }
    // t / inf == 0, so kNoDecay gives gamma = alpha = 0 exactly.
    double gamma = -std::expm1(-t / t1);
    double alpha = -std::expm1(-2.0 * t / t2star);

    KrausChannel ch;
    ch.arity = 1;
    // sqrt(1 - alpha) and sqrt(1 - gamma) as exponentials: forming 1 - alpha
    // first loses all relative precision once alpha is close to 1.
    ComplexMatrix e1 = ComplexMatrix::Zero(2, 2);
    e1(0, 0) = std::exp(-t / t2star);
    e1(1, 1) = std::exp(-0.5 * t / t1);
    ComplexMatrix e2 = ComplexMatrix::Zero(2, 2);
    e2(0, 1) = std::sqrt(gamma);
    ComplexMatrix e3 = ComplexMatrix::Zero(2, 2);
    e3(0, 0) = std::sqrt(alpha);
    ch.operators = {e1, e2, e3};
    return ch;
}

KrausChannel depolarizing_1q(double p1) {
    require_probability(p1, "p1");
    KrausChannel ch;
    ch.arity = 1;
    double w = std::sqrt(p1 / 3.0);
    ch.operators = {
        std::sqrt(1.0 - p1) * gates::identity(2),
        w * gates::pauli_x(),
        w * gates::pauli_y(),
        w * gates::pauli_z(),
    };
    return ch;
}

KrausChannel depolarizing_2q(double p2) {
    require_probability(p2, "p2");
    const ComplexMatrix paulis[] = {gates::identity(2), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()};
    KrausChannel ch;
    ch.arity = 2;
    ch.operators.push_back(std::sqrt(1.0 - p2) * gates::identity(4));
    double w = std::sqrt(p2 / 15.0);
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            if (a == 0 && b == 0) {
                continue;
            }
            ch.operators.push_back(w * kron(paulis[a], paulis[b]));
        }
    }
    return ch;
}

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel, std::span<const QubitIndex> targets) {
    if (targets.size() != channel.arity) {
        throw std::invalid_argument(
            "channel of arity " + std::to_string(channel.arity) + " given " + std::to_string(targets.size()) +
            " targets");
    }
    check_targets(rho.num_qubits(), std::size_t{1} << channel.arity, targets);
    return DensityMatrix::unchecked(sandwich_sum(rho.matrix(), channel.operators, targets));
}

}  // namespace repmem

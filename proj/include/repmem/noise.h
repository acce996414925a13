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

#ifndef REPMEM_NOISE_H
#define REPMEM_NOISE_H

#include <limits>
#include <vector>

#include "repmem/densmat.h"

namespace repmem {

/// Passing this as T1 or T2* disables that decay process (gamma = 0 or alpha = 0).
inline constexpr double kNoDecay = std::numeric_limits<double>::infinity();

/// 1/T2 = 1/T2* + 1/(2 T1). Either time may be kNoDecay.
double combined_t2(double t1, double t2star);

/// Completely positive trace-preserving map as a list of Kraus operators.
struct KrausChannel {
    std::size_t arity = 1;
    std::vector<ComplexMatrix> operators;

    /// max |sum_k E_k^dagger E_k - I|.
    double completeness_error() const;
    bool is_complete(double tolerance = kStateTolerance) const {
        return completeness_error() <= tolerance;
    }
};

/// Decoherence and gate-error parameters of one error-correction cycle.
struct NoiseParams {
    double t1 = kNoDecay;
    double t2star = kNoDecay;
    double t_idle = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;

    double t2() const {
        return combined_t2(t1, t2star);
    }
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Amplitude plus phase damping for an idle period of length t:
///   E1 = diag(sqrt(1-alpha), sqrt(1-gamma)), E2 = sqrt(gamma)|0><1|, E3 = sqrt(alpha)|0><0|
/// with gamma = 1 - exp(-t/T1) and alpha = 1 - exp(-2t/T2*).
KrausChannel damping_channel(double t1, double t2star, double t);

/// {sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z}.
KrausChannel depolarizing_1q(double p1);

/// sqrt(1-p) I4 plus sqrt(p/15) P(x)Q for the fifteen non-identity Pauli pairs.
KrausChannel depolarizing_2q(double p2);

/// Applies the channel on `targets`; throws on arity or target mismatch.
DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel, std::span<const QubitIndex> targets);

}  // namespace repmem

#endif

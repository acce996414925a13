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

#ifndef REPMEM_VERIFY_H
#define REPMEM_VERIFY_H

#include <ostream>
#include <string>
#include <vector>

#include "repmem/circuits.h"

namespace repmem {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CriterionReport {
    int id = 0;
    std::string title;
    std::vector<CheckResult> checks;

    bool passed() const;
};

/// Runs the acceptance suite: simulator against closed forms, published
/// numbers, coefficient extraction, structural properties, both scans,
/// channel checks and the many-cycle limit. Deterministic (fixed seeds).
/// Progress lines go to `progress` when non-null.
std::vector<CriterionReport> run_acceptance_suite(std::ostream *progress = nullptr);

/// One "PASS"/"FAIL" line per criterion, indented lines per check.
void print_report(std::ostream &out, const std::vector<CriterionReport> &reports, bool verbose);

// Independent oracles, also used by the unit tests.

/// One phase-flip cycle evolved with depolarizing noise written as
/// (1 - p) rho + p/(4^k - 1) sum_{P != I} P rho P. Valid for p < 0, which the
/// central difference around p = 0 needs.
double affine_noise_fidelity(Decomposition decomposition, double t1, double t2star, double t, double p1, double p2);

/// Uniform Bloch-sphere average of the data fidelity from `samples` Haar
/// random inputs. Returns {mean, standard error}.
struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};
MonteCarloEstimate monte_carlo_average_fidelity(const ProtocolSpec &spec, std::size_t samples, unsigned long seed);

}  // namespace repmem

#endif

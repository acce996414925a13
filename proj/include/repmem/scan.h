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

#ifndef REPMEM_SCAN_H
#define REPMEM_SCAN_H

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "repmem/analytic.h"
#include "repmem/circuits.h"

namespace repmem {

/// First-order coefficients of one phase-flip cycle measured on the
/// simulator. Each gate is made faulty on its own with p = 1 and the
/// fidelity drop is summed by gate class. Exact because the fidelity is
/// affine in every gate's p.
GateErrorCoefficients extract_linear_coefficients(Decomposition decomposition, const ClosedFormParams &p);

/// Per-gate contributions behind extract_linear_coefficients, in circuit order.
struct GateContribution {
    std::string name;
    std::vector<QubitIndex> targets;
    GateClass gate_class;
    double drop;
};
std::vector<GateContribution> gate_contributions(Decomposition decomposition, const ClosedFormParams &p);

/// `count` log-spaced points from lo to hi; both endpoints exact.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

struct ScanAxis {
    std::string name;
    std::vector<double> values;
};

struct ScanCell {
    double x = 0.0;
    double y = 0.0;
    std::size_t optimum = 0;
    double f_best = 0.0;
    double f_idle = 0.0;
};

/// Row-major over (x, y): cells[i * y.size() + j] belongs to x[i], y[j].
struct ScanResult {
    ScanAxis x;
    ScanAxis y;
    std::string optimum_name;
    std::vector<ScanCell> cells;

    const ScanCell &at(std::size_t i, std::size_t j) const {
        return cells[i * y.values.size() + j];
    }
    std::string to_csv() const;
    std::string to_json() const;
};

struct Fig3Grid {
    std::vector<double> t1_over_t2star = log_grid(0.5, 100.0, 40);
    std::vector<double> t_over_t2star = log_grid(0.01, 3.0, 40);
    std::size_t n_max = 9;
};

/// Optimal one-cycle phase-flip code size over (T1, t), gate errors off.
ScanResult scan_fig3(const Fig3Grid &grid = {});

struct Fig4Grid {
    double t_tot = 1.0;
    std::vector<double> t1_over_t2star = log_grid(2.0, 100.0, 30);
    std::vector<double> p2 = log_grid(1e-4, 1e-1, 30);
    std::size_t n_max = 8;
    Decomposition decomposition = Decomposition::Cscz;
    double p1 = 0.0;
};

/// Optimal number of reset cycles over (T1, p2) by simulation. Reports 0
/// when the idle qubit is at least as good as every N.
ScanResult scan_fig4(const Fig4Grid &grid = {});

/// A table entry: a single value, a range "lo-hi", or a lower bound ">>lo".
struct TimeRange {
    double lo = 0.0;
    double hi = 0.0;
    bool lower_bound = false;

    bool is_single() const {
        return !lower_bound && lo == hi;
    }
    /// Midpoint of a range; lo for a lower bound.
    double nominal() const {
        return lower_bound ? lo : 0.5 * (lo + hi);
    }
    std::string to_string() const;
};

/// One row of the hardware tables. Times in microseconds.
struct HardwarePreset {
    std::string platform;
    std::string name;
    std::optional<TimeRange> t1;
    std::optional<TimeRange> t2;
    std::optional<TimeRange> t2star;
    std::optional<TimeRange> t2hahn;
};

/// Lines are "platform | name | a | b | c" with "#" comments and blank lines
/// ignored. For "superconducting" rows a, b, c are T1, T2, T2*; for
/// "semiconductor" rows they are T1, T2*, T2 Hahn. "-" marks an absent value.
/// Values are microseconds unless suffixed with "ms" or "us".
///
/// Throws std::invalid_argument naming the line and field on malformed input,
/// or when T1, T2 and T2* disagree with 1/T2 = 1/T2* + 1/(2 T1) by more than 15%.
std::vector<HardwarePreset> load_presets(std::istream &in);
std::vector<HardwarePreset> load_presets_file(const std::string &path);

/// The bundled table rows, compiled in.
std::vector<HardwarePreset> bundled_presets();
const std::string &bundled_presets_text();

}  // namespace repmem

#endif

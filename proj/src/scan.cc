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

#include "repmem/scan.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace repmem {

namespace {

constexpr double kTieTolerance = 1e-14;

ProtocolSpec one_cycle(Decomposition decomposition, const ClosedFormParams &p) {
    ProtocolSpec spec;
    spec.code = CodeKind::PhaseFlip;
    spec.n = 3;
    spec.decomposition = decomposition;
    spec.cycles = 1;
    spec.t1 = p.t1;
    spec.t2star = p.t2star;
    spec.t_tot = p.t;
    return spec;
}

void require_nonempty(const std::vector<double> &grid, const char *name) {
    if (grid.empty()) {
        throw std::invalid_argument(std::string(name) + " grid is empty");
    }
}

}  // namespace

std::vector<GateContribution> gate_contributions(Decomposition decomposition, const ClosedFormParams &p) {
    p.validate();
    ProtocolSpec spec = one_cycle(decomposition, p);
    Circuit circuit = build_cycle(spec.code, spec.n, decomposition);
    double clean = average_fidelity(spec);

    std::vector<GateContribution> out;
    auto gates = circuit.gates();
    for (std::size_t i = 0; i < gates.size(); i++) {
        const Gate &g = *gates[i];
        double drop = 0.0;
        if (g.gate_class != GateClass::Noiseless) {
            RunOptions options;
            options.only_faulty_gate = i;
            options.fault_probability = 1.0;
            drop = clean - average_fidelity(spec, options);
        }
        out.push_back(GateContribution{g.name, g.targets, g.gate_class, drop});
    }
    return out;
}

GateErrorCoefficients extract_linear_coefficients(Decomposition decomposition, const ClosedFormParams &p) {
    GateErrorCoefficients k;
    for (const auto &c : gate_contributions(decomposition, p)) {
        if (c.gate_class == GateClass::OneQubit) {
            k.f1 += c.drop;
        } else if (c.gate_class == GateClass::TwoQubit) {
            k.f2 += c.drop;
        }
    }
    return k;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0 && hi >= lo) || std::isinf(hi)) {
        throw std::invalid_argument("log grid needs 0 < lo <= hi < inf");
    }
    if (count == 0) {
        return {};
    }
    if (count == 1) {
        return {lo};
    }
    std::vector<double> out(count);
    double a = std::log(lo);
    double b = std::log(hi);
    for (std::size_t i = 0; i < count; i++) {
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::string ScanResult::to_csv() const {
    std::ostringstream os;
    os << x.name << ',' << y.name << ',' << optimum_name << ",f_best,f_idle\n";
    for (const auto &c : cells) {
        os << format_significant(c.x, 12) << ',' << format_significant(c.y, 12) << ',' << c.optimum << ','
           << format_significant(c.f_best, 12) << ',' << format_significant(c.f_idle, 12) << '\n';
    }
    return os.str();
}

std::string ScanResult::to_json() const {
    // Numbers go through the same 12-digit formatting as the CSV.
    auto num = [](double v) { return nlohmann::json::parse(format_significant(v, 12)); };
    nlohmann::json axes = nlohmann::json::array();
    for (const auto *axis : {&x, &y}) {
        nlohmann::json values = nlohmann::json::array();
        for (double v : axis->values) {
            values.push_back(num(v));
        }
        axes.push_back({{"name", axis->name}, {"values", values}});
    }
    nlohmann::json cells_json = nlohmann::json::array();
    for (const auto &c : cells) {
        nlohmann::json row;
        row[x.name] = num(c.x);
        row[y.name] = num(c.y);
        row[optimum_name] = c.optimum;
        row["f_best"] = num(c.f_best);
        row["f_idle"] = num(c.f_idle);
        cells_json.push_back(std::move(row));
    }
    nlohmann::json doc;
    doc["axes"] = std::move(axes);
    doc["cells"] = std::move(cells_json);
    return doc.dump(1) + "\n";
}

ScanResult scan_fig3(const Fig3Grid &grid) {
    require_nonempty(grid.t1_over_t2star, "t1");
    require_nonempty(grid.t_over_t2star, "t");
    if (grid.n_max % 2 == 0) {
        throw std::invalid_argument("n_max must be odd");
    }
    ScanResult r;
    r.x = {"t1_over_t2star", grid.t1_over_t2star};
    r.y = {"t_over_t2star", grid.t_over_t2star};
    r.optimum_name = "n_opt";
    for (double t1 : grid.t1_over_t2star) {
        for (double t : grid.t_over_t2star) {
            ClosedFormParams p{t1, 1.0, t};
            auto best = optimal_code_size(p, grid.n_max);
            r.cells.push_back(ScanCell{t1, t, best.n, best.fidelity, f_idle(p)});
        }
    }
    return r;
}

ScanResult scan_fig4(const Fig4Grid &grid) {
    require_nonempty(grid.t1_over_t2star, "t1");
    require_nonempty(grid.p2, "p2");
    if (grid.n_max < 1) {
        throw std::invalid_argument("N_max must be at least 1");
    }
    if (!(grid.t_tot >= 0.0) || std::isinf(grid.t_tot)) {
        throw std::invalid_argument("t_tot must be finite and non-negative");
    }
    ScanResult r;
    r.x = {"t1_over_t2star", grid.t1_over_t2star};
    r.y = {"p2", grid.p2};
    r.optimum_name = "n_cycles_opt";
    for (double t1 : grid.t1_over_t2star) {
        double idle = f_idle(ClosedFormParams{t1, 1.0, grid.t_tot});
        for (double p2 : grid.p2) {
            ScanCell cell{t1, p2, 0, idle, idle};
            for (std::size_t n = 1; n <= grid.n_max; n++) {
                ProtocolSpec spec;
                spec.code = CodeKind::PhaseFlip;
                spec.n = 3;
                spec.decomposition = grid.decomposition;
                spec.cycles = n;
                spec.reset = true;
                spec.t1 = t1;
                spec.t2star = 1.0;
                spec.t_tot = grid.t_tot;
                spec.p1 = grid.p1;
                spec.p2 = p2;
                double f = average_fidelity_via_transfer(spec);
                if (f > cell.f_best + kTieTolerance) {
                    cell.optimum = n;
                    cell.f_best = f;
                }
            }
            r.cells.push_back(cell);
        }
    }
    return r;
}

}  // namespace repmem

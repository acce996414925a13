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

// Thin Python surface over the closed forms, the simulator and the scans.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "repmem/analytic.h"
#include "repmem/circuits.h"
#include "repmem/scan.h"

namespace py = pybind11;
using namespace repmem;

namespace {

ClosedFormParams params(double t1, double t2star, double t) {
    ClosedFormParams p{t1, t2star, t};
    p.validate();
    return p;
}

py::dict scan_to_dict(const ScanResult &r) {
    py::list cells;
    for (const auto &c : r.cells) {
        py::dict d;
        d[py::str(r.x.name)] = c.x;
        d[py::str(r.y.name)] = c.y;
        d[py::str(r.optimum_name)] = c.optimum;
        d["f_best"] = c.f_best;
        d["f_idle"] = c.f_idle;
        cells.append(d);
    }
    py::dict out;
    out["x"] = py::make_tuple(r.x.name, r.x.values);
    out["y"] = py::make_tuple(r.y.name, r.y.values);
    out["cells"] = cells;
    return out;
}

py::object range_or_none(const std::optional<TimeRange> &r) {
    if (!r) {
        return py::none();
    }
    return py::make_tuple(r->lo, r->hi, r->lower_bound);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Repetition-code quantum memory: closed forms and density-matrix simulation.";
    m.attr("NO_DECAY") = kNoDecay;

    auto closed = [&](const char *name, double (*f)(const ClosedFormParams &)) {
        m.def(
            name, [f](double t, double t1, double t2star) { return f(params(t1, t2star, t)); }, py::arg("t"),
            py::arg("t1") = kNoDecay, py::arg("t2star") = 1.0);
    };
    closed("f_idle", f_idle);
    closed("f_bit", f_bit);
    closed("f_phase", f_phase);
    closed("f_phase_reset_limit", f_phase_reset_limit);
    closed("f_phase_noreset_2", f_phase_noreset_2);

    m.def(
        "f_phase_n", [](std::size_t n, double t, double t1, double t2star) { return f_phase_n(n, params(t1, t2star, t)); },
        py::arg("n"), py::arg("t"), py::arg("t1") = kNoDecay, py::arg("t2star") = 1.0);
    m.def(
        "f_phase_reset",
        [](std::size_t cycles, double t, double t1, double t2star) {
            return f_phase_reset(cycles, params(t1, t2star, t));
        },
        py::arg("cycles"), py::arg("t"), py::arg("t1") = kNoDecay, py::arg("t2star") = 1.0);
    m.def(
        "gate_error_coefficients",
        [](const std::string &decomp, double t, double t1, double t2star) {
            auto k = gate_error_coefficients(parse_decomposition(decomp), params(t1, t2star, t));
            return py::make_tuple(k.f1, k.f2);
        },
        py::arg("decomposition"), py::arg("t"), py::arg("t1") = kNoDecay, py::arg("t2star") = 1.0);
    m.def(
        "breakeven",
        [](const std::string &decomp, double t, double t1, double t2star) {
            auto line = breakeven_inequality(parse_decomposition(decomp), params(t1, t2star, t));
            return py::make_tuple(line.c0, line.c1, line.to_string());
        },
        py::arg("decomposition"), py::arg("t"), py::arg("t1") = kNoDecay, py::arg("t2star") = 1.0,
        "Returns (c0, c1, text) for the break-even line p2 < c0 - c1*p1.");
    m.def(
        "optimal_code_size",
        [](double t, double t1, double t2star, std::size_t n_max) {
            auto c = optimal_code_size(params(t1, t2star, t), n_max);
            return py::make_tuple(c.n, c.fidelity);
        },
        py::arg("t"), py::arg("t1") = kNoDecay, py::arg("t2star") = 1.0, py::arg("n_max") = 9);

    m.def(
        "simulate",
        [](const std::string &code, const std::string &decomp, std::size_t n, std::size_t cycles, bool reset,
           double t1, double t2star, double t_tot, double p1, double p2) {
            ProtocolSpec s;
            s.code = parse_code_kind(code);
            s.decomposition = parse_decomposition(decomp);
            s.n = n;
            s.cycles = cycles;
            s.reset = reset;
            s.t1 = t1;
            s.t2star = t2star;
            s.t_tot = t_tot;
            s.p1 = p1;
            s.p2 = p2;
            py::gil_scoped_release release;
            return average_fidelity(s);
        },
        py::arg("code") = "phase", py::arg("decomposition") = "ideal", py::arg("n") = 3, py::arg("cycles") = 1,
        py::arg("reset") = true, py::arg("t1") = kNoDecay, py::arg("t2star") = 1.0, py::arg("t_tot") = 0.0,
        py::arg("p1") = 0.0, py::arg("p2") = 0.0, "Average fidelity of the simulated memory.");
    m.def(
        "extract_coefficients",
        [](const std::string &decomp, double t, double t1, double t2star) {
            auto k = extract_linear_coefficients(parse_decomposition(decomp), params(t1, t2star, t));
            return py::make_tuple(k.f1, k.f2);
        },
        py::arg("decomposition"), py::arg("t"), py::arg("t1") = kNoDecay, py::arg("t2star") = 1.0);

    m.def(
        "scan_fig3",
        [](std::vector<double> t1_over_t2star, std::vector<double> t_over_t2star, std::size_t n_max) {
            Fig3Grid g;
            if (!t1_over_t2star.empty()) g.t1_over_t2star = std::move(t1_over_t2star);
            if (!t_over_t2star.empty()) g.t_over_t2star = std::move(t_over_t2star);
            g.n_max = n_max;
            return scan_to_dict(scan_fig3(g));
        },
        py::arg("t1_over_t2star") = std::vector<double>{}, py::arg("t_over_t2star") = std::vector<double>{},
        py::arg("n_max") = 9);
    m.def(
        "scan_fig4",
        [](double t_tot, std::vector<double> t1_over_t2star, std::vector<double> p2, std::size_t n_max) {
            Fig4Grid g;
            g.t_tot = t_tot;
            if (!t1_over_t2star.empty()) g.t1_over_t2star = std::move(t1_over_t2star);
            if (!p2.empty()) g.p2 = std::move(p2);
            g.n_max = n_max;
            ScanResult r;
            {
                py::gil_scoped_release release;
                r = scan_fig4(g);
            }
            return scan_to_dict(r);
        },
        py::arg("t_tot") = 1.0, py::arg("t1_over_t2star") = std::vector<double>{}, py::arg("p2") = std::vector<double>{},
        py::arg("n_max") = 8);

    m.def("presets", [] {
        py::list out;
        for (const auto &p : bundled_presets()) {
            py::dict d;
            d["platform"] = p.platform;
            d["name"] = p.name;
            d["t1"] = range_or_none(p.t1);
            d["t2"] = range_or_none(p.t2);
            d["t2star"] = range_or_none(p.t2star);
            d["t2hahn"] = range_or_none(p.t2hahn);
            out.append(d);
        }
        return out;
    });
}

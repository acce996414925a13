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

#include "repmem/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "repmem/analytic.h"
#include "repmem/scan.h"

namespace repmem {

namespace {

constexpr double kOracleTolerance = 1e-10;
constexpr double kOrderingSlack = 1e-12;
constexpr std::size_t kRandomPoints = 100;

std::string fmt(double v, int digits = 6) {
    return format_significant(v, digits);
}

// Largest |a - b| over a set of comparisons.
class MaxError {
   public:
    void add(double a, double b) {
        double e = std::abs(a - b);
        if (!(e <= worst_)) {
            worst_ = e;
        }
        count_++;
    }
    CheckResult check(const std::string &name, double tolerance) const {
        bool ok = worst_ <= tolerance && count_ > 0;
        return {name, ok, "max |diff| = " + fmt(worst_, 3) + " over " + std::to_string(count_) + " points (tol " +
                              fmt(tolerance, 2) + ")"};
    }

   private:
    double worst_ = 0.0;
    std::size_t count_ = 0;
};

struct RandomParams {
    std::mt19937_64 rng;

    explicit RandomParams(unsigned long seed) : rng(seed) {
    }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    // T1 is occasionally the no-decay sentinel.
    double t1() {
        return uniform(0.0, 1.0) < 0.15 ? kNoDecay : log_uniform(0.3, 30.0);
    }
    double t2star() {
        return log_uniform(0.3, 3.0);
    }
    double t() {
        return uniform(0.0, 2.0);
    }
};

ProtocolSpec ideal_spec(CodeKind code, std::size_t n, double t1, double t2star, double t_tot) {
    ProtocolSpec s;
    s.code = code;
    s.n = n;
    s.decomposition = Decomposition::Ideal;
    s.t1 = t1;
    s.t2star = t2star;
    s.t_tot = t_tot;
    return s;
}

std::string describe_cells(const std::vector<std::string> &bad, std::size_t total) {
    std::string out = std::to_string(bad.size()) + " of " + std::to_string(total) + " cells violate";
    for (std::size_t i = 0; i < bad.size() && i < 4; i++) {
        out += (i == 0 ? ": " : "; ") + bad[i];
    }
    if (bad.size() > 4) {
        out += "; ...";
    }
    return out;
}

CriterionReport criterion_oracle_equivalence() {
    CriterionReport r{1, "simulated average fidelity equals the closed forms (no gate errors)", {}};
    RandomParams rp(0x5eed0001);
    MaxError idle, bit, phase, noreset;
    MaxError phase_n[4];
    MaxError reset[4];
    const std::size_t code_sizes[] = {1, 3, 5, 7};
    for (std::size_t i = 0; i < kRandomPoints; i++) {
        double t1 = rp.t1();
        double t2s = rp.t2star();
        double t = rp.t();
        ClosedFormParams p{t1, t2s, t};
        idle.add(average_fidelity(ideal_spec(CodeKind::PhaseFlip, 1, t1, t2s, t)), f_idle(p));
        bit.add(average_fidelity(ideal_spec(CodeKind::BitFlip, 3, t1, t2s, t)), f_bit(p));
        phase.add(average_fidelity(ideal_spec(CodeKind::PhaseFlip, 3, t1, t2s, t)), f_phase(p));
        for (std::size_t k = 0; k < 4; k++) {
            std::size_t n = code_sizes[k];
            phase_n[k].add(average_fidelity(ideal_spec(CodeKind::PhaseFlip, n, t1, t2s, t)), f_phase_n(n, p));
        }
        for (std::size_t cycles = 1; cycles <= 4; cycles++) {
            auto s = ideal_spec(CodeKind::PhaseFlip, 3, t1, t2s, t);
            s.cycles = cycles;
            s.reset = true;
            reset[cycles - 1].add(average_fidelity(s), f_phase_reset(cycles, p));
        }
        auto s = ideal_spec(CodeKind::PhaseFlip, 3, t1, t2s, t);
        s.cycles = 2;
        s.reset = false;
        noreset.add(average_fidelity(s), f_phase_noreset_2(p));
    }
    r.checks.push_back(idle.check("idle qubit", kOracleTolerance));
    r.checks.push_back(bit.check("bit-flip, one cycle", kOracleTolerance));
    r.checks.push_back(phase.check("phase-flip, one cycle", kOracleTolerance));
    for (std::size_t k = 0; k < 4; k++) {
        r.checks.push_back(
            phase_n[k].check("n-qubit phase-flip, n = " + std::to_string(code_sizes[k]), kOracleTolerance));
    }
    for (std::size_t k = 0; k < 4; k++) {
        r.checks.push_back(reset[k].check("reset protocol, N = " + std::to_string(k + 1), kOracleTolerance));
    }
    r.checks.push_back(noreset.check("two cycles without reset", kOracleTolerance));
    return r;
}

CheckResult rounds_to(const std::string &name, double value, const std::string &expected) {
    std::string got = format_significant(value, 2);
    return {name, got == expected, "value " + fmt(value, 12) + " -> " + got + " (expected " + expected + ")"};
}

CriterionReport criterion_published_numbers() {
    CriterionReport r{2, "published idle fidelities and break-even lines (T1 = inf, T2* = 1)", {}};
    r.checks.push_back(rounds_to("idle fidelity at t = 0.1", f_idle({kNoDecay, 1.0, 0.1}), "0.97"));
    r.checks.push_back(rounds_to("idle fidelity at t = 1", f_idle({kNoDecay, 1.0, 1.0}), "0.79"));
    struct Expected {
        double t;
        const char *c0;
        const char *c1;
    };
    for (auto e : {Expected{0.1, "0.0067", "1.1"}, Expected{1.0, "0.019", "1.3"}}) {
        auto line = breakeven_inequality(Decomposition::Cscz, {kNoDecay, 1.0, e.t});
        std::string c0 = format_significant(line.c0, 2);
        std::string c1 = format_significant(line.c1, 2);
        r.checks.push_back({"cscz break-even line at t = " + fmt(e.t), c0 == e.c0 && c1 == e.c1,
                            line.to_string() + " (c0 = " + fmt(line.c0, 12) + ", c1 = " + fmt(line.c1, 12) +
                                "; expected p2 < " + e.c0 + " - " + e.c1 + "*p1)"});
    }
    return r;
}

CriterionReport criterion_gate_coefficients() {
    CriterionReport r{3, "gate-error coefficients from single-faulty-gate extraction", {}};
    const double f1_cscz0 = 40.0 / 9.0;
    const double f2_0 = 184.0 / 45.0;

    auto cscz0 = extract_linear_coefficients(Decomposition::Cscz, {kNoDecay, 1.0, 0.0});
    r.checks.push_back({"cscz at t = 0: f1 = 40/9, f2 = 184/45",
                        std::abs(cscz0.f1 - f1_cscz0) < kOracleTolerance && std::abs(cscz0.f2 - f2_0) < kOracleTolerance,
                        "f1 = " + fmt(cscz0.f1, 12) + ", f2 = " + fmt(cscz0.f2, 12)});

    RandomParams rp(0x5eed0003);
    MaxError f1_err, f2_err;
    for (int i = 0; i < 20; i++) {
        ClosedFormParams p{rp.t1(), rp.t2star(), rp.t()};
        auto numeric = extract_linear_coefficients(Decomposition::Cscz, p);
        auto closed = gate_error_coefficients(Decomposition::Cscz, p);
        f1_err.add(numeric.f1, closed.f1);
        f2_err.add(numeric.f2, closed.f2);
    }
    r.checks.push_back(f1_err.check("cscz f1 matches the closed form at random points", kOracleTolerance));
    r.checks.push_back(f2_err.check("cscz f2 matches the closed form at random points", kOracleTolerance));

    auto cnot0 = extract_linear_coefficients(Decomposition::Cnot, {kNoDecay, 1.0, 0.0});
    bool twenty = std::abs(cnot0.f1 - 20.0 / 3.0) < kOracleTolerance;
    bool ten = std::abs(cnot0.f1 - 10.0 / 3.0) < kOracleTolerance;
    std::string which = twenty ? "20/3 (closed-form value; the prose value 10/3 is not reproduced)"
                               : (ten ? "10/3 (prose value; the closed form gives 20/3)" : "neither 10/3 nor 20/3");
    r.checks.push_back({"cnot at t = 0: f2 = 184/45 and f1 resolves to a published value",
                        std::abs(cnot0.f2 - f2_0) < kOracleTolerance && (twenty || ten),
                        "f1 = " + fmt(cnot0.f1, 12) + " = " + which + ", f2 = " + fmt(cnot0.f2, 12)});

    MaxError cnot_err;
    for (int i = 0; i < 20; i++) {
        ClosedFormParams p{rp.t1(), rp.t2star(), rp.t()};
        auto numeric = extract_linear_coefficients(Decomposition::Cnot, p);
        auto closed = gate_error_coefficients(Decomposition::Cnot, p);
        cnot_err.add(numeric.f1, closed.f1);
        cnot_err.add(numeric.f2, closed.f2);
    }
    r.checks.push_back(cnot_err.check("cnot f1, f2 match the closed form at random points", kOracleTolerance));

    // Central differences of an independently written evolution.
    const double h = 1e-4;
    MaxError fd_err;
    for (auto d : {Decomposition::Cscz, Decomposition::Cnot}) {
        for (int i = 0; i < 4; i++) {
            ClosedFormParams p{rp.t1(), rp.t2star(), rp.t()};
            auto numeric = extract_linear_coefficients(d, p);
            double f1 = -(affine_noise_fidelity(d, p.t1, p.t2star, p.t, h, 0.0) -
                          affine_noise_fidelity(d, p.t1, p.t2star, p.t, -h, 0.0)) /
                        (2.0 * h);
            double f2 = -(affine_noise_fidelity(d, p.t1, p.t2star, p.t, 0.0, h) -
                          affine_noise_fidelity(d, p.t1, p.t2star, p.t, 0.0, -h)) /
                        (2.0 * h);
            fd_err.add(numeric.f1, f1);
            fd_err.add(numeric.f2, f2);
        }
    }
    r.checks.push_back(fd_err.check("extraction equals central finite differences (step 1e-4)", 1e-6));
    return r;
}

CriterionReport criterion_structure() {
    CriterionReport r{4, "structural orderings of the closed forms and the simulator", {}};

    double worst = -1.0;
    std::size_t cells = 0;
    for (double t1 : log_grid(0.1, 100.0, 20)) {
        for (double t2s : log_grid(0.1, 100.0, 20)) {
            for (double t : {0.01, 0.1, 0.5, 1.0, 3.0}) {
                ClosedFormParams p{t1, t2s, t};
                worst = std::max(worst, f_bit(p) - f_idle(p));
                cells++;
            }
        }
    }
    r.checks.push_back({"bit-flip never beats the idle qubit", worst <= kOrderingSlack,
                        "max(f_bit - f_idle) = " + fmt(worst, 3) + " over " + std::to_string(cells) + " cells"});

    std::vector<std::string> bad;
    bool any_win = false;
    cells = 0;
    std::vector<double> ratios = log_grid(0.5, 8.0, 25);
    ratios.push_back(2.0);
    for (double ratio : ratios) {
        for (double t2s : {0.5, 1.0, 2.0}) {
            for (double t : log_grid(0.01, 3.0, 20)) {
                ClosedFormParams p{ratio * t2s, t2s, t * t2s};
                double gain = f_phase(p) - f_idle(p);
                cells++;
                if (ratio <= 2.0 && gain > kOrderingSlack) {
                    bad.push_back("T1/T2* = " + fmt(ratio, 4) + ", t/T2* = " + fmt(t, 4) + ", gain " + fmt(gain, 3));
                }
                any_win = any_win || (ratio > 2.0 && gain > 0.0);
            }
        }
    }
    r.checks.push_back({"phase-flip beats idle only when T1 > 2 T2*", bad.empty() && any_win,
                        (bad.empty() ? std::string("no win with T1 <= 2 T2*") : describe_cells(bad, cells)) +
                            (any_win ? "; wins exist with T1 > 2 T2*" : "; no win anywhere")});

    double rise = -1.0;
    cells = 0;
    for (double t1 : log_grid(0.2, 200.0, 15)) {
        for (double t : log_grid(0.01, 5.0, 15)) {
            ClosedFormParams p{t1, 1.0, t};
            for (std::size_t n = 1; n < 10; n++) {
                rise = std::max(rise, f_phase_reset(n, p) - f_phase_reset(n + 1, p));
                cells++;
            }
        }
    }
    double sim_rise = -1.0;
    for (double t1 : {0.5, 2.0, 10.0, kNoDecay}) {
        for (double t : {0.1, 1.0}) {
            double prev = 0.0;
            for (std::size_t n = 1; n <= 6; n++) {
                auto s = ideal_spec(CodeKind::PhaseFlip, 3, t1, 1.0, t);
                s.cycles = n;
                double f = average_fidelity_via_transfer(s);
                if (n > 1) {
                    sim_rise = std::max(sim_rise, prev - f);
                }
                prev = f;
            }
        }
    }
    r.checks.push_back({"reset fidelity non-decreasing in N", rise <= kOrderingSlack && sim_rise <= kOrderingSlack,
                        "closed form: max F(N) - F(N+1) = " + fmt(rise, 3) + " over " + std::to_string(cells) +
                            " steps; simulated: " + fmt(sim_rise, 3)});

    worst = -1.0;
    cells = 0;
    for (double t1 : log_grid(0.1, 100.0, 20)) {
        for (double t2s : log_grid(0.1, 10.0, 10)) {
            for (double t : log_grid(0.01, 5.0, 10)) {
                ClosedFormParams p{t1, t2s, t};
                worst = std::max(worst, f_phase_noreset_2(p) - f_phase(p));
                cells++;
            }
        }
    }
    double sim_worst = -1.0;
    for (double t1 : {0.5, 3.0, kNoDecay}) {
        for (double t : {0.2, 1.5}) {
            auto one = ideal_spec(CodeKind::PhaseFlip, 3, t1, 1.0, t);
            auto two = one;
            two.cycles = 2;
            two.reset = false;
            sim_worst = std::max(sim_worst, average_fidelity(two) - average_fidelity(one));
        }
    }
    r.checks.push_back({"two cycles without reset never beat one cycle", worst <= kOrderingSlack && sim_worst <= kOrderingSlack,
                        "closed form: max(F2 - F1) = " + fmt(worst, 3) + " over " + std::to_string(cells) +
                            " cells; simulated: " + fmt(sim_worst, 3)});
    return r;
}

CriterionReport criterion_fig3() {
    CriterionReport r{5, "optimal code size map (default grid)", {}};
    ScanResult scan = scan_fig3();
    std::vector<std::string> low_t1;
    std::vector<std::string> long_codes;
    std::size_t coded = 0;
    for (const auto &c : scan.cells) {
        std::string where = "T1 = " + fmt(c.x, 4) + ", t = " + fmt(c.y, 4) + ", n = " + std::to_string(c.optimum);
        if (c.x <= 2.0 && c.optimum != 1) {
            low_t1.push_back(where);
        }
        if (c.optimum > 3 && !(c.x > 5.0)) {
            long_codes.push_back(where);
        }
        if (c.x > 2.0 && c.optimum >= 3) {
            coded++;
        }
    }
    r.checks.push_back({"n_opt = 1 wherever T1 <= 2 T2*", low_t1.empty(), describe_cells(low_t1, scan.cells.size())});
    r.checks.push_back({"n_opt >= 3 somewhere with T1 > 2 T2*", coded > 0, std::to_string(coded) + " cells"});
    r.checks.push_back({"n_opt > 3 only where T1 > 5 T2*", long_codes.empty(), describe_cells(long_codes, scan.cells.size())});
    return r;
}

CriterionReport criterion_fig4(std::ostream *progress) {
    CriterionReport r{6, "optimal cycle count map (default grid, cscz, p1 = 0)", {}};
    for (double t_tot : {0.1, 1.0}) {
        std::string tag = " (t_tot = " + fmt(t_tot) + " T2*)";
        if (progress) {
            *progress << "  scanning cycle counts" << tag << "\n";
        }
        Fig4Grid grid;
        grid.t_tot = t_tot;
        ScanResult scan = scan_fig4(grid);
        Fig4Grid edge_grid = grid;
        edge_grid.p2 = {0.0};
        ScanResult edge = scan_fig4(edge_grid);

        std::vector<std::string> low_t1;
        for (const auto *s : {&scan, &edge}) {
            for (const auto &c : s->cells) {
                if (c.x <= 2.0 && c.optimum != 0) {
                    low_t1.push_back("T1 = " + fmt(c.x, 4) + ", p2 = " + fmt(c.y, 3) + ": N = " +
                                     std::to_string(c.optimum) + ", F_N - F_idle = " + fmt(c.f_best - c.f_idle, 3));
                }
            }
        }
        r.checks.push_back({"N = 0 wherever T1 <= 2 T2*" + tag, low_t1.empty(),
                            describe_cells(low_t1, scan.cells.size() + edge.cells.size())});

        std::vector<std::string> edge_bad;
        for (const auto &c : edge.cells) {
            if (c.x > 2.0 && c.optimum != grid.n_max) {
                edge_bad.push_back("T1 = " + fmt(c.x, 4) + ": N = " + std::to_string(c.optimum));
            }
        }
        r.checks.push_back({"N = N_max along p2 = 0 for T1 > 2 T2*" + tag, edge_bad.empty(),
                            describe_cells(edge_bad, edge.cells.size())});

        std::vector<std::string> rising;
        for (std::size_t i = 0; i < grid.t1_over_t2star.size(); i++) {
            for (std::size_t j = 1; j < grid.p2.size(); j++) {
                if (scan.at(i, j).optimum > scan.at(i, j - 1).optimum) {
                    rising.push_back("T1 = " + fmt(scan.at(i, j).x, 4) + ", p2 = " + fmt(scan.at(i, j).y, 3));
                }
            }
        }
        r.checks.push_back({"optimal N non-increasing in p2" + tag, rising.empty(), describe_cells(rising, scan.cells.size())});
    }
    return r;
}

ComplexMatrix random_density_matrix(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> g;
    ComplexMatrix a(dim, dim);
    for (std::size_t i = 0; i < dim; i++) {
        for (std::size_t j = 0; j < dim; j++) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

CriterionReport criterion_channels() {
    CriterionReport r{7, "channel construction and the six-state average", {}};
    RandomParams rp(0x5eed0007);

    double worst = 0.0;
    std::size_t channels = 0;
    auto track = [&](const KrausChannel &ch) {
        worst = std::max(worst, ch.completeness_error());
        channels++;
    };
    for (int i = 0; i < 50; i++) {
        track(damping_channel(rp.t1(), rp.t2star(), rp.log_uniform(1e-3, 50.0)));
    }
    track(damping_channel(kNoDecay, kNoDecay, 1.0));
    for (double p : {0.0, 0.01, 0.1, 0.5, 0.75, 1.0}) {
        track(depolarizing_1q(p));
        track(depolarizing_2q(p));
    }
    r.checks.push_back({"completeness of every constructed channel", worst <= kStateTolerance,
                        "max |sum E^dagger E - I| = " + fmt(worst, 3) + " over " + std::to_string(channels) + " channels"});

    MaxError entry;
    const QubitIndex q0[] = {0};
    for (int i = 0; i < 100; i++) {
        double t1 = rp.t1();
        double t2s = rp.t2star();
        double t = rp.log_uniform(1e-3, 10.0);
        ComplexMatrix rho = random_density_matrix(rp.rng, 2);
        ComplexMatrix out = apply_channel(DensityMatrix(rho), damping_channel(t1, t2s, t), q0).matrix();
        double g1 = std::exp(-t / t1);
        double g2 = std::exp(-t / combined_t2(t1, t2s));
        ComplexMatrix expected(2, 2);
        expected << rho(0, 0) + (1.0 - g1) * rho(1, 1), g2 * rho(0, 1), g2 * rho(1, 0), g1 * rho(1, 1);
        for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
                entry.add(std::abs(out(a, b) - expected(a, b)), 0.0);
            }
        }
    }
    r.checks.push_back(entry.check("damping reproduces the single-qubit decay map entrywise", kStateTolerance));

    // Five protocols with every noise source switched on.
    struct Case {
        CodeKind code;
        std::size_t n;
        Decomposition d;
        std::size_t cycles;
        bool reset;
    };
    const Case cases[] = {
        {CodeKind::PhaseFlip, 3, Decomposition::Cscz, 2, true},  {CodeKind::PhaseFlip, 3, Decomposition::Cnot, 1, true},
        {CodeKind::BitFlip, 3, Decomposition::Cnot, 2, false},   {CodeKind::PhaseFlip, 3, Decomposition::Ideal, 3, false},
        {CodeKind::BitFlip, 1, Decomposition::Ideal, 1, true},
    };
    int inside = 0;
    std::string detail;
    unsigned long seed = 0x5eed1000;
    for (const auto &c : cases) {
        ProtocolSpec s;
        s.code = c.code;
        s.n = c.n;
        s.decomposition = c.d;
        s.cycles = c.cycles;
        s.reset = c.reset;
        s.t1 = rp.log_uniform(0.5, 20.0);
        s.t2star = rp.t2star();
        s.t_tot = rp.uniform(0.2, 2.0);
        s.p1 = rp.uniform(0.0, 0.05);
        s.p2 = rp.uniform(0.0, 0.05);
        double exact = average_fidelity(s);
        auto mc = monte_carlo_average_fidelity(s, 10000, seed++);
        double z = std::abs(exact - mc.mean) / mc.standard_error;
        if (z <= 3.0) {
            inside++;
        }
        detail += (detail.empty() ? "" : "; ") + fmt(exact, 8) + " vs " + fmt(mc.mean, 8) + " (" + fmt(z, 2) + " SE)";
    }
    r.checks.push_back({"six-state average within 3 SE of a 10^4-sample Bloch average, 5 protocols", inside == 5, detail});
    return r;
}

CriterionReport criterion_limit() {
    CriterionReport r{8, "many-cycle limit of the reset protocol", {}};
    RandomParams rp(0x5eed0008);
    MaxError err;
    for (int i = 0; i < 10; i++) {
        ClosedFormParams p{rp.log_uniform(0.5, 50.0), rp.t2star(), rp.uniform(0.05, 2.0)};
        err.add(f_phase_reset(10000, p), f_phase_reset_limit(p));
    }
    r.checks.push_back(err.check("F(N = 10^4) within 1e-3 of (2 + exp(-3 t_tot / T1)) / 3", 1e-3));
    return r;
}

}  // namespace

bool CriterionReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

double affine_noise_fidelity(Decomposition decomposition, double t1, double t2star, double t, double p1, double p2) {
    const ComplexMatrix paulis[] = {gates::identity(2), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()};
    std::vector<ComplexMatrix> one_q(paulis + 1, paulis + 4);
    std::vector<ComplexMatrix> two_q;
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            if (a != 0 || b != 0) {
                two_q.push_back(kron(paulis[a], paulis[b]));
            }
        }
    }
    Circuit circuit = build_cycle(CodeKind::PhaseFlip, 3, decomposition);
    KrausChannel damping = damping_channel(t1, t2star, t);
    const QubitIndex data[] = {0};
    double sum = 0.0;
    auto states = bloch_2design_states();
    for (const auto &psi : states) {
        ComplexMatrix rho = kron(DensityMatrix::from_pure(psi).matrix(), DensityMatrix::ground(2).matrix());
        for (const auto &seg : circuit.segments) {
            if (const auto *g = std::get_if<Gate>(&seg)) {
                const ComplexMatrix u[] = {g->unitary};
                rho = sandwich_sum(rho, u, g->targets);
                if (g->gate_class == GateClass::OneQubit && p1 != 0.0) {
                    rho = (1.0 - p1) * rho + (p1 / 3.0) * sandwich_sum(rho, one_q, g->targets);
                } else if (g->gate_class == GateClass::TwoQubit && p2 != 0.0) {
                    rho = (1.0 - p2) * rho + (p2 / 15.0) * sandwich_sum(rho, two_q, g->targets);
                }
            } else {
                for (QubitIndex q = 0; q < 3; q++) {
                    const QubitIndex target[] = {q};
                    rho = sandwich_sum(rho, damping.operators, target);
                }
            }
        }
        ComplexMatrix out = partial_trace_matrix(rho, 3, data);
        sum += psi.amplitudes().dot(out * psi.amplitudes()).real();
    }
    return sum / static_cast<double>(states.size());
}

MonteCarloEstimate monte_carlo_average_fidelity(const ProtocolSpec &spec, std::size_t samples, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const QubitIndex data[] = {0};
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t i = 0; i < samples; i++) {
        ComplexVector v(2);
        v << Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
        v.normalize();
        PureState psi(v);
        double f = fidelity(psi, partial_trace(run_protocol(spec, psi), data));
        sum += f;
        sum2 += f * f;
    }
    double n = static_cast<double>(samples);
    double mean = sum / n;
    double var = std::max(0.0, (sum2 / n - mean * mean) * n / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

std::vector<CriterionReport> run_acceptance_suite(std::ostream *progress) {
    std::vector<std::function<CriterionReport()>> steps = {
        criterion_oracle_equivalence, criterion_published_numbers, criterion_gate_coefficients, criterion_structure,
        criterion_fig3, [progress] { return criterion_fig4(progress); }, criterion_channels, criterion_limit,
    };
    std::vector<CriterionReport> out;
    for (std::size_t i = 0; i < steps.size(); i++) {
        if (progress) {
            *progress << "running criterion " << (i + 1) << "\n" << std::flush;
        }
        out.push_back(steps[i]());
    }
    return out;
}

void print_report(std::ostream &out, const std::vector<CriterionReport> &reports, bool verbose) {
    for (const auto &r : reports) {
        out << (r.passed() ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << "\n";
        for (const auto &c : r.checks) {
            if (verbose || !c.passed) {
                out << "      " << (c.passed ? "ok  " : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
            }
        }
    }
}

}  // namespace repmem

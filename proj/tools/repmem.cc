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

// repmem: command-line front end. Times are in units of your choosing (only
// ratios matter); "inf" disables relaxation or dephasing.
//
// Exit codes: 0 ok, 1 usage, 2 invalid parameters, 3 verification failed.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "repmem/analytic.h"
#include "repmem/scan.h"
#include "repmem/verify.h"

namespace {

using namespace repmem;

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

std::string num(double v) {
    return format_significant(v, 12);
}

// Accepts "inf" / "infinity" in addition to ordinary numbers.
double parse_real(const std::string &text, const std::string &flag) {
    std::string t = text;
    for (auto &c : t) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (t == "inf" || t == "infinity" || t == "+inf") {
        return kNoDecay;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size() || std::isnan(v)) {
        throw std::invalid_argument(flag + ": expected a number or 'inf', got '" + text + "'");
    }
    return v;
}

struct TimeFlags {
    std::string t1 = "inf";
    std::string t2star = "1";
    std::string t = "0";
    std::string t_flag = "--t";

    void add(CLI::App *cmd, const std::string &time_flag, const std::string &time_help) {
        t_flag = time_flag;
        cmd->add_option("--t1", t1, "relaxation time T1 ('inf' disables)")->capture_default_str();
        cmd->add_option("--t2star", t2star, "pure dephasing time T2* ('inf' disables)")->capture_default_str();
        cmd->add_option(time_flag, t, time_help)->capture_default_str();
    }
    ClosedFormParams params() const {
        ClosedFormParams p{parse_real(t1, "--t1"), parse_real(t2star, "--t2star"), parse_real(t, t_flag)};
        p.validate();
        return p;
    }
};

class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::invalid_argument("--out: cannot open '" + path + "' for writing");
            }
        }
    }
    std::ostream &stream() {
        return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout;
    }

   private:
    std::ofstream file_;
};

int run(int argc, char **argv) {
    CLI::App app{"Repetition-code quantum memory: density-matrix simulation and closed-form fidelities."};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    app.add_option("--out", out_path, "write output to this file instead of stdout");

    // analytic
    auto *analytic = app.add_subcommand("analytic", "evaluate a closed-form fidelity");
    std::string formula = "idle";
    TimeFlags a_time;
    std::size_t a_n = 3;
    std::size_t a_cycles = 1;
    std::string a_decomp = "cscz";
    std::string a_p1 = "0";
    std::string a_p2 = "0";
    analytic
        ->add_option("--formula", formula,
                     "idle | bit | phase | phase-n | reset | reset-limit | noreset2 | coefficients | phase-error | "
                     "optimal-n")
        ->check(CLI::IsMember({"idle", "bit", "phase", "phase-n", "reset", "reset-limit", "noreset2", "coefficients",
                               "phase-error", "optimal-n"}))
        ->capture_default_str();
    a_time.add(analytic, "--t", "idle time (total storage time for reset, reset-limit, noreset2)");
    analytic->add_option("--n", a_n, "code size for phase-n; largest size for optimal-n")->capture_default_str();
    analytic->add_option("--cycles", a_cycles, "number of cycles N for reset")->capture_default_str();
    analytic->add_option("--decomp", a_decomp, "cnot | cscz, for coefficients and phase-error")->capture_default_str();
    analytic->add_option("--p1", a_p1, "single-qubit gate error, for phase-error")->capture_default_str();
    analytic->add_option("--p2", a_p2, "two-qubit gate error, for phase-error")->capture_default_str();

    // simulate
    auto *simulate = app.add_subcommand("simulate", "run the density-matrix simulation and report average fidelity");
    std::string s_code = "phase";
    std::string s_decomp = "ideal";
    std::size_t s_n = 3;
    std::size_t s_cycles = 1;
    bool s_reset = true;
    TimeFlags s_time;
    std::string s_p1 = "0";
    std::string s_p2 = "0";
    bool s_extract = false;
    simulate->add_option("--code", s_code, "bit | phase")->capture_default_str();
    simulate->add_option("--decomp", s_decomp, "cnot | cscz | ideal")->capture_default_str();
    simulate->add_option("--n", s_n, "code size (odd; 1 = bare idle qubit)")->capture_default_str();
    simulate->add_option("--cycles", s_cycles, "number of cycles N")->capture_default_str();
    simulate->add_flag("--reset,!--no-reset", s_reset, "reset ancillas between cycles (default on)");
    s_time.add(simulate, "--ttot", "total storage time (each cycle idles for ttot / N)");
    simulate->add_option("--p1", s_p1, "single-qubit gate error")->capture_default_str();
    simulate->add_option("--p2", s_p2, "two-qubit gate error")->capture_default_str();
    simulate->add_flag("--extract", s_extract, "also print per-gate first-order coefficients of one cycle");

    // breakeven
    auto *breakeven = app.add_subcommand("breakeven", "gate-error region where one phase-flip cycle beats idling");
    std::string b_decomp = "cscz";
    TimeFlags b_time;
    breakeven->add_option("--decomp", b_decomp, "cnot | cscz")->capture_default_str();
    b_time.add(breakeven, "--t", "idle time");

    // scan
    auto *scan = app.add_subcommand("scan", "parameter-space maps");
    scan->require_subcommand(1);
    std::string format = "csv";
    auto *fig3 = scan->add_subcommand("fig3", "optimal phase-flip code size over (T1/T2*, t/T2*)");
    auto *fig4 = scan->add_subcommand("fig4", "optimal number of reset cycles over (T1/T2*, p2)");
    for (auto *cmd : {fig3, fig4}) {
        cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    }
    double g_t1_min = 0.5, g_t1_max = 100.0, g_t_min = 0.01, g_t_max = 3.0;
    std::size_t g_t1_points = 40, g_t_points = 40, g_n_max = 9;
    fig3->add_option("--t1-min", g_t1_min)->capture_default_str();
    fig3->add_option("--t1-max", g_t1_max)->capture_default_str();
    fig3->add_option("--t1-points", g_t1_points)->capture_default_str();
    fig3->add_option("--t-min", g_t_min)->capture_default_str();
    fig3->add_option("--t-max", g_t_max)->capture_default_str();
    fig3->add_option("--t-points", g_t_points)->capture_default_str();
    fig3->add_option("--n-max", g_n_max, "largest code size (odd)")->capture_default_str();

    Fig4Grid defaults4;
    double h_ttot = 1.0, h_t1_min = 2.0, h_t1_max = 100.0, h_p2_min = 1e-4, h_p2_max = 1e-1;
    std::size_t h_t1_points = 30, h_p2_points = 30, h_n_max = defaults4.n_max;
    std::string h_decomp = "cscz";
    std::string h_p1 = "0";
    fig4->add_option("--ttot", h_ttot, "total storage time in units of T2*")->capture_default_str();
    fig4->add_option("--t1-min", h_t1_min)->capture_default_str();
    fig4->add_option("--t1-max", h_t1_max)->capture_default_str();
    fig4->add_option("--t1-points", h_t1_points)->capture_default_str();
    fig4->add_option("--p2-min", h_p2_min)->capture_default_str();
    fig4->add_option("--p2-max", h_p2_max)->capture_default_str();
    fig4->add_option("--p2-points", h_p2_points)->capture_default_str();
    fig4->add_option("--n-max", h_n_max, "largest cycle count")->capture_default_str();
    fig4->add_option("--decomp", h_decomp, "cnot | cscz | ideal")->capture_default_str();
    fig4->add_option("--p1", h_p1, "single-qubit gate error")->capture_default_str();

    // presets
    auto *presets = app.add_subcommand("presets", "list hardware coherence times");
    std::string preset_file;
    std::string preset_format = "text";
    presets->add_option("--file", preset_file, "preset file (default: bundled table)");
    presets->add_option("--format", preset_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // verify
    auto *verify = app.add_subcommand("verify", "run the acceptance suite; exit 3 on failure");
    bool verbose = false;
    verify->add_flag("--verbose,-v", verbose, "print every check, not only failures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    Output out(out_path);
    std::ostream &os = out.stream();

    if (*analytic) {
        ClosedFormParams p = a_time.params();
        if (formula == "idle") {
            os << num(f_idle(p)) << "\n";
        } else if (formula == "bit") {
            os << num(f_bit(p)) << "\n";
        } else if (formula == "phase") {
            os << num(f_phase(p)) << "\n";
        } else if (formula == "phase-n") {
            os << num(f_phase_n(a_n, p)) << "\n";
        } else if (formula == "reset") {
            os << num(f_phase_reset(a_cycles, p)) << "\n";
        } else if (formula == "reset-limit") {
            os << num(f_phase_reset_limit(p)) << "\n";
        } else if (formula == "noreset2") {
            os << num(f_phase_noreset_2(p)) << "\n";
        } else if (formula == "coefficients") {
            auto k = gate_error_coefficients(parse_decomposition(a_decomp), p);
            os << "f1 " << num(k.f1) << "\nf2 " << num(k.f2) << "\n";
        } else if (formula == "phase-error") {
            double p1 = parse_real(a_p1, "--p1");
            double p2 = parse_real(a_p2, "--p2");
            NoiseParams{p.t1, p.t2star, p.t, p1, p2}.validate();
            os << num(f_phase_error(parse_decomposition(a_decomp), p, p1, p2)) << "\n";
        } else {
            auto best = optimal_code_size(p, a_n);
            os << "n_opt " << best.n << "\nfidelity " << num(best.fidelity) << "\n";
        }
        return 0;
    }

    if (*simulate) {
        ClosedFormParams p = s_time.params();
        ProtocolSpec spec;
        spec.code = parse_code_kind(s_code);
        spec.decomposition = parse_decomposition(s_decomp);
        spec.n = s_n;
        spec.cycles = s_cycles;
        spec.reset = s_reset;
        spec.t1 = p.t1;
        spec.t2star = p.t2star;
        spec.t_tot = p.t;
        spec.p1 = parse_real(s_p1, "--p1");
        spec.p2 = parse_real(s_p2, "--p2");
        spec.validate();
        os << num(average_fidelity(spec)) << "\n";
        if (s_extract) {
            if (spec.code != CodeKind::PhaseFlip || spec.n != 3 || spec.decomposition == Decomposition::Ideal) {
                throw std::invalid_argument("--extract needs --code phase, --n 3 and --decomp cnot or cscz");
            }
            ClosedFormParams cycle{spec.t1, spec.t2star, spec.t_idle()};
            GateErrorCoefficients total;
            std::size_t i = 0;
            for (const auto &c : gate_contributions(spec.decomposition, cycle)) {
                os << "gate " << i++ << " " << c.name << " q";
                for (std::size_t j = 0; j < c.targets.size(); j++) {
                    os << (j ? "," : "") << c.targets[j];
                }
                os << " drop " << num(c.drop) << "\n";
                (c.gate_class == GateClass::OneQubit ? total.f1 : total.f2) += c.drop;
            }
            os << "f1 " << num(total.f1) << "\nf2 " << num(total.f2) << "\n";
        }
        return 0;
    }

    if (*breakeven) {
        ClosedFormParams p = b_time.params();
        auto line = breakeven_inequality(parse_decomposition(b_decomp), p);
        os << line.to_string() << "\n";
        os << "c0 " << num(line.c0) << "\nc1 " << num(line.c1) << "\n";
        if (!line.reachable()) {
            os << "break-even unreachable: the code loses to the idle qubit even without gate errors\n";
        }
        return 0;
    }

    if (*fig3) {
        Fig3Grid grid;
        grid.t1_over_t2star = log_grid(g_t1_min, g_t1_max, g_t1_points);
        grid.t_over_t2star = log_grid(g_t_min, g_t_max, g_t_points);
        grid.n_max = g_n_max;
        auto result = scan_fig3(grid);
        os << (format == "csv" ? result.to_csv() : result.to_json());
        return 0;
    }

    if (*fig4) {
        Fig4Grid grid;
        grid.t_tot = h_ttot;
        grid.t1_over_t2star = log_grid(h_t1_min, h_t1_max, h_t1_points);
        grid.p2 = log_grid(h_p2_min, h_p2_max, h_p2_points);
        grid.n_max = h_n_max;
        grid.decomposition = parse_decomposition(h_decomp);
        grid.p1 = parse_real(h_p1, "--p1");
        auto result = scan_fig4(grid);
        os << (format == "csv" ? result.to_csv() : result.to_json());
        return 0;
    }

    if (*presets) {
        auto rows = preset_file.empty() ? bundled_presets() : load_presets_file(preset_file);
        auto cell = [](const std::optional<TimeRange> &r) { return r ? r->to_string() : std::string("-"); };
        if (preset_format == "json") {
            nlohmann::json doc = nlohmann::json::array();
            for (const auto &p : rows) {
                auto field = [](const std::optional<TimeRange> &r) -> nlohmann::json {
                    if (!r) {
                        return nullptr;
                    }
                    nlohmann::json j = {{"lo", r->lo}, {"lower_bound", r->lower_bound}};
                    j["hi"] = std::isinf(r->hi) ? nlohmann::json(nullptr) : nlohmann::json(r->hi);
                    return j;
                };
                doc.push_back({{"platform", p.platform}, {"name", p.name}, {"t1_us", field(p.t1)},
                               {"t2_us", field(p.t2)}, {"t2star_us", field(p.t2star)}, {"t2hahn_us", field(p.t2hahn)}});
            }
            os << doc.dump(1) << "\n";
        } else {
            os << "platform | name | T1 [us] | T2 [us] | T2* [us] | T2 Hahn [us] | T1/T2*\n";
            for (const auto &p : rows) {
                std::string ratio = "-";
                if (p.t1 && p.t2star) {
                    ratio = (p.t1->lower_bound ? ">>" : "") + format_significant(p.t1->nominal() / p.t2star->nominal(), 3);
                }
                os << p.platform << " | " << p.name << " | " << cell(p.t1) << " | " << cell(p.t2) << " | "
                   << cell(p.t2star) << " | " << cell(p.t2hahn) << " | " << ratio << "\n";
            }
        }
        return 0;
    }

    if (*verify) {
        auto reports = run_acceptance_suite(verbose ? &std::cerr : nullptr);
        print_report(os, reports, verbose);
        std::size_t failed = 0;
        for (const auto &r : reports) {
            failed += r.passed() ? 0 : 1;
        }
        os << (reports.size() - failed) << " of " << reports.size() << " criteria passed\n";
        return failed == 0 ? 0 : kExitVerification;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

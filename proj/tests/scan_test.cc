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

#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "repmem/verify.h"

using namespace repmem;

TEST(Extract, IdealHasNoGateNoise) {
    auto k = extract_linear_coefficients(Decomposition::Ideal, {3.0, 1.0, 0.2});
    EXPECT_EQ(k.f1, 0.0);
    EXPECT_EQ(k.f2, 0.0);
}

TEST(Extract, CsczAtZeroTime) {
    auto k = extract_linear_coefficients(Decomposition::Cscz, {kNoDecay, 1.0, 0.0});
    EXPECT_NEAR(k.f1, 40.0 / 9.0, 1e-10);
    EXPECT_NEAR(k.f2, 184.0 / 45.0, 1e-10);
}

TEST(Extract, MatchesClosedFormUnderDephasing) {
    for (auto d : {Decomposition::Cscz, Decomposition::Cnot}) {
        for (double t : {0.1, 1.0}) {
            ClosedFormParams p{kNoDecay, 1.0, t};
            auto numeric = extract_linear_coefficients(d, p);
            auto closed = gate_error_coefficients(d, p);
            EXPECT_NEAR(numeric.f1, closed.f1, 1e-10);
            EXPECT_NEAR(numeric.f2, closed.f2, 1e-10);
        }
    }
}

TEST(Extract, AgreesWithFiniteDifferences) {
    const double h = 1e-4;
    ClosedFormParams p{3.3, 0.9, 0.6};
    auto k = extract_linear_coefficients(Decomposition::Cscz, p);
    double f2 = -(affine_noise_fidelity(Decomposition::Cscz, p.t1, p.t2star, p.t, 0, h) -
                  affine_noise_fidelity(Decomposition::Cscz, p.t1, p.t2star, p.t, 0, -h)) /
                (2 * h);
    EXPECT_NEAR(k.f2, f2, 1e-6);
}

TEST(Extract, SimulatedNoisyFidelityMatchesLinearization) {
    for (double p1 : {0.0, 0.004, 0.01}) {
        for (double p2 : {0.0, 0.005, 0.01}) {
            ProtocolSpec s;
            s.decomposition = Decomposition::Cscz;
            s.t1 = 8.0;
            s.t2star = 1.0;
            s.t_tot = 0.3;
            s.p1 = p1;
            s.p2 = p2;
            double linear = f_phase_error(Decomposition::Cscz, {8.0, 1.0, 0.3}, p1, p2);
            EXPECT_LT(std::abs(average_fidelity(s) - linear), 20 * (p1 + p2) * (p1 + p2) + 1e-12);
        }
    }
}

TEST(LogGrid, Endpoints) {
    auto g = log_grid(2.0, 100.0, 30);
    ASSERT_EQ(g.size(), 30u);
    EXPECT_EQ(g.front(), 2.0);
    EXPECT_EQ(g.back(), 100.0);
    EXPECT_THROW(log_grid(0.0, 1.0, 3), std::invalid_argument);
}

TEST(Fig3, SmallGrid) {
    Fig3Grid grid;
    grid.t1_over_t2star = {1.0, 2.0, 100.0};
    grid.t_over_t2star = {0.01, 0.5};
    auto r = scan_fig3(grid);
    ASSERT_EQ(r.cells.size(), 6u);
    EXPECT_EQ(r.at(0, 0).optimum, 1u);
    EXPECT_EQ(r.at(1, 1).optimum, 1u);
    EXPECT_GE(r.at(2, 0).optimum, 3u);
    for (const auto &c : r.cells) {
        EXPECT_GE(c.f_best, c.f_idle - 1e-12);
    }
    EXPECT_EQ(scan_fig3(grid).to_csv(), r.to_csv());
}

TEST(Fig3, CsvAndJsonLayout) {
    Fig3Grid grid;
    grid.t1_over_t2star = {10.0};
    grid.t_over_t2star = {0.1, 0.2};
    auto r = scan_fig3(grid);
    std::string csv = r.to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t1_over_t2star,t_over_t2star,n_opt,f_best,f_idle");
    auto doc = nlohmann::json::parse(r.to_json());
    EXPECT_EQ(doc["axes"].size(), 2u);
    EXPECT_EQ(doc["cells"].size(), 2u);
    EXPECT_EQ(doc["cells"][1]["t_over_t2star"].get<double>(), 0.2);
}

TEST(Fig4, Behaviour) {
    Fig4Grid grid;
    grid.t_tot = 1.0;
    grid.t1_over_t2star = {1.0, 20.0};
    grid.p2 = {0.0, 1e-3, 0.05};
    auto r = scan_fig4(grid);
    std::string csv = r.to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t1_over_t2star,p2,n_cycles_opt,f_best,f_idle");
    EXPECT_EQ(r.at(0, 0).optimum, 0u);      // T1 = T2*: idling wins
    EXPECT_EQ(r.at(1, 0).optimum, 8u);      // no gate error: more cycles always help
    EXPECT_EQ(r.at(1, 2).optimum, 0u);      // large gate error: idling wins
    EXPECT_LE(r.at(1, 1).optimum, r.at(1, 0).optimum);
}

TEST(Fig4, RejectsEmptyGrid) {
    Fig4Grid grid;
    grid.p2 = {};
    EXPECT_THROW(scan_fig4(grid), std::invalid_argument);
    Fig3Grid g3;
    g3.t_over_t2star = {};
    EXPECT_THROW(scan_fig3(g3), std::invalid_argument);
}

TEST(Presets, BundledTable) {
    auto rows = bundled_presets();
    ASSERT_EQ(rows.size(), 11u);
    const HardwarePreset *jakarta = nullptr;
    for (const auto &r : rows) {
        if (r.name == "IBM ibm_jakarta") {
            jakarta = &r;
        }
    }
    ASSERT_NE(jakarta, nullptr);
    EXPECT_EQ(jakarta->t1->lo, 125.0);
    EXPECT_EQ(jakarta->t2->lo, 38.0);
    EXPECT_EQ(jakarta->t2star->lo, 45.0);
    EXPECT_EQ(rows[7].t1->lo, 22000.0);
    EXPECT_EQ(rows[8].t2star->hi, 0.4);
    EXPECT_TRUE(rows[10].t1->lower_bound);
}

TEST(Presets, DecoherenceRelationHolds) {
    for (const auto &r : bundled_presets()) {
        if (r.t2 && r.t2star) {
            double derived = combined_t2(r.t1->lo, r.t2star->lo);
            EXPECT_NEAR(derived, r.t2->lo, 0.15 * r.t2->lo) << r.name;
        }
    }
}

TEST(Presets, EmptyAndMalformed) {
    std::istringstream empty("");
    EXPECT_TRUE(load_presets(empty).empty());
    std::istringstream comments("# nothing here\n\n");
    EXPECT_TRUE(load_presets(comments).empty());

    std::istringstream bad_number("superconducting | chip | 10 | abc | 20\n");
    try {
        load_presets(bad_number);
        FAIL() << "expected an error";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("T2"), std::string::npos);
    }
    std::istringstream short_row("# header\nsemiconductor | chip | 1ms\n");
    try {
        load_presets(short_row);
        FAIL() << "expected an error";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    std::istringstream inconsistent("superconducting | chip | 100 | 10 | 100\n");
    EXPECT_THROW(load_presets(inconsistent), std::invalid_argument);
}

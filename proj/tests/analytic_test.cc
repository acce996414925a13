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

#include <gtest/gtest.h>

#include <random>

using namespace repmem;

TEST(Closed, ZeroTimeIsOne) {
    ClosedFormParams p{3.0, 1.0, 0.0};
    EXPECT_DOUBLE_EQ(f_idle(p), 1.0);
    EXPECT_DOUBLE_EQ(f_bit(p), 1.0);
    EXPECT_DOUBLE_EQ(f_phase(p), 1.0);
    EXPECT_DOUBLE_EQ(f_phase_noreset_2(p), 1.0);
    EXPECT_NEAR(f_phase_reset(7, p), 1.0, 1e-15);
}

TEST(Closed, IdleValues) {
    EXPECT_NEAR(f_idle({kNoDecay, 1.0, 0.1}), (4 + 2 * std::exp(-0.1)) / 6, 1e-15);
    EXPECT_EQ(format_significant(f_idle({kNoDecay, 1.0, 0.1}), 4), "0.9683");
    EXPECT_EQ(format_significant(f_idle({kNoDecay, 1.0, 1.0}), 4), "0.7893");
}

TEST(Closed, BitAndPhaseValues) {
    EXPECT_NEAR(f_bit({kNoDecay, 1.0, 1.0}), 0.683262, 1e-6);
    EXPECT_NEAR(f_phase({kNoDecay, 1.0, 0.1}), 0.99562, 1e-5);
    EXPECT_NEAR(f_phase({kNoDecay, 1.0, 1.0}), 0.84231, 1e-5);
}

TEST(Closed, PhaseVersusIdle) {
    ClosedFormParams good{10.0, 1.0, 0.1};
    EXPECT_GT(f_phase(good), f_idle(good));
    for (double t : {0.05, 0.5, 2.0}) {
        ClosedFormParams bad{1.0, 1.0, t};
        EXPECT_LT(f_phase(bad), f_idle(bad));
    }
}

TEST(Closed, GeneralNReducesToSmallCodes) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    for (int i = 0; i < 50; i++) {
        ClosedFormParams p{u(rng), u(rng), u(rng)};
        EXPECT_NEAR(f_phase_n(1, p), f_idle(p), 1e-14);
        EXPECT_NEAR(f_phase_n(3, p), f_phase(p), 1e-14);
    }
    EXPECT_THROW(f_phase_n(4, {}), std::invalid_argument);
}

TEST(Closed, LongerCodesHelpPureDephasing) {
    for (double t : {0.05, 0.3, 1.0}) {
        ClosedFormParams p{kNoDecay, 1.0, t};
        for (std::size_t n = 1; n + 2 <= 7; n += 2) {
            EXPECT_LE(f_phase_n(n, p), f_phase_n(n + 2, p) + 1e-15);
        }
    }
}

TEST(Closed, ResetReducesToOneCycle) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    for (int i = 0; i < 50; i++) {
        ClosedFormParams p{u(rng), u(rng), u(rng)};
        EXPECT_NEAR(f_phase_reset(1, p), f_phase(p), 1e-14);
    }
    EXPECT_THROW(f_phase_reset(0, {}), std::invalid_argument);
}

TEST(Closed, ResetMonotoneAndLimit) {
    for (double t1 : {0.3, 1.0, 5.0, 50.0}) {
        for (double t : {0.1, 1.0, 3.0}) {
            ClosedFormParams p{t1, 1.0, t};
            for (std::size_t n = 1; n < 10; n++) {
                EXPECT_LE(f_phase_reset(n, p) - f_phase_reset(n + 1, p), 1e-12);
            }
        }
    }
    ClosedFormParams p{5.0, 1.0, 1.0};
    EXPECT_NEAR(f_phase_reset(10000, p), (2 + std::exp(-3.0 / 5.0)) / 3, 1e-3);
    EXPECT_DOUBLE_EQ(f_phase_reset_limit(p), (2 + std::exp(-3.0 / 5.0)) / 3);
    EXPECT_TRUE(std::isfinite(f_phase_reset(1000000000, p)));
}

TEST(Closed, NoResetNeverBeatsOneCycle) {
    for (double t1 : {0.3, 1.0, 5.0, kNoDecay}) {
        for (double t : {0.01, 0.1, 1.0, 3.0}) {
            ClosedFormParams p{t1, 1.0, t};
            EXPECT_LE(f_phase_noreset_2(p), f_phase(p) + 1e-15);
        }
    }
}

TEST(Coefficients, ZeroTime) {
    auto cscz = gate_error_coefficients(Decomposition::Cscz, {kNoDecay, 1.0, 0.0});
    auto cnot = gate_error_coefficients(Decomposition::Cnot, {kNoDecay, 1.0, 0.0});
    EXPECT_NEAR(cscz.f1, 40.0 / 9.0, 1e-14);
    EXPECT_NEAR(cscz.f2, 184.0 / 45.0, 1e-14);
    EXPECT_NEAR(cnot.f2, 184.0 / 45.0, 1e-14);
    EXPECT_NEAR(cnot.f1, 20.0 / 3.0, 1e-14);
    EXPECT_THROW(gate_error_coefficients(Decomposition::Ideal, {}), std::invalid_argument);
}

TEST(Coefficients, DephasingOnly) {
    auto k = gate_error_coefficients(Decomposition::Cscz, {kNoDecay, 1.0, 0.1});
    EXPECT_NEAR(k.f1, 4.628, 5e-4);
    EXPECT_NEAR(k.f2, 4.068, 5e-4);
}

TEST(Coefficients, LinearizedFidelity) {
    ClosedFormParams p{kNoDecay, 1.0, 0.0};
    EXPECT_NEAR(f_phase_error(Decomposition::Cscz, p, 0.0, 0.01), 0.95911, 1e-5);
    ClosedFormParams q{4.0, 1.0, 0.3};
    EXPECT_DOUBLE_EQ(f_phase_error(Decomposition::Cnot, q, 0.0, 0.0), f_phase(q));
}

TEST(BreakEven, PublishedLines) {
    EXPECT_EQ(breakeven_inequality(Decomposition::Cscz, {kNoDecay, 1.0, 0.1}).to_string(), "p2 < 0.0067 - 1.1*p1");
    EXPECT_EQ(breakeven_inequality(Decomposition::Cscz, {kNoDecay, 1.0, 1.0}).to_string(), "p2 < 0.019 - 1.3*p1");
}

TEST(BreakEven, UnreachableWhenRelaxationDominates) {
    for (double t : {0.1, 1.0, 2.0}) {
        auto line = breakeven_inequality(Decomposition::Cscz, {1.0, 1.0, t});
        EXPECT_LT(line.c0, 0.0);
        EXPECT_FALSE(line.reachable());
    }
}

TEST(BreakEven, InvariantUnderTimeRescaling) {
    auto a = breakeven_inequality(Decomposition::Cnot, {7.0, 1.5, 0.4});
    auto b = breakeven_inequality(Decomposition::Cnot, {70.0, 15.0, 4.0});
    EXPECT_NEAR(a.c0, b.c0, 1e-14);
    EXPECT_NEAR(a.c1, b.c1, 1e-14);
}

TEST(OptimalCodeSize, Examples) {
    EXPECT_EQ(optimal_code_size({1.0, 1.0, 0.5}, 9).n, 1u);
    EXPECT_GE(optimal_code_size({10.0, 1.0, 0.05}, 9).n, 3u);
    // At t = 0 every code size ties; the smallest wins.
    EXPECT_EQ(optimal_code_size({10.0, 1.0, 0.0}, 9).n, 1u);
    EXPECT_THROW(optimal_code_size({}, 8), std::invalid_argument);
}

TEST(Closed, FidelityRange) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int i = 0; i < 200; i++) {
        ClosedFormParams p{u(rng), u(rng), u(rng) * 5};
        for (double f : {f_idle(p), f_bit(p), f_phase(p), f_phase_n(7, p), f_phase_reset(3, p), f_phase_noreset_2(p)}) {
            EXPECT_GE(f, 1.0 / 3.0 - 1e-12);
            EXPECT_LE(f, 1.0 + 1e-12);
        }
        EXPECT_GE(f_idle(p), 0.5 - 1e-12);
    }
}

TEST(Closed, Validation) {
    EXPECT_THROW(f_idle({-1.0, 1.0, 0.1}), std::invalid_argument);
    EXPECT_THROW(f_idle({1.0, 1.0, -0.1}), std::invalid_argument);
}

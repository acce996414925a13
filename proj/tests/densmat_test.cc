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


#include "repmem/densmat.h"

#include <gtest/gtest.h>

#include <random>

#include "repmem/noise.h"
#include "repmem/verify.h"

using namespace repmem;

namespace {

ComplexMatrix random_rho(std::mt19937_64 &rng, std::size_t dim) {
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

PureState ket(std::initializer_list<Complex> amps) {
    ComplexVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (auto a : amps) {
        v(i++) = a;
    }
    return PureState(v);
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_TRUE(kron(gates::identity(2), gates::identity(2)).isApprox(gates::identity(4)));
}

TEST(Kron, XWithProjector) {
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    ComplexMatrix k = kron(gates::pauli_x(), p0);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(2, 0) = 1.0;
    expected(0, 2) = 1.0;
    EXPECT_TRUE(k.isApprox(expected));
}

TEST(Kron, TraceIsMultiplicative) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; i++) {
        ComplexMatrix a = random_rho(rng, 2) * Complex(1.3, -0.4);
        ComplexMatrix b = random_rho(rng, 2) * Complex(-0.2, 2.0);
        EXPECT_NEAR(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 0.0, 1e-12);
    }
}

TEST(ApplyUnitary, FlipsGroundState) {
    auto out = apply_unitary(DensityMatrix::ground(1), gates::pauli_x(), std::vector<QubitIndex>{0});
    EXPECT_NEAR(std::abs(out.matrix()(1, 1) - 1.0), 0.0, 1e-15);
}

TEST(ApplyUnitary, HadamardTwiceIsIdentity) {
    std::mt19937_64 rng(1);
    DensityMatrix rho(random_rho(rng, 8));
    std::vector<QubitIndex> q{1};
    auto out = apply_unitary(apply_unitary(rho, gates::hadamard(), q), gates::hadamard(), q);
    EXPECT_LT((out.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApplyUnitary, CnotEncodesTwoQubits) {
    Complex a(0.6, 0.0), b(0.0, 0.8);
    auto in = DensityMatrix::from_pure(ket({a, 0, b, 0}));
    auto out = apply_unitary(in, gates::cnot(), std::vector<QubitIndex>{0, 1});
    auto expected = DensityMatrix::from_pure(ket({a, 0, 0, b}));
    EXPECT_LT((out.matrix() - expected.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ApplyUnitary, PreservesTraceAndHermiticity) {
    std::mt19937_64 rng(2);
    DensityMatrix rho(random_rho(rng, 8));
    auto out = apply_unitary(rho, gates::cs_dagger(), std::vector<QubitIndex>{2, 0});
    EXPECT_NEAR(std::abs(out.trace() - 1.0), 0.0, 1e-12);
    EXPECT_LT(out.hermiticity_error(), 1e-12);
    EXPECT_TRUE(out.is_valid());
}

TEST(ApplyUnitary, RejectsBadInput) {
    auto rho = DensityMatrix::ground(2);
    ComplexMatrix not_unitary = gates::identity(2) * 2.0;
    EXPECT_THROW(apply_unitary(rho, not_unitary, std::vector<QubitIndex>{0}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(rho, gates::cnot(), std::vector<QubitIndex>{1, 1}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(rho, gates::hadamard(), std::vector<QubitIndex>{2}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(rho, gates::cnot(), std::vector<QubitIndex>{0}), std::invalid_argument);
}

TEST(PartialTrace, ProductGroundState) {
    auto out = partial_trace(DensityMatrix::ground(3), std::vector<QubitIndex>{0});
    EXPECT_TRUE(out.matrix().isApprox(DensityMatrix::ground(1).matrix()));
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
    const double s = 1.0 / std::sqrt(2.0);
    auto bell = DensityMatrix::from_pure(ket({s, 0, 0, s}));
    auto out = partial_trace(bell, std::vector<QubitIndex>{0});
    EXPECT_LT((out.matrix() - 0.5 * gates::identity(2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, RecoversFactorsOfProducts) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; i++) {
        ComplexMatrix a = random_rho(rng, 2);
        ComplexMatrix b = random_rho(rng, 4);
        DensityMatrix ab(kron(a, b));
        EXPECT_LT((partial_trace(ab, std::vector<QubitIndex>{0}).matrix() - a).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((partial_trace(ab, std::vector<QubitIndex>{1, 2}).matrix() - b).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(std::abs(partial_trace(ab, std::vector<QubitIndex>{2}).trace() - 1.0), 0.0, 1e-12);
    }
}

TEST(PartialTrace, KeepsRelativeOrder) {
    // |0> on qubit 0, |1> on qubit 1, |0> on qubit 2; keep (2, 1) gives |01>.
    auto rho = DensityMatrix::from_pure(ket({0, 0, 1, 0, 0, 0, 0, 0}));
    auto out = partial_trace(rho, std::vector<QubitIndex>{1, 2});
    EXPECT_NEAR(out.matrix()(2, 2).real(), 1.0, 1e-15);
}

TEST(PartialTrace, RejectsEmptyKeep) {
    EXPECT_THROW(partial_trace(DensityMatrix::ground(2), std::vector<QubitIndex>{}), std::invalid_argument);
}

TEST(Fidelity, BasicValues) {
    auto zero = ket({1, 0});
    auto plus = ket({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
    EXPECT_NEAR(fidelity(zero, DensityMatrix::ground(1)), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(zero, DensityMatrix::from_pure(ket({0, 1}))), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(plus, DensityMatrix(0.5 * gates::identity(2))), 0.5, 1e-15);
    EXPECT_THROW(fidelity(zero, DensityMatrix::ground(2)), std::invalid_argument);
}

TEST(States, RejectsUnnormalized) {
    ComplexVector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(PureState{v}, std::invalid_argument);
    ComplexMatrix m = gates::identity(2);
    EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);
}

TEST(TwoDesign, SixMutuallyUnbiasedStates) {
    auto states = bloch_2design_states();
    ASSERT_EQ(states.size(), 6u);
    for (std::size_t a = 0; a < states.size(); a++) {
        EXPECT_NEAR(states[a].amplitudes().squaredNorm(), 1.0, 1e-15);
        for (std::size_t b = a + 1; b < states.size(); b++) {
            double overlap = std::norm(states[a].amplitudes().dot(states[b].amplitudes()));
            EXPECT_TRUE(std::abs(overlap) < 1e-15 || std::abs(overlap - 0.5) < 1e-15) << a << "," << b;
        }
    }
}

TEST(TwoDesign, MatchesBlochQuadratureForRandomChannel) {
    // Random CPTP map: a random unitary on qubit + environment, environment traced.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    ComplexMatrix z(4, 4);
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            z(i, j) = Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix u = qr.householderQ();
    auto channel_fidelity = [&](const PureState &psi) {
        ComplexMatrix rho = kron(DensityMatrix::from_pure(psi).matrix(), DensityMatrix::ground(1).matrix());
        ComplexMatrix out = partial_trace_matrix(u * rho * u.adjoint(), 2, std::vector<QubitIndex>{0});
        return psi.amplitudes().dot(out * psi.amplitudes()).real();
    };
    double six = 0.0;
    for (const auto &psi : bloch_2design_states()) {
        six += channel_fidelity(psi) / 6.0;
    }
    // 100 x 100 product rule, uniform on the sphere: Gauss-Legendre in
    // cos(theta), equally spaced phi.
    const int m = 100;
    std::vector<double> nodes(m), weights(m);
    for (int i = 0; i < m; i++) {
        double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; iter++) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; k++) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    double quad = 0.0;
    for (int i = 0; i < m; i++) {
        double theta = std::acos(nodes[i]);
        for (int j = 0; j < m; j++) {
            double phi = 2.0 * M_PI * (j + 0.5) / m;
            ComplexVector v(2);
            v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
            quad += weights[i] / (2.0 * m) * channel_fidelity(PureState(v));
        }
    }
    EXPECT_NEAR(six, quad, 1e-6);
}

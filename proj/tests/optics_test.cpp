// Copyright 2026 The Thomson Lab Authors
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

#include "thomson/optics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace thomson;
using namespace thomson::optics;
using qubit::max_abs_diff;
using qubit::phase_distance;

namespace {

constexpr double kPi = std::numbers::pi;

Unitary2 diag(double a, double b) {
    return Unitary2::diagonal(std::polar(1.0, a), std::polar(1.0, b));
}

DeviceAngles random_angles(Rng &rng) {
    auto in = [&rng](double b) { return b * (2.0 * rng.uniform() - 1.0); };
    return {in(kPi), in(kPi / 2), in(kPi), in(kPi / 2)};
}

} // namespace

TEST(PhaseShifter, Matrices) {
    EXPECT_EQ(max_abs_diff(phase_shifter_matrix(0, 0), Unitary2::identity()), 0.0);
    EXPECT_EQ(max_abs_diff(phase_shifter_matrix(0, 1), Unitary2::identity()), 0.0);
    EXPECT_LE(max_abs_diff(phase_shifter_matrix(kPi, 0),
                           Unitary2::diagonal(-1.0, 1.0)),
              1e-15);
    EXPECT_LE(max_abs_diff(phase_shifter_matrix(0.4, 0) * phase_shifter_matrix(-1.1, 1),
                           diag(0.4, -1.1)),
              1e-15);
    EXPECT_THROW((void)phase_shifter_matrix(0.1, 2), OutOfDomain);
}

TEST(BeamSplitter, Limits) {
    EXPECT_LE(max_abs_diff(beamsplitter_matrix(0), qubit::not_gate()), 0.0);
    EXPECT_LE(max_abs_diff(beamsplitter_matrix(kPi / 2),
                           Unitary2::identity().scaled(qubit::Complex(0, 1))),
              1e-16);
}

TEST(BeamSplitter, UnitaryOverGrid) {
    for (double w : oracle::linspace(-2 * kPi, 2 * kPi, 201)) {
        ASSERT_LE(beamsplitter_matrix(w).unitarity_defect(), 1e-12);
        for (double p : {-3.0, 0.5, 2.0}) {
            ASSERT_LE(phase_shifter_matrix(p, 0).unitarity_defect(), 1e-12);
            ASSERT_LE(phase_shifter_matrix(p, 1).unitarity_defect(), 1e-12);
        }
        const OpticalElement bs(ElementKind::BeamSplitter, w);
        ASSERT_EQ(bs.transmission() + bs.reflectivity(), 1.0);
        ASSERT_NEAR(bs.reflectivity(), std::sin(w) * std::sin(w), 1e-15);
    }
}

TEST(NetworkUnitary, SingleElement) {
    const OpticalNetwork n({{ElementKind::BeamSplitter, 0.3}});
    EXPECT_EQ(max_abs_diff(network_unitary(n), beamsplitter_matrix(0.3)), 0.0);
    EXPECT_THROW(OpticalNetwork({}), OutOfDomain);
}

TEST(NetworkUnitary, ReverseOrderProduct) {
    // Second element acts after the first: M2 * M1.
    const OpticalNetwork n({{ElementKind::PhaseShifterPort0, 0.7},
                            {ElementKind::BeamSplitter, 0.4}});
    const Unitary2 expected = beamsplitter_matrix(0.4) * phase_shifter_matrix(0.7, 0);
    EXPECT_LE(max_abs_diff(network_unitary(n), expected), 1e-15);
    const Unitary2 wrong = phase_shifter_matrix(0.7, 0) * beamsplitter_matrix(0.4);
    EXPECT_GT(max_abs_diff(network_unitary(n), wrong), 1e-3);
}

TEST(NetworkUnitary, FourPortMatchesClosedFormOnGrid) {
    for (double w : oracle::linspace(-kPi, kPi, 7))
        for (double a : oracle::linspace(-kPi / 2, kPi / 2, 7))
            for (double b : oracle::linspace(-kPi, kPi, 7))
                for (double p : oracle::linspace(-kPi / 2, kPi / 2, 7)) {
                    const auto net = OpticalNetwork::four_port(w, a, b, p);
                    ASSERT_LE(max_abs_diff(network_unitary(net), ubs(w, a, b, p)), 1e-12);
                }
}

TEST(NetworkUnitary, InverseNetworkGivesIdentity) {
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        std::vector<OpticalElement> els;
        const int count = 1 + static_cast<int>(rng.below(8));
        for (int k = 0; k < count; ++k) {
            els.emplace_back(static_cast<ElementKind>(rng.below(3)),
                             4.0 * (rng.uniform() - 0.5));
        }
        const OpticalNetwork n(els);
        const Unitary2 u = network_unitary(n.then(n.inverse()));
        ASSERT_LE(max_abs_diff(u, Unitary2::identity()), 1e-12);
    }
}

TEST(Ubs, DiagonalFamilies) {
    for (double lambda : {0.0, 0.7, -0.7, kPi / 2, -kPi / 2, 2.9}) {
        for (double alpha : {-1.0, 0.0, 0.4}) {
            EXPECT_LE(max_abs_diff(ubs(kPi / 2, alpha, lambda - kPi / 2, -alpha),
                                   diag(lambda, lambda)),
                      1e-12);
        }
        EXPECT_LE(max_abs_diff(ubs(kPi / 2, 2 * lambda, -kPi / 2 - lambda, 0),
                               diag(lambda, -lambda)),
                  1e-12);
    }
    EXPECT_LE(max_abs_diff(ubs(kPi / 2, 0, -kPi / 2, 0), Unitary2::identity()), 1e-15);
}

TEST(SynthesizeEqualPhase, ResidualAndRanges) {
    for (double lambda : {0.0, kPi / 2, 0.3, -0.3, 2.9, -2.9, 7.5}) {
        const auto r = synthesize_equal_phase_diag(lambda);
        EXPECT_LT(r.residual, 1e-12) << lambda;
        EXPECT_TRUE(r.params.in_u2_ranges());
        EXPECT_EQ(r.params.alpha, 0.0);
        EXPECT_EQ(r.params.phi, 0.0);
        EXPECT_LE(max_abs_diff(r.params.matrix(), diag(lambda, lambda)), 1e-12);
    }
    const auto i = synthesize_equal_phase_diag(kPi / 2);
    EXPECT_LE(max_abs_diff(i.params.matrix(),
                           Unitary2::identity().scaled(qubit::Complex(0, 1))),
              1e-12);
}

TEST(SynthesizeEqualPhase, RealizesFixedPointFreeDiagonalization) {
    for (double lambda : oracle::linspace(-3.0, 3.0, 61)) {
        const auto fp = qubit::fixed_points(synthesize_equal_phase_diag(lambda).params.matrix());
        if (std::abs(qubit::wrap_angle(lambda)) > 1e-6) {
            EXPECT_TRUE(fp.empty()) << lambda;
        }
    }
    for (double lambda : {1e-5, -1e-5}) {
        EXPECT_TRUE(qubit::fixed_points(
                        synthesize_equal_phase_diag(lambda).params.matrix())
                        .empty());
    }
    EXPECT_EQ(qubit::fixed_points(synthesize_equal_phase_diag(0.0).params.matrix()).size(),
              2U);
}

TEST(SynthesizeOppositePhase, ResidualAndRanges) {
    for (double lambda : {0.0, kPi / 2, 0.7, -0.7, -kPi / 2, 2.9, -2.9, 1.2}) {
        const auto r = synthesize_opposite_phase_diag(lambda);
        EXPECT_LT(r.residual, 1e-12) << lambda;
        EXPECT_TRUE(r.params.in_u2_ranges()) << lambda;
        EXPECT_NO_THROW((void)r.params.u2_params());
    }
    const auto r = synthesize_opposite_phase_diag(kPi / 2);
    EXPECT_LE(max_abs_diff(r.params.matrix(),
                           Unitary2::diagonal(qubit::Complex(0, 1), qubit::Complex(0, -1))),
              1e-12);
    // In range already: angles are the literal (pi/2, 2 lambda, -pi/2 - lambda, 0).
    const auto lit = synthesize_opposite_phase_diag(0.7);
    EXPECT_NEAR(lit.params.alpha, 1.4, 1e-15);
    EXPECT_NEAR(lit.params.beta, -kPi / 2 - 0.7, 1e-15);
    EXPECT_EQ(lit.params.phi, 0.0);
    EXPECT_LE(max_abs_diff(synthesize_opposite_phase_diag(0).params.matrix(),
                           Unitary2::identity()),
              1e-15);
}

TEST(SynthesizeGeneral, SpecialTargets) {
    for (const Unitary2 &t : {qubit::not_gate(), Unitary2::identity(), qubit::sqrt_not(),
                              diag(0.3, -2.0), beamsplitter_matrix(0.2)}) {
        const auto r = synthesize_general(t);
        EXPECT_LT(r.residual, 1e-8);
        EXPECT_LE(phase_distance(r.params.matrix(), t), 1e-8);
    }
}

TEST(SynthesizeGeneral, RoundTripsRandomDevices) {
    Rng rng(77);
    int in_range = 0;
    for (int i = 0; i < 1000; ++i) {
        const DeviceAngles a = random_angles(rng);
        const Unitary2 target = a.matrix();
        const auto r = synthesize_general(target);
        ASSERT_LT(r.residual, 1e-8);
        ASSERT_LE(max_abs_diff(r.params.matrix().scaled(std::polar(1.0, r.global_phase)),
                               target),
                  1e-8);
        in_range += r.params.in_u2_ranges();
    }
    // Targets drawn inside the ranges can always be solved inside them.
    EXPECT_EQ(in_range, 1000);
}

TEST(SynthesizeGeneral, RoundTripsRandomU2) {
    Rng rng(78);
    auto in = [&rng](double b) { return b * (2.0 * rng.uniform() - 1.0); };
    for (int i = 0; i < 1000; ++i) {
        const Unitary2 target =
            qubit::u2(qubit::U2Params(in(kPi), in(kPi / 2), in(kPi), in(kPi / 2)));
        const auto r = synthesize_general(target);
        ASSERT_LT(r.residual, 1e-8);
    }
}

TEST(SynthesizeGeneral, NearlyDegenerateSplitter) {
    for (double w : {1e-13, 1e-9, kPi / 2 - 1e-11, kPi / 2 + 1e-9}) {
        const Unitary2 t = ubs(w, 0.3, -1.0, 1.2);
        EXPECT_LT(synthesize_general(t).residual, 1e-8) << w;
    }
}

TEST(SynthesizeGeneral, NonUnitaryInputHasNoSolution) {
    // Slightly off unitary: passes a loose constructor tolerance but no
    // device reproduces it.
    const Unitary2 t = Unitary2::from_entries(1.0, 0.0, 0.0,
                                              std::polar(1.0 + 1e-6, 0.0), 1e-5);
    EXPECT_THROW((void)synthesize_general(t), NoSolution);
}

TEST(SynthesizeGeneral, RoundTripsHaarUnitaries) {
    std::mt19937_64 gen(5);
    for (int i = 0; i < 1000; ++i) {
        const auto v = oracle::haar_unitary(gen);
        const Unitary2 t = Unitary2::from_entries(v[0], v[1], v[2], v[3], 1e-12);
        const auto r = synthesize_general(t);
        ASSERT_LT(r.residual, 1e-8);
        ASSERT_LE(phase_distance(r.params.matrix(), t), 1e-8);
    }
}

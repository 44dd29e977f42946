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

#include "thomson/supertask.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace thomson;
using namespace thomson::supertask;

TEST(LampState, FlipIsInvolution) {
    EXPECT_EQ(flip(LampState::On), LampState::Off);
    EXPECT_EQ(flip(flip(LampState::On)), LampState::On);
    EXPECT_EQ(flip(flip(LampState::Off)), LampState::Off);
    EXPECT_EQ(lamp_state_from_string("on"), LampState::On);
    EXPECT_THROW((void)lamp_state_from_string("dim"), ParseError);
}

TEST(ExtrinsicTime, GridValues) {
    EXPECT_EQ(extrinsic_time(0), 0.0);
    EXPECT_EQ(extrinsic_time(1), 1.0);
    EXPECT_EQ(extrinsic_time(2), 1.5);
    EXPECT_NEAR(extrinsic_time(60), 2.0, 1e-15);
    EXPECT_LE(extrinsic_time(60), 2.0);
    EXPECT_GT(extrinsic_time(1000), 2.0 - 1e-12);
    EXPECT_LE(extrinsic_time(1000), 2.0);
}

TEST(ExtrinsicTime, MatchesPartialSumsOfHalvings) {
    double acc = 0.0;
    for (std::uint64_t t = 1; t <= 53; ++t) {
        acc += std::ldexp(1.0, -static_cast<int>(t)) * 2.0;
        ASSERT_EQ(extrinsic_time(t), acc) << t;
    }
}

TEST(ExtrinsicTime, MonotoneAndBounded) {
    for (std::uint64_t t = 0; t < kMaxRepresentableStep; ++t) {
        ASSERT_LT(extrinsic_time(t), extrinsic_time(t + 1)) << t;
    }
    for (std::uint64_t t = 0; t < 2000; ++t) {
        ASSERT_LE(extrinsic_time(t), extrinsic_time(t + 1));
        ASSERT_LE(extrinsic_time(t), 2.0);
    }
}

TEST(IntrinsicFromExtrinsic, Examples) {
    EXPECT_EQ(intrinsic_from_extrinsic(0.0), 0U);
    EXPECT_EQ(intrinsic_from_extrinsic(1.9), 4U);
    EXPECT_EQ(intrinsic_from_extrinsic(1.0), 1U);
    EXPECT_EQ(intrinsic_from_extrinsic(1.9), oracle::intrinsic_scan(1.9));
}

TEST(IntrinsicFromExtrinsic, RoundTripOnGrid) {
    for (std::uint64_t t = 0; t <= kMaxRepresentableStep; ++t) {
        const double tau = extrinsic_time(t);
        ASSERT_EQ(intrinsic_from_extrinsic(tau), t);
        ASSERT_EQ(extrinsic_time(intrinsic_from_extrinsic(tau)), tau);
    }
}

TEST(IntrinsicFromExtrinsic, BracketsOffGridPoints) {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double tau = 2.0 * rng.uniform();
        const auto t = intrinsic_from_extrinsic(tau);
        ASSERT_LE(extrinsic_time(t), tau);
        ASSERT_LT(tau, extrinsic_time(t + 1));
        ASSERT_EQ(t, oracle::intrinsic_scan(tau));
    }
}

TEST(IntrinsicFromExtrinsic, AccumulationPointHasNoPreimage) {
    EXPECT_THROW((void)intrinsic_from_extrinsic(2.0), OutOfDomain);
    EXPECT_THROW((void)intrinsic_from_extrinsic(-0.1), OutOfDomain);
}

TEST(LampStateAt, Examples) {
    EXPECT_EQ(lamp_state_at(0, LampState::On), LampState::On);
    EXPECT_EQ(lamp_state_at(3, LampState::On), LampState::Off);
    EXPECT_EQ(lamp_state_at(4, LampState::Off), LampState::Off);
}

TEST(LampStateAt, AgreesWithLeibnizPartialSum) {
    for (std::uint64_t t = 0; t < 100; ++t) {
        const bool on = lamp_state_at(t, LampState::On) == LampState::On;
        EXPECT_EQ(on, summability::leibniz_partial_sum(t) == 1);
    }
}

TEST(SimulateTrace, TwoSteps) {
    const auto tr = simulate_trace(2, LampState::On);
    ASSERT_EQ(tr.intervals().size(), 2U);
    EXPECT_EQ(tr.intervals()[0].start, 0.0);
    EXPECT_EQ(tr.intervals()[0].end, 1.0);
    EXPECT_EQ(tr.intervals()[0].state, LampState::On);
    EXPECT_EQ(tr.intervals()[1].start, 1.0);
    EXPECT_EQ(tr.intervals()[1].end, 1.5);
    EXPECT_EQ(tr.intervals()[1].state, LampState::Off);
}

TEST(SimulateTrace, SingleStep) {
    const auto tr = simulate_trace(1, LampState::Off);
    ASSERT_EQ(tr.intervals().size(), 1U);
    EXPECT_EQ(tr.intervals()[0].start, 0.0);
    EXPECT_EQ(tr.intervals()[0].end, 1.0);
    EXPECT_EQ(tr.intervals()[0].state, LampState::Off);
}

TEST(SimulateTrace, Invariants) {
    for (std::uint64_t steps = 1; steps <= kMaxRepresentableStep; ++steps) {
        const auto tr = simulate_trace(steps, LampState::On);
        const auto &iv = tr.intervals();
        ASSERT_EQ(iv.size(), steps);
        EXPECT_LT(tr.last_boundary(), 2.0);
        for (std::size_t n = 0; n < iv.size(); ++n) {
            EXPECT_EQ(iv[n].length(), std::ldexp(1.0, -static_cast<int>(n)));
            if (n > 0) {
                EXPECT_EQ(iv[n].start, iv[n - 1].end);
                EXPECT_NE(iv[n].state, iv[n - 1].state);
            }
        }
    }
    EXPECT_THROW((void)simulate_trace(0, LampState::On), OutOfDomain);
    EXPECT_THROW((void)simulate_trace(54, LampState::On), OutOfDomain);
}

TEST(DetectorExposure, SingleOnInterval) {
    const auto tr = simulate_trace(1, LampState::On);
    const auto e = detector_exposure(tr, 0.0, 1.0);
    EXPECT_EQ(e.on_time, 1.0);
    EXPECT_EQ(e.resolution, 0.5);
}

TEST(DetectorExposure, TailOfOffCutoffIsOneThird) {
    for (std::uint64_t t : {1U, 2U, 9U, 20U, 40U, 53U}) {
        for (LampState init : {LampState::On, LampState::Off}) {
            // Pick the initial state so the lamp is off at cutoff t.
            const LampState initial =
                lamp_state_at(t, init) == LampState::Off ? init : flip(init);
            const auto tr = simulate_trace(t, initial);
            ASSERT_EQ(tr.state_at_cutoff(), LampState::Off);
            const auto e = detector_exposure(tr, extrinsic_time(t), 2.0);
            EXPECT_NEAR(e.on_time / (2.0 - extrinsic_time(t)), 1.0 / 3.0, 1e-15);
        }
    }
}

TEST(DetectorExposure, TailFromLongerTraceStillOneThird) {
    // Cutoff state off at t = 10; resolve 20 more steps before integrating.
    const auto tr = simulate_trace(30, LampState::Off);
    ASSERT_EQ(lamp_state_at(10, LampState::Off), LampState::Off);
    const auto e = detector_exposure(tr, extrinsic_time(10), 2.0);
    EXPECT_NEAR(e.brightness(), 1.0 / 3.0, 1e-13);
}

TEST(DetectorExposure, FullWindowAgainstIntervalSummation) {
    // Brute-force on-time over [0, 2): sum of On lengths at t_max = 50.
    for (LampState init : {LampState::On, LampState::Off}) {
        double brute = 0.0;
        for (int n = 0; n < 50; ++n) {
            if (lamp_state_at(n, init) == LampState::On) {
                brute += std::ldexp(1.0, -n);
            }
        }
        for (std::uint64_t steps : {1U, 2U, 10U, 50U}) {
            const auto e = detector_exposure(simulate_trace(steps, init), 0.0, 2.0);
            EXPECT_NEAR(e.on_time, brute, 1e-12) << steps;
        }
        EXPECT_NEAR(brute, init == LampState::On ? 4.0 / 3.0 : 2.0 / 3.0, 1e-14);
    }
}

TEST(DetectorExposure, AdditiveOverAdjacentWindows) {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto tr = simulate_trace(1 + rng.below(20),
                                       rng.coin() ? LampState::On : LampState::Off);
        double pts[3] = {2.0 * rng.uniform(), 2.0 * rng.uniform(),
                         2.0 * rng.uniform()};
        std::sort(pts, pts + 3);
        if (!(pts[0] < pts[1] && pts[1] < pts[2])) {
            continue;
        }
        const double ab = detector_exposure(tr, pts[0], pts[1]).on_time;
        const double bc = detector_exposure(tr, pts[1], pts[2]).on_time;
        const double ac = detector_exposure(tr, pts[0], pts[2]).on_time;
        ASSERT_NEAR(ab + bc, ac, 1e-12);
        ASSERT_GE(ab, 0.0);
        ASSERT_LE(ab, pts[1] - pts[0] + 1e-15);
    }
}

TEST(DetectorExposure, TailAveragedOverInitialStatesIsOneHalf) {
    for (std::uint64_t t : {1U, 5U, 17U}) {
        double sum = 0.0;
        for (LampState init : {LampState::On, LampState::Off}) {
            sum += detector_exposure(simulate_trace(t, init), extrinsic_time(t), 2.0)
                       .brightness();
        }
        EXPECT_NEAR(sum / 2.0, summability::average_brightness(), 1e-15);
    }
}

TEST(DetectorExposure, WindowOutsideRange) {
    const auto tr = simulate_trace(3, LampState::On);
    EXPECT_THROW((void)detector_exposure(tr, -0.1, 1.0), WindowOutsideTrace);
    EXPECT_THROW((void)detector_exposure(tr, 0.0, 2.1), WindowOutsideTrace);
    EXPECT_THROW((void)detector_exposure(tr, 1.0, 1.0), WindowOutsideTrace);
}

TEST(MonteCarloBrightness, WithinThreeSigma) {
    Rng rng(2024);
    const auto est = monte_carlo_brightness(100000, 20, rng);
    EXPECT_EQ(est.draws, 100000U);
    // Each draw is 1/3 or 2/3 with equal odds: sigma = 1/6 per draw.
    EXPECT_NEAR(est.mean, 0.5, 3.0 * (1.0 / 6.0) / std::sqrt(1e5));
    EXPECT_NEAR(est.std_error, (1.0 / 6.0) / std::sqrt(1e5), 1e-5);
}

TEST(MonteCarloBrightness, DeterministicForSeed) {
    Rng a(5);
    Rng b(5);
    const auto x = monte_carlo_brightness(1000, 10, a);
    const auto y = monte_carlo_brightness(1000, 10, b);
    EXPECT_EQ(x.mean, y.mean);
    EXPECT_EQ(x.std_error, y.std_error);
}

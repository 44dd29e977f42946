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

/**
 * @file
 * The Thomson lamp on intrinsic (step count) and extrinsic (squeezed clock)
 * time, and a shutter-style detector that integrates its light.
 *
 * Step t happens at tau_t = 2 (1 - 2^-t). The lamp holds its state on the
 * half-open interval [tau_t, tau_{t+1}), so the state at a switching
 * instant is the post-switch state.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thomson/errors.hpp"
#include "thomson/random.hpp"
#include "thomson/summability.hpp"

namespace thomson::supertask {

enum class LampState { On, Off };

[[nodiscard]] constexpr LampState flip(LampState s) noexcept {
    return s == LampState::On ? LampState::Off : LampState::On;
}

[[nodiscard]] constexpr std::string_view to_string(LampState s) noexcept {
    return s == LampState::On ? "on" : "off";
}

[[nodiscard]] inline LampState lamp_state_from_string(std::string_view s) {
    if (s == "on") {
        return LampState::On;
    }
    if (s == "off") {
        return LampState::Off;
    }
    throw ParseError("lamp state must be \"on\" or \"off\", got \"" +
                     std::string(s) + "\"");
}

[[nodiscard]] constexpr summability::CutoffState
to_cutoff(LampState s) noexcept {
    return s == LampState::On ? summability::CutoffState::On
                              : summability::CutoffState::Off;
}

/// Extrinsic accumulation point of the switching schedule.
inline constexpr double kAccumulationPoint = 2.0;

/// Past this step tau_t rounds to 2 in double precision.
inline constexpr std::uint64_t kMaxRepresentableStep = 53;

/// tau_t = 2 (1 - 2^-t). Exact for t <= 53, equal to 2.0 beyond.
[[nodiscard]] inline double extrinsic_time(std::uint64_t t) noexcept {
    if (t > 1100) {
        return kAccumulationPoint;
    }
    return kAccumulationPoint - std::ldexp(1.0, 1 - static_cast<int>(t));
}

/// Largest t with extrinsic_time(t) <= tau.
[[nodiscard]] inline std::uint64_t intrinsic_from_extrinsic(double tau) {
    if (!(tau >= 0.0)) {
        throw OutOfDomain("intrinsic_from_extrinsic: tau must be >= 0");
    }
    if (!(tau < kAccumulationPoint)) {
        throw OutOfDomain("intrinsic_from_extrinsic: tau >= 2 has no finite "
                          "intrinsic preimage");
    }
    std::uint64_t t = 0;
    while (extrinsic_time(t + 1) <= tau) {
        ++t;
    }
    return t;
}

/// State after t switches: the initial state for even t, flipped for odd t.
[[nodiscard]] constexpr LampState lamp_state_at(std::uint64_t t,
                                                LampState initial) noexcept {
    return (t % 2 == 0) ? initial : flip(initial);
}

struct Interval {
    double start;
    double end;
    LampState state;

    [[nodiscard]] double length() const noexcept { return end - start; }
};

/// Contiguous, alternating record of the first steps of the lamp.
class LampTrace {
  public:
    LampTrace(LampState initial, std::vector<Interval> intervals)
        : initial_(initial), intervals_(std::move(intervals)) {}

    [[nodiscard]] LampState initial_state() const noexcept { return initial_; }
    [[nodiscard]] const std::vector<Interval> &intervals() const noexcept {
        return intervals_;
    }
    [[nodiscard]] std::uint64_t steps() const noexcept {
        return intervals_.size();
    }
    /// End of the last resolved interval, tau_{steps}.
    [[nodiscard]] double last_boundary() const noexcept {
        return intervals_.empty() ? 0.0 : intervals_.back().end;
    }
    /// State holding from last_boundary() on.
    [[nodiscard]] LampState state_at_cutoff() const noexcept {
        return lamp_state_at(steps(), initial_);
    }

  private:
    LampState initial_;
    std::vector<Interval> intervals_;
};

/**
 * Intervals [tau_n, tau_{n+1}) for n = 0 .. t_max - 1.
 *
 * t_max is limited to kMaxRepresentableStep so every boundary stays below 2.
 */
[[nodiscard]] inline LampTrace simulate_trace(std::uint64_t t_max,
                                              LampState initial) {
    if (t_max < 1) {
        throw OutOfDomain("simulate_trace: t_max must be >= 1");
    }
    if (t_max > kMaxRepresentableStep) {
        throw OutOfDomain("simulate_trace: t_max > 53 places boundaries at "
                          "2.0 in double precision");
    }
    std::vector<Interval> out;
    out.reserve(t_max);
    for (std::uint64_t n = 0; n < t_max; ++n) {
        out.push_back(
            {extrinsic_time(n), extrinsic_time(n + 1), lamp_state_at(n, initial)});
    }
    return LampTrace(initial, std::move(out));
}

struct Exposure {
    double on_time;
    double open;
    double close;
    /// Length of the first unresolved interval, 2^-steps.
    double resolution;

    [[nodiscard]] double brightness() const noexcept {
        return on_time / (close - open);
    }
};

/**
 * Light collected with the shutter open over [open, close].
 *
 * Resolved intervals contribute their On overlap. Past the trace's last
 * boundary the detector only integrates: the tail [tau_T, 2) carries on-time
 * at the uniform rate geometric_exposure_fractions(state at cutoff), so a
 * window covering the whole tail collects exactly 1/3 or 2/3 of its length.
 */
[[nodiscard]] inline Exposure detector_exposure(const LampTrace &trace,
                                                double open, double close) {
    if (!(open >= 0.0) || !(close <= kAccumulationPoint)) {
        throw WindowOutsideTrace("detector window [" + std::to_string(open) +
                                 ", " + std::to_string(close) +
                                 "] leaves [0, 2]");
    }
    if (!(open < close)) {
        throw WindowOutsideTrace("detector window must have open < close");
    }
    double on_time = 0.0;
    for (const Interval &iv : trace.intervals()) {
        if (iv.start >= close) {
            break;
        }
        if (iv.state != LampState::On) {
            continue;
        }
        const double lo = std::max(iv.start, open);
        const double hi = std::min(iv.end, close);
        if (hi > lo) {
            on_time += hi - lo;
        }
    }
    const double cutoff = trace.last_boundary();
    if (close > cutoff) {
        const double lo = std::max(open, cutoff);
        const auto fractions =
            summability::geometric_exposure_fractions(to_cutoff(trace.state_at_cutoff()));
        on_time += (close - lo) * fractions.on_fraction;
    }
    return {on_time, open, close,
            std::ldexp(1.0, -static_cast<int>(trace.steps()))};
}

struct BrightnessEstimate {
    std::uint64_t draws;
    double mean;
    double std_error;
};

/**
 * Repeats the tail measurement with random offsets: each draw picks a fair
 * initial state and a resolution step t uniform in [1, max_steps], then
 * records the brightness of the window [tau_t, 2).
 */
[[nodiscard]] inline BrightnessEstimate
monte_carlo_brightness(std::uint64_t draws, std::uint64_t max_steps, Rng &rng) {
    if (draws < 1) {
        throw OutOfDomain("monte_carlo_brightness: draws must be >= 1");
    }
    if (max_steps < 1 || max_steps > kMaxRepresentableStep) {
        throw OutOfDomain("monte_carlo_brightness: max_steps must be in [1, 53]");
    }
    summability::detail::CompensatedSum sum;
    summability::detail::CompensatedSum sum_sq;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const LampState initial = rng.coin() ? LampState::On : LampState::Off;
        const std::uint64_t t = 1 + rng.below(max_steps);
        const LampTrace trace = simulate_trace(t, initial);
        const double b =
            detector_exposure(trace, extrinsic_time(t), kAccumulationPoint)
                .brightness();
        sum.add(b);
        sum_sq.add(b * b);
    }
    const double n = static_cast<double>(draws);
    const double mean = sum.value() / n;
    const double var =
        draws > 1 ? std::max(0.0, (sum_sq.value() - n * mean * mean) / (n - 1.0))
                  : 0.0;
    return {draws, mean, std::sqrt(var / n)};
}

} // namespace thomson::supertask

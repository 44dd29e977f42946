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
 * Seedable, platform-independent random source.
 *
 * Algorithm: a std::mt19937_64 engine whose 64-bit seed is derived from
 * (seed, stream) with two rounds of SplitMix64. Uniform doubles take the top
 * 53 bits of one engine output, and bounded integers use rejection sampling,
 * so no implementation-defined std::*_distribution is involved and a given
 * (seed, stream) pair produces the same sequence everywhere.
 */

#pragma once

#include <cstdint>
#include <random>

namespace thomson {

/// One SplitMix64 output step applied to @p x.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream),
          engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream() const noexcept { return stream_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t r = engine_();
        while (r >= limit) {
            r = engine_();
        }
        return r % n;
    }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Independent generator for parallel work item @p index.
    [[nodiscard]] Rng split(std::uint64_t index) const {
        return Rng(seed_, splitmix64(stream_ + 1) ^ index);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

} // namespace thomson

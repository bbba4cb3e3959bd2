// Copyright 2026 The design-certify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace dcert {

/**
 * Small deterministic PRNG (splitmix64 core).
 *
 * Produces the same sequence for a given seed on every platform, so sampled
 * behaviours and optimizer restarts are reproducible bit for bit. Substreams
 * for independent work items (one behaviour cell, one restart) are derived
 * with `derive`, which makes results independent of scheduling order.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        return mix64(z);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate (Box-Muller, two uniforms per call).
    double normal() {
        const double u1 = 1.0 - uniform(); // (0, 1], keeps the log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /// Derives an independent substream seed from a base seed and an index
    /// path, e.g. (seed, x, y1, y2) for one behaviour cell.
    static std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
        for (std::uint64_t p : path) {
            h ^= mix64(p + 0x9e3779b97f4a7c15ULL) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h = mix64(h);
        }
        return h;
    }

  private:
    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace dcert

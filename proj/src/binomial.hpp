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

#include <algorithm>
#include <cstdint>

namespace dcert::detail {

// C(n, k) with saturation at 2^62. The running product stays integral at
// every step of the multiplicative evaluation.
inline std::uint64_t binomial_saturating(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    constexpr std::uint64_t cap = std::uint64_t{1} << 62;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
        if (r > cap / factor) return cap;
        r = r * factor / static_cast<std::uint64_t>(i);
    }
    return r;
}

} // namespace dcert::detail

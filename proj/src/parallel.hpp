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

// Internal helper: bounded parallel loop over independent work items.
// The DESIGN_CERTIFY_THREADS environment variable caps the worker count;
// when unset the hardware concurrency is used. Work items must not depend
// on execution order (each derives its own random substream), so results
// are identical regardless of scheduling.

#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dcert::detail {

inline int thread_cap() {
    const char* env = std::getenv("DESIGN_CERTIFY_THREADS");
    if (env != nullptr) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline void parallel_for(int count, const std::function<void(int)>& body) {
    const int workers = std::min(count, thread_cap());
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&body, w, workers, count]() {
            for (int i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace dcert::detail

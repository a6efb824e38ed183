// Copyright 2026 The ftcap Authors
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

// Deterministic chunked Monte Carlo driver.
//
// Trials are cut into fixed-size chunks; chunk i gets its own generator seeded
// from (master seed, i). The chunk layout does not depend on the number of
// worker threads, so results are bit-identical for any --threads value.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ftcap {

inline constexpr std::int64_t kChunkTrials = std::int64_t{1} << 16;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t chunk_seed(std::uint64_t master, std::uint64_t chunk) {
    return splitmix64(splitmix64(master) ^ (0xD1B54A32D192ED03ull * (chunk + 1)));
}

/// Runs body(chunk_seed, first_trial, count) over all chunks and returns the
/// per-chunk results in chunk order. threads <= 0 means hardware concurrency.
template <typename Result, typename Body>
std::vector<Result> run_chunks(std::int64_t trials, std::uint64_t seed, int threads, Body body) {
    const std::int64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<Result> out(static_cast<std::size_t>(chunks));
    if (chunks == 0) return out;
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = static_cast<int>(std::min<std::int64_t>(threads, chunks));

    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= chunks) return;
            const std::int64_t first = i * kChunkTrials;
            const std::int64_t count = std::min(kChunkTrials, trials - first);
            try {
                out[static_cast<std::size_t>(i)] = body(chunk_seed(seed, static_cast<std::uint64_t>(i)), first, count);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace ftcap

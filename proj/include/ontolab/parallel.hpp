// Copyright 2026 The Ontolab Authors
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

#ifndef ONTOLAB_PARALLEL_HPP
#define ONTOLAB_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ontolab {

/// Worker count: ONTOLAB_THREADS if set to a positive integer, else available parallelism.
std::size_t worker_count();

/// Number of runs accumulated into one partial result.
inline constexpr std::uint64_t kRunsPerBlock = 1 << 14;

/// Accumulates `runs` independent Monte Carlo runs.
///
/// `step(acc, run_index)` folds one run into a partial accumulator; partials are
/// combined with `merge(into, from)` in block order. Blocks have a fixed size, so the
/// result is bit-identical for every worker count.
template <class Acc, class Step, class Merge>
Acc parallel_accumulate(std::uint64_t runs, const Acc &zero, Step step, Merge merge) {
    const std::uint64_t blocks = (runs + kRunsPerBlock - 1) / kRunsPerBlock;
    if (blocks == 0) {
        return zero;
    }
    std::vector<Acc> partial(blocks, zero);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            for (std::uint64_t b = next++; b < blocks; b = next++) {
                const std::uint64_t begin = b * kRunsPerBlock;
                const std::uint64_t end = std::min(runs, begin + kRunsPerBlock);
                Acc &acc = partial[b];
                for (std::uint64_t r = begin; r < end; ++r) {
                    step(acc, r);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = blocks;
        }
    };

    const std::size_t n_workers =
        static_cast<std::size_t>(std::min<std::uint64_t>(worker_count(), blocks));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    Acc total = std::move(partial[0]);
    for (std::uint64_t b = 1; b < blocks; ++b) {
        merge(total, partial[b]);
    }
    return total;
}

}  // namespace ontolab

#endif

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

#ifndef ONTOLAB_RNG_HPP
#define ONTOLAB_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>

namespace ontolab {

/// SplitMix64 output finalizer (Stafford variant 13). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of the random stream owned by run `index` of an experiment seeded with `master`.
///
/// hash64(master, index) = mix64(master ^ mix64(index + 0x9e3779b97f4a7c15)).
/// Stream seeds depend only on (master, index), never on how runs are scheduled.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

/// Independent sub-experiment seed, e.g. one per ensemble of a two-sample test.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) noexcept {
    return stream_seed(mix64(master + 0x632be59bd9b4e019ULL), tag);
}

/// SplitMix64 generator; satisfies UniformRandomBitGenerator. Cheap to construct, so
/// every Monte Carlo run gets its own instance.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) noexcept { return uniform() < p; }

   private:
    std::uint64_t state_;
};

inline Rng run_rng(std::uint64_t master, std::uint64_t index) noexcept {
    return Rng(stream_seed(master, index));
}

}  // namespace ontolab

#endif

// Copyright 2026 The Flagshare Authors
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

#ifndef FLAGSHARE_RNG_H
#define FLAGSHARE_RNG_H

#include <cmath>
#include <cstdint>
#include <limits>

namespace flagshare {

inline uint64_t splitmix64(uint64_t &state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** seeded through splitmix64. `Rng(seed, stream)` gives the
/// independent stream used for trial `stream` of a run with `seed`, so results
/// do not depend on which worker executes the trial.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed, uint64_t stream = 0) {
        uint64_t sm = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
        for (auto &w : s_) {
            w = splitmix64(sm);
        }
    }

    static constexpr uint64_t min() {
        return 0;
    }
    static constexpr uint64_t max() {
        return std::numeric_limits<uint64_t>::max();
    }

    uint64_t operator()() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound).
    uint64_t below(uint64_t bound) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
    }

    /// Number of failed Bernoulli(q) trials before the first success.
    uint64_t geometric(double q) {
        if (q >= 1.0) {
            return 0;
        }
        if (q <= 0.0) {
            return std::numeric_limits<uint64_t>::max();
        }
        double u = 1.0 - uniform();
        double k = std::floor(std::log(u) / std::log1p(-q));
        if (k >= 1.8e19) {
            return std::numeric_limits<uint64_t>::max();
        }
        return static_cast<uint64_t>(k);
    }

   private:
    static uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    uint64_t s_[4];
};

}  // namespace flagshare

#endif

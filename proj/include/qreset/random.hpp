// Copyright 2026 The qreset Authors
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

// Counter-based random streams.
//
// Every Monte Carlo trajectory draws from its own Philox4x32-10 stream whose
// key is derived from the master seed and whose counter carries the
// (start state, trajectory index) pair. Streams are therefore independent of
// how trajectories are scheduled across workers.

#include <array>
#include <cstdint>
#include <limits>

namespace qreset {

/// Philox4x32-10 block cipher used as a counter-based generator.
class Philox4x32 {
public:
    using result_type = std::uint32_t;
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    /// Raw bijection: encrypt one 128-bit counter block under a 64-bit key.
    static constexpr Counter block(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

    /// Stream identified by (seed, stream_a, stream_b). Words 1 and 2 of the
    /// counter hold the stream ids; words 0 and 3 form the 64-bit block index.
    Philox4x32(std::uint64_t seed, std::uint32_t stream_a, std::uint32_t stream_b)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_a_(stream_a),
          stream_b_(stream_b) {}

    result_type operator()() {
        if (used_ == 4) {
            refill();
        }
        return buffer_[used_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        const std::uint64_t hi = (*this)() >> 5;  // 27 bits
        const std::uint64_t lo = (*this)() >> 6;  // 26 bits
        return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
    }

    std::uint64_t blocks_consumed() const { return block_; }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    void refill() {
        const Counter ctr{static_cast<std::uint32_t>(block_), stream_a_, stream_b_,
                          static_cast<std::uint32_t>(block_ >> 32)};
        buffer_ = block(ctr, key_);
        ++block_;
        used_ = 0;
    }

    Key key_;
    std::uint32_t stream_a_;
    std::uint32_t stream_b_;
    std::uint64_t block_ = 0;
    Counter buffer_{};
    int used_ = 4;
};

/// SplitMix64 finalizer; used to decorrelate user seeds before keying Philox.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

using RandomStream = Philox4x32;

}  // namespace qreset

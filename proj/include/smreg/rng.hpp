/*
   Copyright 2026 The smreg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace smreg {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Every output is a pure function of (key, counter), so independent
/// streams are obtained by fixing distinct high counter words instead of
/// seeding separate states. Satisfies UniformRandomBitGenerator with 64-bit
/// results (two 32-bit lanes per draw).
class Philox4x32 {
public:
    using result_type = std::uint64_t;
    using counter_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    Philox4x32(key_type key, std::uint32_t stream_word, std::uint32_t tag_word)
        : key_(key), hi_{stream_word, tag_word}
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (lane_ == 2) {
            counter_type ctr{static_cast<std::uint32_t>(block_),
                             static_cast<std::uint32_t>(block_ >> 32), hi_[0], hi_[1]};
            buffer_ = bijection(ctr, key_);
            ++block_;
            lane_ = 0;
        }
        const auto lo = buffer_[2 * lane_];
        const auto hi = buffer_[2 * lane_ + 1];
        ++lane_;
        return (static_cast<result_type>(hi) << 32) | lo;
    }

    /// The raw 10-round bijection; exposed for known-answer tests.
    static counter_type bijection(counter_type ctr, key_type key)
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

    key_type key_;
    std::array<std::uint32_t, 2> hi_;
    std::uint64_t block_ = 0;
    counter_type buffer_{};
    int lane_ = 2;
};

/// Independent random sources consumed by one replication.
enum class Substream : std::uint32_t {
    brownian = 1,
    levy_jumps = 2,
    renewal = 3,
    marks = 4,
};

/// Replication-level stream identity. Identical (base_seed, stream_index)
/// reproduce identical draws on every substream, bit for bit.
struct RngStream {
    std::uint64_t base_seed = 0;
    std::uint32_t stream_index = 0;

    Philox4x32 engine(Substream tag) const
    {
        const std::uint64_t k = splitmix64(base_seed);
        return Philox4x32({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)},
                          stream_index, static_cast<std::uint32_t>(tag));
    }

    friend bool operator==(const RngStream&, const RngStream&) = default;

private:
    static std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }
};

}  // namespace smreg

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

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>

#include "smreg/rng.hpp"

using smreg::Philox4x32;
using smreg::RngStream;
using smreg::Substream;

TEST_CASE("philox known-answer vectors")
{
    // Reference outputs of the Random123 distribution (kat_vectors, philox4x32 with 10 rounds).
    using C = Philox4x32::counter_type;
    using K = Philox4x32::key_type;
    CHECK(Philox4x32::bijection(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::bijection(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::bijection(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("engine output is the bijection of the running counter")
{
    const Philox4x32::key_type key{7, 9};
    Philox4x32 eng(key, 5, 2);
    for (std::uint32_t block = 0; block < 3; ++block) {
        const auto expect = Philox4x32::bijection({block, 0, 5, 2}, key);
        const auto a = eng();
        const auto b = eng();
        CHECK(a == ((static_cast<std::uint64_t>(expect[1]) << 32) | expect[0]));
        CHECK(b == ((static_cast<std::uint64_t>(expect[3]) << 32) | expect[2]));
    }
}

TEST_CASE("identical stream identity reproduces draws bit for bit")
{
    const RngStream s{42, 17};
    auto a = s.engine(Substream::marks);
    auto b = RngStream{42, 17}.engine(Substream::marks);
    for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
}

TEST_CASE("seeds, stream indices and substreams give distinct sequences")
{
    std::set<std::uint64_t> firsts;
    for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
        for (std::uint32_t idx : {0U, 1U, 1000U}) {
            for (auto tag : {Substream::brownian, Substream::levy_jumps, Substream::renewal, Substream::marks}) {
                firsts.insert(RngStream{seed, idx}.engine(tag)());
            }
        }
    }
    CHECK(firsts.size() == 36);
}

TEST_CASE("uniform bits have the right first two moments")
{
    auto eng = RngStream{123, 0}.engine(Substream::brownian);
    const int n = 200000;
    double s = 0.0;
    double q = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
        s += u;
        q += u * u;
    }
    // mean 1/2 with s.e. sqrt(1/12 / n); second moment 1/3
    CHECK(std::abs(s / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(q / n - 1.0 / 3.0) < 4e-3);
}

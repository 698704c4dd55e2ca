// SPDX-License-Identifier: Apache-2.0
//
// compcov - coverage analysis for coordinated multi-point uplink networks
// Copyright (C) 2026 The compcov authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <compcov/random.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace compcov;

TEST_CASE("Philox4x32-10 known-answer vectors", "[random]")
{
    // Random123 kat_vectors
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == Philox4x32Ctr{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          Philox4x32Ctr{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          Philox4x32Ctr{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("trial streams are reproducible and distinct", "[random]")
{
    TrialStream a({42, 7}), b({42, 7}), c({42, 8}), d({43, 7}), e({42, 7}, 1u);
    bool diff_c = false, diff_d = false, diff_e = false;
    for (int i = 0; i < 64; ++i)
    {
        const auto x = a.next_u32();
        CHECK(x == b.next_u32());
        diff_c = diff_c || x != c.next_u32();
        diff_d = diff_d || x != d.next_u32();
        diff_e = diff_e || x != e.next_u32();
    }
    CHECK(diff_c);
    CHECK(diff_d);
    CHECK(diff_e);
}

TEST_CASE("variates have the right moments", "[random]")
{
    const int n = 400000;
    double su = 0.0, sn = 0.0, sn2 = 0.0, se = 0.0;
    double umin = 1.0, umax = 0.0;
    for (int i = 0; i < n; ++i)
    {
        TrialStream s({2026, static_cast<std::uint64_t>(i)});
        const double u = s.uniform();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        su += u;
        const double z = s.normal();
        sn += z;
        sn2 += z * z;
        se += s.exponential();
    }
    CHECK(umin > 0.0);
    CHECK(umax < 1.0);
    CHECK(std::abs(su / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sn / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(sn2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(se / n - 1.0) < 4.0 / std::sqrt(n));
}

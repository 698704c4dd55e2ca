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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based random streams. Each Monte Carlo trial owns the stream keyed
// by the master seed and addressed by the trial index, so the draws of trial
// i never depend on which thread ran it or what ran before.

namespace compcov
{
    using Philox4x32Ctr = std::array<std::uint32_t, 4>;
    using Philox4x32Key = std::array<std::uint32_t, 2>;

    // Philox4x32 with 10 rounds (Salmon et al., SC'11).
    inline Philox4x32Ctr philox4x32_10(Philox4x32Ctr ctr, Philox4x32Key key)
    {
        constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
        constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                key[0] += W0;
                key[1] += W1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

    struct TrialSeed
    {
        std::uint64_t master = 0;
        std::uint64_t index = 0;
    };

    // Random stream for one trial. `domain` separates independent uses of the
    // same (master, index) pair, e.g. ICRI sampling vs. SINR sampling.
    class TrialStream
    {
    public:
        explicit TrialStream(TrialSeed s, std::uint32_t domain = 0)
            : key_{static_cast<std::uint32_t>(s.master), static_cast<std::uint32_t>(s.master >> 32)},
              ctr_{static_cast<std::uint32_t>(s.index), static_cast<std::uint32_t>(s.index >> 32), 0u, domain}
        {
        }

        std::uint32_t next_u32()
        {
            if (pos_ == 4)
            {
                buf_ = philox4x32_10(ctr_, key_);
                ++ctr_[2];
                pos_ = 0;
            }
            return buf_[pos_++];
        }

        // Uniform on the open interval (0, 1) with 53 random bits.
        double uniform()
        {
            const std::uint64_t a = next_u32() >> 5, b = next_u32() >> 6;
            return (static_cast<double>(a * 67108864u + b) + 0.5) * 0x1.0p-53;
        }

        // Standard normal via Box-Muller; the second variate is cached.
        double normal()
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            const double u1 = uniform(), u2 = uniform();
            const double rad = std::sqrt(-2.0 * std::log(u1));
            const double ang = 2.0 * std::numbers::pi * u2;
            spare_ = rad * std::sin(ang);
            has_spare_ = true;
            return rad * std::cos(ang);
        }

        double exponential() { return -std::log(uniform()); }

    private:
        Philox4x32Key key_;
        Philox4x32Ctr ctr_;
        Philox4x32Ctr buf_{};
        int pos_ = 4;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };

} // namespace compcov

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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace compcov
{
    // ---------- errors ----------

    // Invalid user-supplied configuration (bad ranges, unsupported combos).
    struct ConfigError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Numerical failure: non-convergent quadrature, moment underflow, ...
    struct NumericalError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // ---------- power ----------

    // Non-negative power in watts. All internal arithmetic uses this type;
    // dBm only appears when reading configs or writing reports.
    class PowerW
    {
    public:
        constexpr PowerW() = default;
        explicit PowerW(double watts) : value_(watts)
        {
            if (!(watts >= 0.0) || std::isinf(watts))
                throw ConfigError("power must be finite and non-negative, got " + std::to_string(watts));
        }

        constexpr double value() const { return value_; }
        friend constexpr bool operator==(PowerW, PowerW) = default;

    private:
        double value_ = 0.0;
    };

    inline PowerW dbm_to_watts(double dbm)
    {
        if (!std::isfinite(dbm))
            throw ConfigError("dBm value must be finite");
        return PowerW(std::pow(10.0, (dbm - 30.0) / 10.0));
    }

    // 0 W maps to -inf dBm.
    inline double watts_to_dbm(PowerW p)
    {
        return 10.0 * std::log10(p.value()) + 30.0;
    }

    inline double watts_to_dbw(PowerW p) { return 10.0 * std::log10(p.value()); }

    // ---------- shadowing ----------

    struct ShadowScale
    {
        double sigma_z;     // std-dev of ln(shadowing), nats
        double mean_factor; // E{10^(L/10)} = exp(sigma_z^2 / 2)
    };

    inline constexpr double db_to_nats = 0.1 * std::numbers::ln10;

    inline ShadowScale shadow_scale(double sigma_L_db)
    {
        if (!(sigma_L_db >= 0.0) || !std::isfinite(sigma_L_db))
            throw ConfigError("shadowing sigma_L must be finite and >= 0 dB");
        const double sz = db_to_nats * sigma_L_db;
        return {sz, std::exp(0.5 * sz * sz)};
    }

    // ---------- Gaussian tail ----------

    inline double q_function(double x)
    {
        return 0.5 * std::erfc(x / std::numbers::sqrt2);
    }

    // Standard normal pdf.
    inline double normal_pdf(double x)
    {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    }

    // Closed form of the integral of Q over [0, x].
    inline double q_integral(double x)
    {
        if (std::isnan(x) || x < 0.0)
            throw std::domain_error("q_integral requires x >= 0");
        const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
        if (std::isinf(x))
            return inv_sqrt_2pi;
        return x * q_function(x) - inv_sqrt_2pi * std::expm1(-0.5 * x * x);
    }

    // ---------- probability clamping ----------

    namespace detail
    {
        inline std::atomic<std::uint64_t> clamp_events{0};
    }

    // Number of times a computed probability fell outside [0,1] and was clamped.
    inline std::uint64_t clamp_event_count() { return detail::clamp_events.load(); }
    inline void reset_clamp_events() { detail::clamp_events.store(0); }

    inline double clamp_probability(double p)
    {
        if (p < 0.0 || p > 1.0)
        {
            detail::clamp_events.fetch_add(1, std::memory_order_relaxed);
            return p < 0.0 ? 0.0 : 1.0;
        }
        return p;
    }

    // ---------- summation ----------

    // Neumaier compensated sum.
    class CompensatedSum
    {
    public:
        void add(double x)
        {
            const double t = sum_ + x;
            if (std::abs(sum_) >= std::abs(x))
                comp_ += (sum_ - t) + x;
            else
                comp_ += (x - t) + sum_;
            sum_ = t;
        }
        CompensatedSum &operator+=(double x)
        {
            add(x);
            return *this;
        }
        double value() const { return sum_ + comp_; }

    private:
        double sum_ = 0.0;
        double comp_ = 0.0;
    };

    // ---------- network configuration ----------

    struct NetworkConfig
    {
        double d = 500.0;             // hexagon side length, m
        int N = 2;                    // cooperation order; 1 = no-CoMP baseline
        int M = 1;                    // receive antennas per BS
        double alpha = 4.0;           // path-loss exponent
        double sigma_L = 4.0;         // shadowing std-dev, dB
        PowerW tx_power{0.1};         // user transmit power (20 dBm)
        PowerW noise_power{1e-13};    // per-antenna noise (-100 dBm)
        int reuse = 6;                // frequency reuse among CRs (or cells when N = 1)
        int tiers = 1;                // interference tiers modelled

        double sigma_z() const { return shadow_scale(sigma_L).sigma_z; }

        void validate() const
        {
            if (!(d > 0.0) || !std::isfinite(d))
                throw ConfigError("d must be finite and > 0");
            if (N < 1 || N > 3)
                throw ConfigError("cooperation order N must be 1, 2 or 3");
            if (M < 1)
                throw ConfigError("M must be >= 1");
            if (!(alpha > 2.0) || !std::isfinite(alpha))
                throw ConfigError("path-loss exponent alpha must be > 2");
            shadow_scale(sigma_L);
            if (tiers < 1 || tiers > 2)
                throw ConfigError("tiers must be 1 or 2");
            if (N >= 2 && reuse != 6)
                throw ConfigError("cooperation orders 2 and 3 require reuse 6");
            if (N == 1 && reuse != 1 && reuse != 7)
                throw ConfigError("the no-CoMP baseline supports reuse 1 or 7");
        }
    };

    // BS density of the hexagonal grid, BSs per m^2.
    inline double density_from_side(double d)
    {
        return 2.0 / (3.0 * std::sqrt(3.0) * d * d);
    }

    inline double side_from_density(double lambda)
    {
        return std::sqrt(2.0 / (3.0 * std::sqrt(3.0) * lambda));
    }

} // namespace compcov

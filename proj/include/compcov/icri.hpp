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

#include "core.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

// Average inter-CR interference (ICRI). The d-normalized coefficient of one
// co-channel region is
//
//     beta_j = (1 / A) * integral over region of (x^2 + y^2)^(-alpha/2)
//
// with A the normalized CR area, and the average power on each receive
// antenna is  sigma_s^2 * exp(sigma_z^2 / 2) * sum_j beta_j * d^(-alpha).

namespace compcov
{
    // Absolute tolerance on each per-region integral.
    inline constexpr double beta_abs_tol = 1e-10;

    inline double beta_region(const ConvexPolygon &poly, double alpha, double a_cr_normalized)
    {
        if (!(alpha > 2.0) || !std::isfinite(alpha))
            throw ConfigError("alpha must be > 2");
        if (!(a_cr_normalized > 0.0))
            throw ConfigError("normalized CR area must be > 0");
        if (poly.distance_to({}) <= 1e-12)
            throw GeometryError("region contains the origin BS; the path-loss kernel is singular there");
        const double h = -0.5 * alpha;
        auto kernel = [h](Point2D p) { return std::pow(p.x * p.x + p.y * p.y, h); };
        return integrate_polygon(poly, kernel, beta_abs_tol * a_cr_normalized).value / a_cr_normalized;
    }

    struct IcriCoefficients
    {
        std::vector<double> per_region;
        std::vector<int> region_tier;
        double total = 0.0;
        double alpha = 0.0;
        int N = 0;
        int tiers = 0;

        double tier_sum(int t) const
        {
            CompensatedSum s;
            for (std::size_t j = 0; j < per_region.size(); ++j)
                if (region_tier[j] == t)
                    s += per_region[j];
            return s.value();
        }
    };

    namespace detail
    {
        inline IcriCoefficients compute_beta(double alpha, int N, int tiers)
        {
            const InterferenceLayout layout = interference_layout(N);
            const double a = cr_area_normalized(N);
            IcriCoefficients c;
            c.alpha = alpha;
            c.N = N;
            c.tiers = tiers;
            CompensatedSum total;
            for (const auto &r : layout.regions)
            {
                if (r.tier > tiers)
                    continue;
                const double b = beta_region(r.polygon, alpha, a);
                c.per_region.push_back(b);
                c.region_tier.push_back(r.tier);
                total += b;
            }
            c.total = total.value();
            return c;
        }
    } // namespace detail

    // beta(alpha, N) summed over the modelled tiers; cached per (alpha, N, tiers).
    inline IcriCoefficients beta_total(double alpha, int N, int tiers = 1)
    {
        if (N != 2 && N != 3)
            throw ConfigError("beta is defined for N = 2 or 3");
        if (tiers != 1 && tiers != 2)
            throw ConfigError("tiers must be 1 or 2");
        if (!(alpha > 2.0) || !std::isfinite(alpha))
            throw ConfigError("alpha must be > 2");

        static std::mutex mtx;
        static std::map<std::tuple<double, int, int>, IcriCoefficients> cache;
        const auto key = std::make_tuple(alpha, N, tiers);
        {
            std::lock_guard lock(mtx);
            if (auto it = cache.find(key); it != cache.end())
                return it->second;
        }
        IcriCoefficients c = detail::compute_beta(alpha, N, tiers);
        std::lock_guard lock(mtx);
        return cache.emplace(key, std::move(c)).first->second;
    }

    struct IcriResult
    {
        PowerW total_avg;
        std::vector<PowerW> per_tier; // index 0 = tier 1
        NetworkConfig config;
    };

    inline IcriResult icri_avg(const NetworkConfig &cfg)
    {
        cfg.validate();
        if (cfg.N != 2 && cfg.N != 3)
            throw ConfigError("average ICRI is defined for N = 2 or 3");
        const IcriCoefficients beta = beta_total(cfg.alpha, cfg.N, cfg.tiers);
        const double scale = cfg.tx_power.value() * shadow_scale(cfg.sigma_L).mean_factor * std::pow(cfg.d, -cfg.alpha);
        IcriResult r;
        r.config = cfg;
        CompensatedSum total;
        for (int t = 1; t <= cfg.tiers; ++t)
        {
            const double p = scale * beta.tier_sum(t);
            r.per_tier.emplace_back(p);
            total += p;
        }
        r.total_avg = PowerW(total.value());
        return r;
    }

} // namespace compcov

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
#include "icri.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

// Analytic coverage under the average-interference substitution.
//
// With the ICRI replaced by its average, the MRC SINR of a user served by N
// BSs is  SINR = sum_k xi_k z_k,  xi_k ~ Gamma(M, theta) (small-scale fading
// over M antennas) and z_k = r_k^(-alpha) * lognormal(0, sigma_z) (path loss
// and shadowing). The sum is fitted by a single lognormal through its first
// two raw moments, and CCP / ergodic capacity follow in closed form.

namespace compcov
{
    struct CoverageQuery
    {
        double c0 = 0.5; // target capacity, b/s/Hz

        // Linear SINR threshold 2^(N c0) - 1.
        double threshold(int N) const
        {
            if (!(c0 >= 0.0) || !std::isfinite(c0))
                throw ConfigError("c0 must be finite and >= 0");
            return std::expm1(N * c0 * std::numbers::ln2);
        }
    };

    struct SinrDecomposition
    {
        int N = 0;
        int kappa = 0;            // gamma shape = M
        double theta = 0.0;       // gamma scale = sigma_s^2 / (sigma_n^2 + I_avg)
        double c = 0.0;           // theta / 2: scale when xi_k is written as chi-square with 2M dof
        double sigma_z = 0.0;     // shadowing std-dev, nats
        std::vector<double> mu_z; // -alpha ln r_k
    };

    struct LognormalSinr
    {
        double mu = 0.0;
        double sigma = 0.0;
        double gamma1 = 0.0;
        double gamma2 = 0.0;
    };

    namespace detail
    {
        inline void check_distances(std::span<const double> r, int N)
        {
            if (static_cast<int>(r.size()) != N)
                throw ConfigError("distance vector length must equal N");
            for (double x : r)
            {
                if (x == 0.0)
                    throw AnchorCoincidenceError("distance to a cooperating BS is zero");
                if (!(x > 0.0) || !std::isfinite(x))
                    throw ConfigError("distances must be finite and > 0");
            }
        }

        inline double interference_power(const NetworkConfig &cfg)
        {
            if (cfg.N == 1)
                return 0.0;
            return icri_avg(cfg).total_avg.value();
        }
    } // namespace detail

    inline SinrDecomposition decompose(const NetworkConfig &cfg, std::span<const double> r)
    {
        cfg.validate();
        detail::check_distances(r, cfg.N);
        const double denom = cfg.noise_power.value() + detail::interference_power(cfg);
        SinrDecomposition dec;
        dec.N = cfg.N;
        dec.kappa = cfg.M;
        dec.theta = denom > 0.0 ? cfg.tx_power.value() / denom : std::numeric_limits<double>::infinity();
        dec.c = 0.5 * dec.theta;
        dec.sigma_z = cfg.sigma_z();
        for (double x : r)
            dec.mu_z.push_back(-cfg.alpha * std::log(x));
        return dec;
    }

    inline LognormalSinr moment_match(const SinrDecomposition &dec)
    {
        if (dec.mu_z.empty())
            throw ConfigError("empty decomposition");
        if (!(dec.theta > 0.0) || !std::isfinite(dec.theta))
            throw NumericalError("SINR scale theta is zero or infinite; moments are degenerate");
        // Sums are normalized by the largest term so very small r^-alpha do not underflow.
        const double mmax = *std::max_element(dec.mu_z.begin(), dec.mu_z.end());
        CompensatedSum s1n, s2n;
        for (double m : dec.mu_z)
        {
            const double e = std::exp(m - mmax);
            s1n += e;
            s2n += e * e;
        }
        const double s1 = s1n.value(), s2 = s2n.value();
        const double M = dec.kappa;
        const double sz2 = dec.sigma_z * dec.sigma_z;
        const double ratio = ((M + 1.0) * std::exp(sz2) * s2 + M * (s1 * s1 - s2)) / (M * s1 * s1);
        const double log_g1 = std::log(M * dec.theta * s1) + mmax + 0.5 * sz2;
        const double var = std::log(ratio);
        if (!(var > 0.0) || !std::isfinite(var) || !std::isfinite(log_g1))
            throw NumericalError("moment matching failed: gamma2 <= gamma1^2 or non-finite moments");
        LognormalSinr ln;
        ln.sigma = std::sqrt(var);
        ln.mu = log_g1 - 0.5 * var;
        ln.gamma1 = std::exp(log_g1);
        ln.gamma2 = std::exp(2.0 * log_g1 + var);
        return ln;
    }

    inline LognormalSinr fit(const NetworkConfig &cfg, std::span<const double> r)
    {
        return moment_match(decompose(cfg, r));
    }

    // ---------- CCP ----------

    inline double ccp_from_fit(const LognormalSinr &ln, int N, const CoverageQuery &q)
    {
        const double T = q.threshold(N);
        if (T == 0.0)
            return 1.0;
        return clamp_probability(q_function((std::log(T) - ln.mu) / ln.sigma));
    }

    inline double ccp_point(const NetworkConfig &cfg, std::span<const double> r, const CoverageQuery &q)
    {
        if (q.c0 == 0.0)
        {
            cfg.validate();
            detail::check_distances(r, cfg.N);
            return 1.0;
        }
        return ccp_from_fit(fit(cfg, r), cfg.N, q);
    }

    // ---------- ergodic capacity ----------

    // Closed form of integral_0^inf Q((N c ln2 - mu) / sigma) dc.
    inline double ergodic_from_fit(const LognormalSinr &ln, int N)
    {
        const double k = N * std::numbers::ln2;
        const double a = ln.mu / ln.sigma;
        const double c = ln.mu / k + (ln.sigma / k) * (normal_pdf(a) - a * q_function(a));
        return std::max(0.0, c);
    }

    inline double ergodic_point(const NetworkConfig &cfg, std::span<const double> r)
    {
        return ergodic_from_fit(fit(cfg, r), cfg.N);
    }

    // E{(1/N) log2(1 + X)} for the fitted lognormal X, i.e. the integral
    // without replacing ln(2^(N c) - 1) by N c ln2. Diagnostic only.
    inline double ergodic_unsubstituted_from_fit(const LognormalSinr &ln, int N)
    {
        constexpr int n = 4000;
        constexpr double zmax = 12.0;
        const double h = 2.0 * zmax / n;
        auto g = [&](double z) {
            const double y = ln.mu + ln.sigma * z;
            const double softplus = y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y));
            return normal_pdf(z) * softplus;
        };
        CompensatedSum s;
        for (int i = 0; i <= n; ++i)
        {
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            s += w * g(-zmax + i * h);
        }
        return s.value() * h / 3.0 / (N * std::numbers::ln2);
    }

    inline double ergodic_unsubstituted(const NetworkConfig &cfg, std::span<const double> r)
    {
        return ergodic_unsubstituted_from_fit(fit(cfg, r), cfg.N);
    }

    // ---------- multi-user ----------

    inline double sum_ccp(const NetworkConfig &cfg, const std::vector<std::vector<double>> &users,
                          const CoverageQuery &q)
    {
        if (users.empty())
            throw ConfigError("sum CCP needs at least one user");
        if (users.size() == 1)
            return ccp_point(cfg, users.front(), q);
        CompensatedSum mu, var;
        for (const auto &r : users)
        {
            const LognormalSinr ln = fit(cfg, r);
            mu += ln.mu;
            var += ln.sigma * ln.sigma;
        }
        const double T = q.threshold(cfg.N);
        if (T == 0.0)
            return 1.0;
        return clamp_probability(q_function((std::log(T) - mu.value()) / std::sqrt(var.value())));
    }

    // ---------- worst case ----------

    inline std::vector<double> worst_case_distances(const NetworkConfig &cfg)
    {
        const auto pts = worst_case_points(cfg);
        for (const auto &p : pts)
            for (double x : p.distances)
                if (std::abs(x - cfg.d) > 1e-9 * cfg.d)
                    throw GeometryError("worst-case point is not equidistant from the cooperating BSs");
        return std::vector<double>(static_cast<std::size_t>(cfg.N), cfg.d);
    }

    inline double worst_case_ccp(const NetworkConfig &cfg, const CoverageQuery &q)
    {
        return ccp_point(cfg, worst_case_distances(cfg), q);
    }

    inline double worst_case_ergodic(const NetworkConfig &cfg)
    {
        return ergodic_point(cfg, worst_case_distances(cfg));
    }

    // ---------- region-level ----------

    // Mean CCP over the home CR under a uniform user density. Every fan
    // triangle is split into resolution^2 congruent sub-triangles and the CCP
    // is sampled at their centroids, so no sample lands on a BS.
    inline double average_ccp(const NetworkConfig &cfg, const CoverageQuery &q, int resolution = 64)
    {
        if (resolution < 32)
            throw ConfigError("average CCP resolution must be >= 32");
        const CoopRegion cr = home_region(cfg);
        const Point2D c = cr.polygon.centroid();
        const double n = resolution;
        CompensatedSum sum;
        std::size_t count = 0;
        std::vector<double> r(cr.anchors.size());
        auto eval = [&](Point2D p) {
            for (std::size_t k = 0; k < r.size(); ++k)
                r[k] = norm(p - cr.anchors[k]);
            sum += ccp_point(cfg, r, q);
            ++count;
        };
        for (std::size_t e = 0; e < cr.polygon.size(); ++e)
        {
            const Point2D A = c, B = cr.polygon[e], C = cr.polygon[(e + 1) % cr.polygon.size()];
            const Point2D u = (1.0 / n) * (B - A), v = (1.0 / n) * (C - A);
            for (int i = 0; i < resolution; ++i)
                for (int j = 0; i + j < resolution; ++j)
                {
                    const Point2D base = A + static_cast<double>(i) * u + static_cast<double>(j) * v;
                    eval(base + (1.0 / 3.0) * (u + v));         // upward sub-triangle
                    if (i + j + 1 < resolution)
                        eval(base + (2.0 / 3.0) * (u + v));     // downward sub-triangle
                }
        }
        // All fan triangles of the canonical CRs have equal area, so the plain
        // mean is the area-weighted mean.
        return sum.value() / static_cast<double>(count);
    }

    // True when the average ICRI exceeds `ratio` times the noise power.
    inline bool interference_limited(const NetworkConfig &cfg, double ratio = 100.0)
    {
        const double I = detail::interference_power(cfg);
        const double n = cfg.noise_power.value();
        if (n == 0.0)
            return I > 0.0;
        return I / n > ratio;
    }

    struct CcpMapRow
    {
        Point2D p;
        std::vector<double> r;
        double ccp = 0.0;
        double ergodic = 0.0;
        int ix = 0;
        int iy = 0;
    };

    // resolution x resolution cell-centred grid over the CR bounding box;
    // cells whose centre falls inside the CR are evaluated.
    inline std::vector<CcpMapRow> ccp_map(const NetworkConfig &cfg, const CoverageQuery &q, int resolution = 50)
    {
        if (resolution < 2)
            throw ConfigError("map resolution must be >= 2");
        const CoopRegion cr = home_region(cfg);
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (const auto &v : cr.polygon.vertices())
        {
            x0 = std::min(x0, v.x);
            x1 = std::max(x1, v.x);
            y0 = std::min(y0, v.y);
            y1 = std::max(y1, v.y);
        }
        const double hx = (x1 - x0) / resolution, hy = (y1 - y0) / resolution;
        std::vector<CcpMapRow> rows;
        for (int iy = 0; iy < resolution; ++iy)
            for (int ix = 0; ix < resolution; ++ix)
            {
                const Point2D p{x0 + (ix + 0.5) * hx, y0 + (iy + 0.5) * hy};
                if (!cr.polygon.contains(p, 0.0))
                    continue;
                CcpMapRow row;
                row.p = p;
                row.ix = ix;
                row.iy = iy;
                row.r = distances(p, cr);
                const LognormalSinr ln = fit(cfg, row.r);
                row.ccp = ccp_from_fit(ln, cfg.N, q);
                row.ergodic = ergodic_from_fit(ln, cfg.N);
                rows.push_back(std::move(row));
            }
        return rows;
    }

} // namespace compcov

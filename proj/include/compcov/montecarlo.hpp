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
#include "coverage.hpp"
#include "geometry.hpp"
#include "random.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <complex>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

// Link-level Monte Carlo with instantaneous interference.
//
// Per trial: Rayleigh fading per (user, antenna), lognormal shadowing per
// (user, BS) shared by that BS's antennas, one interfering user uniformly
// placed in every co-channel region that falls in the modelled tiers of at
// least one cooperating BS. A BS only receives interference from regions in
// its own tiers. The cooperating BSs combine with MRC.

namespace compcov
{
    struct McOptions
    {
        std::uint64_t trials = 100000;
        std::uint64_t seed = 1;
        unsigned workers = 0; // 0 = hardware concurrency
    };

    struct McEstimate
    {
        double mean = 0.0;
        double std_error = 0.0; // sample std-dev / sqrt(trials)
        std::uint64_t trials = 0;
        double elapsed_s = 0.0;
        std::uint64_t seed = 0;
    };

    // ---------- parallel runner ----------

    inline constexpr std::uint64_t mc_block_size = 1024;

    inline unsigned resolve_workers(unsigned w)
    {
        if (w > 0)
            return w;
        const unsigned h = std::thread::hardware_concurrency();
        return h > 0 ? h : 1;
    }

    // Calls fn(i) for every i in [0, n). Blocks of trials are handed out
    // dynamically; fn must write only to slot i of its output.
    template <class F>
    void parallel_trials(std::uint64_t n, unsigned workers, F fn)
    {
        const std::uint64_t blocks = (n + mc_block_size - 1) / mc_block_size;
        workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(blocks, 1)));
        std::atomic<std::uint64_t> next{0};
        auto work = [&] {
            for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1))
            {
                const std::uint64_t end = std::min(n, (b + 1) * mc_block_size);
                for (std::uint64_t i = b * mc_block_size; i < end; ++i)
                    fn(i);
            }
        };
        if (workers <= 1)
        {
            work();
            return;
        }
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }

    // Mean and standard error of per-trial values, reduced in trial order.
    inline McEstimate summarize(const std::vector<double> &x, std::uint64_t seed, double elapsed)
    {
        McEstimate e;
        e.trials = x.size();
        e.seed = seed;
        e.elapsed_s = elapsed;
        if (x.empty())
            return e;
        CompensatedSum s;
        for (double v : x)
            s += v;
        e.mean = s.value() / static_cast<double>(x.size());
        if (x.size() > 1)
        {
            CompensatedSum ss;
            for (double v : x)
                ss += (v - e.mean) * (v - e.mean);
            e.std_error = std::sqrt(ss.value() / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
        }
        return e;
    }

    // ---------- scene ----------

    // Everything the simulator needs, normalized to d = 1 and centred on the
    // home BS.
    struct McScene
    {
        std::vector<Point2D> anchors;
        std::vector<ConvexPolygon> interferers;
        std::vector<std::vector<bool>> hears; // [bs][region]
        Point2D user;                         // default user position
        double prelog = 1.0;                  // capacity = log2(1 + SINR) / prelog
        ConvexPolygon serving;                // region users are confined to
    };

    inline McScene make_scene(const NetworkConfig &cfg)
    {
        cfg.validate();
        McScene s;
        if (cfg.N >= 2)
        {
            NetworkConfig unit = cfg;
            unit.d = 1.0;
            const CoChannelScene cs = cochannel_scene(unit);
            s.anchors = cs.home.anchors;
            s.interferers = cs.interferers;
            s.hears = cs.hears;
            s.serving = cs.home.polygon;
            s.user = worst_case_points(unit).front().point;
            s.prelog = cfg.N;
            return s;
        }
        // No-CoMP baseline: single BS, user at a hexagon vertex.
        s.anchors = {Point2D{}};
        s.serving = hexagon({}, 1.0);
        s.user = {std::sqrt(3.0) / 2.0, 0.5};
        s.hears.assign(1, {});
        if (cfg.reuse == 1)
        {
            // Two full tiers of co-channel cells (6 + 12).
            for (int ring = 1; ring <= 2; ++ring)
                for (const auto &b : lattice_ring(ring))
                {
                    s.interferers.push_back(hexagon(bs_position(b, 1.0), 1.0));
                    s.hears[0].push_back(true);
                }
            s.prelog = 1.0;
        }
        else
        {
            s.prelog = 7.0;
        }
        return s;
    }

    // ---------- per-trial sample ----------

    struct ChannelSample
    {
        std::size_t antennas = 0;                  // N * M, index k * M + i
        std::vector<std::complex<double>> h;       // desired user
        std::vector<std::complex<double>> g;       // row-major antennas x interferers
        std::vector<Point2D> interferer_positions; // meters

        std::complex<double> g_at(std::size_t antenna, std::size_t j) const
        {
            return g[antenna * interferer_positions.size() + j];
        }
    };

    namespace detail
    {
        inline Point2D uniform_in(const ConvexPolygon &poly, TrialStream &rng)
        {
            double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
            for (const auto &v : poly.vertices())
            {
                x0 = std::min(x0, v.x);
                x1 = std::max(x1, v.x);
                y0 = std::min(y0, v.y);
                y1 = std::max(y1, v.y);
            }
            for (;;)
            {
                const Point2D p{x0 + (x1 - x0) * rng.uniform(), y0 + (y1 - y0) * rng.uniform()};
                if (poly.contains(p, 0.0))
                    return p;
            }
        }

        // Unit-variance circularly-symmetric complex Gaussian.
        inline std::complex<double> cn01(TrialStream &rng)
        {
            const double re = rng.normal(), im = rng.normal();
            return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
        }

        // Amplitude 10^(-(PL + L)/20) with PL = 10 alpha log10(r) and L the
        // shadowing in dB.
        inline double link_amplitude(double r, double alpha, double sigma_z, double shadow_normal)
        {
            return std::exp(-0.5 * (alpha * std::log(r) + sigma_z * shadow_normal));
        }
    } // namespace detail

    // Draws one trial. `user` is in meters; the scene is scaled by cfg.d.
    inline ChannelSample sample_trial(const NetworkConfig &cfg, const McScene &scene, Point2D user, TrialSeed seed)
    {
        TrialStream rng(seed);
        const std::size_t K = scene.anchors.size();
        const std::size_t M = static_cast<std::size_t>(cfg.M);
        const std::size_t J = scene.interferers.size();
        const double sz = cfg.sigma_z();
        ChannelSample s;
        s.antennas = K * M;
        s.h.resize(K * M);
        s.g.assign(K * M * J, {0.0, 0.0});
        s.interferer_positions.resize(J);
        for (std::size_t k = 0; k < K; ++k)
        {
            const double r = norm(user - cfg.d * scene.anchors[k]);
            if (r == 0.0)
                throw AnchorCoincidenceError("user coincides with a cooperating BS");
            const double amp = detail::link_amplitude(r, cfg.alpha, sz, rng.normal());
            for (std::size_t i = 0; i < M; ++i)
                s.h[k * M + i] = amp * detail::cn01(rng);
        }
        for (std::size_t j = 0; j < J; ++j)
        {
            const Point2D p = cfg.d * detail::uniform_in(scene.interferers[j], rng);
            s.interferer_positions[j] = p;
            for (std::size_t k = 0; k < K; ++k)
            {
                const double r = norm(p - cfg.d * scene.anchors[k]);
                const double amp = detail::link_amplitude(r, cfg.alpha, sz, rng.normal());
                for (std::size_t i = 0; i < M; ++i)
                {
                    const std::complex<double> v = amp * detail::cn01(rng);
                    if (scene.hears[k][j])
                        s.g[(k * M + i) * J + j] = v;
                }
            }
        }
        return s;
    }

    // MRC output SINR  sigma_s^2 (h^H h)^2 / (h^H G h),
    // [G]_ii = sigma_n^2 + sigma_s^2 sum_j |g_ij|^2.
    inline double sinr_instant(const ChannelSample &s, const NetworkConfig &cfg)
    {
        const double ps = cfg.tx_power.value(), pn = cfg.noise_power.value();
        const std::size_t J = s.interferer_positions.size();
        CompensatedSum hh, hgh;
        for (std::size_t a = 0; a < s.antennas; ++a)
        {
            const double h2 = std::norm(s.h[a]);
            double gi = 0.0;
            for (std::size_t j = 0; j < J; ++j)
                gi += std::norm(s.g[a * J + j]);
            hh += h2;
            hgh += h2 * (pn + ps * gi);
        }
        return ps * hh.value() * hh.value() / hgh.value();
    }

    // ---------- scale-free trial table ----------

    // Per-trial sufficient statistics sampled at d = 1:
    //   a = h^H h,  b = sum_i |h_i|^2 sum_j |g_ij|^2.
    // Every distance scales with d, so at side d
    //   SINR(d) = sigma_s^2 a^2 / (sigma_n^2 a d^alpha + sigma_s^2 b).
    // Reusing one table across d gives common random numbers for the solver.
    class TrialTable
    {
    public:
        TrialTable(const NetworkConfig &cfg, const McScene &scene, Point2D user_normalized, const McOptions &opt)
            : cfg_(cfg), prelog_(scene.prelog), seed_(opt.seed)
        {
            if (opt.trials < 1)
                throw ConfigError("trials must be >= 1");
            NetworkConfig unit = cfg;
            unit.d = 1.0;
            a_.resize(opt.trials);
            b_.resize(opt.trials);
            const auto t0 = std::chrono::steady_clock::now();
            parallel_trials(opt.trials, opt.workers, [&](std::uint64_t i) {
                const ChannelSample s = sample_trial(unit, scene, user_normalized, {opt.seed, i});
                const std::size_t J = s.interferer_positions.size();
                double a = 0.0, b = 0.0;
                for (std::size_t k = 0; k < s.antennas; ++k)
                {
                    const double h2 = std::norm(s.h[k]);
                    double gi = 0.0;
                    for (std::size_t j = 0; j < J; ++j)
                        gi += std::norm(s.g[k * J + j]);
                    a += h2;
                    b += h2 * gi;
                }
                a_[i] = a;
                b_[i] = b;
            });
            build_s_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }

        std::uint64_t trials() const { return a_.size(); }
        double prelog() const { return prelog_; }

        double sinr(std::uint64_t i, double d, double noise_w) const
        {
            const double ps = cfg_.tx_power.value();
            const double denom = noise_w * a_[i] * std::pow(d, cfg_.alpha) + ps * b_[i];
            return ps * a_[i] * a_[i] / denom;
        }

        McEstimate ccp(double d, const CoverageQuery &q) const { return ccp(d, q, cfg_.noise_power.value()); }

        McEstimate ccp(double d, const CoverageQuery &q, double noise_w) const
        {
            const double T = std::expm1(prelog_ * q.c0 * std::numbers::ln2);
            if (!(q.c0 >= 0.0))
                throw ConfigError("c0 must be >= 0");
            std::vector<double> x(a_.size());
            for (std::uint64_t i = 0; i < a_.size(); ++i)
                x[i] = (T == 0.0 || sinr(i, d, noise_w) > T) ? 1.0 : 0.0;
            return summarize(x, seed_, build_s_);
        }

        McEstimate ergodic(double d) const { return ergodic(d, cfg_.noise_power.value()); }

        McEstimate ergodic(double d, double noise_w) const
        {
            std::vector<double> x(a_.size());
            for (std::uint64_t i = 0; i < a_.size(); ++i)
                x[i] = std::log2(1.0 + sinr(i, d, noise_w)) / prelog_;
            return summarize(x, seed_, build_s_);
        }

    private:
        NetworkConfig cfg_;
        double prelog_;
        std::uint64_t seed_;
        double build_s_ = 0.0;
        std::vector<double> a_, b_;
    };

    // ---------- estimators ----------

    namespace detail
    {
        inline Point2D resolve_user(const NetworkConfig &cfg, const McScene &scene, std::optional<Point2D> position)
        {
            if (!position)
                return scene.user;
            const Point2D p = (1.0 / cfg.d) * *position;
            if (!scene.serving.contains(p, 1e-9))
                throw OutsideRegionError("user position lies outside the serving region");
            return p;
        }
    } // namespace detail

    // CCP at `position` (meters; nullopt = worst-case point).
    inline McEstimate estimate_ccp(const NetworkConfig &cfg, std::optional<Point2D> position, const CoverageQuery &q,
                                   const McOptions &opt)
    {
        const McScene scene = make_scene(cfg);
        if (q.c0 == 0.0)
            return McEstimate{1.0, 0.0, opt.trials, 0.0, opt.seed};
        const TrialTable t(cfg, scene, detail::resolve_user(cfg, scene, position), opt);
        return t.ccp(cfg.d, q);
    }

    inline std::vector<McEstimate> estimate_ccp_curve(const NetworkConfig &cfg, std::optional<Point2D> position,
                                                      const std::vector<double> &c0_grid, const McOptions &opt)
    {
        const McScene scene = make_scene(cfg);
        const TrialTable t(cfg, scene, detail::resolve_user(cfg, scene, position), opt);
        std::vector<McEstimate> out;
        for (double c0 : c0_grid)
            out.push_back(t.ccp(cfg.d, CoverageQuery{c0}));
        return out;
    }

    inline McEstimate estimate_ergodic(const NetworkConfig &cfg, std::optional<Point2D> position, const McOptions &opt)
    {
        const McScene scene = make_scene(cfg);
        const TrialTable t(cfg, scene, detail::resolve_user(cfg, scene, position), opt);
        return t.ergodic(cfg.d);
    }

    // No-CoMP baseline (N = 1, reuse 1 or 7) at the hexagon vertex.
    inline McEstimate baseline_no_comp(const NetworkConfig &cfg, const CoverageQuery &q, const McOptions &opt)
    {
        if (cfg.N != 1)
            throw ConfigError("the no-CoMP baseline requires N = 1");
        return estimate_ccp(cfg, std::nullopt, q, opt);
    }

    // Empirical mean ICRI at one antenna of the home BS, one estimate per
    // modelled tier (index 0 = tier 1).
    inline std::vector<McEstimate> estimate_icri(const NetworkConfig &cfg, const McOptions &opt)
    {
        cfg.validate();
        if (cfg.N != 2 && cfg.N != 3)
            throw ConfigError("ICRI estimation is defined for N = 2 or 3");
        const InterferenceLayout layout = interference_layout(cfg);
        const double sz = cfg.sigma_z();
        const double ps = cfg.tx_power.value();
        const auto tiers = static_cast<std::size_t>(cfg.tiers);
        std::vector<std::vector<double>> x(tiers, std::vector<double>(opt.trials));
        const auto t0 = std::chrono::steady_clock::now();
        parallel_trials(opt.trials, opt.workers, [&](std::uint64_t i) {
            TrialStream rng({opt.seed, i}, 1u);
            std::vector<double> acc(tiers, 0.0);
            for (const auto &reg : layout.regions)
            {
                if (reg.tier > cfg.tiers)
                    continue;
                const Point2D p = cfg.d * detail::uniform_in(reg.polygon, rng);
                const double amp = detail::link_amplitude(norm(p), cfg.alpha, sz, rng.normal());
                acc[static_cast<std::size_t>(reg.tier - 1)] += ps * std::norm(amp * detail::cn01(rng));
            }
            for (std::size_t t = 0; t < tiers; ++t)
                x[t][i] = acc[t];
        });
        const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::vector<McEstimate> out;
        for (const auto &v : x)
            out.push_back(summarize(v, opt.seed, el));
        return out;
    }

} // namespace compcov

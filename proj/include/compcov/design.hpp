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
#include "montecarlo.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

// Network dimensioning: the largest cell (smallest BS density) whose
// worst-case CCP or ergodic capacity still meets a target.

namespace compcov
{
    enum class DesignMetric
    {
        ccp,
        ergodic
    };

    enum class DesignStatus
    {
        solved,
        interference_limited_infeasible,
        out_of_bracket
    };

    inline const char *to_string(DesignStatus s)
    {
        switch (s)
        {
        case DesignStatus::solved:
            return "solved";
        case DesignStatus::interference_limited_infeasible:
            return "interference_limited_infeasible";
        case DesignStatus::out_of_bracket:
            return "out_of_bracket";
        }
        return "unknown";
    }

    inline const char *to_string(DesignMetric m) { return m == DesignMetric::ccp ? "ccp" : "ergodic"; }

    inline std::string scheme_label(const NetworkConfig &cfg)
    {
        if (cfg.N == 1)
            return "N=1 reuse-" + std::to_string(cfg.reuse);
        return "N=" + std::to_string(cfg.N);
    }

    struct SolverOptions
    {
        double d_lo = 1.0;
        double d_hi = 1e5;
        double rel_tol = 1e-4;
        McOptions mc{200000, 1, 0}; // used by the N = 1 baselines only
    };

    struct DesignSolution
    {
        std::string scheme;
        DesignMetric metric = DesignMetric::ccp;
        DesignStatus status = DesignStatus::solved;
        double lambda = std::numeric_limits<double>::quiet_NaN();
        double d = std::numeric_limits<double>::quiet_NaN();
        double target = 0.0;
        double achieved = std::numeric_limits<double>::quiet_NaN();
        double floor = 0.0;     // dense-limit (noise-free) metric
        double tolerance = 0.0; // 3 stderr for Monte Carlo metrics, 0 otherwise
        int iterations = 0;
        std::optional<std::uint64_t> trials;
        std::optional<std::uint64_t> seed;
    };

    namespace detail
    {
        // Metric evaluator at side d; `noise_free` selects the dense limit.
        struct MetricEval
        {
            std::function<McEstimate(double d, bool noise_free)> eval;
            bool monte_carlo = false;
        };

        inline MetricEval make_metric(const NetworkConfig &cfg, DesignMetric metric, const CoverageQuery &q,
                                      const SolverOptions &opt)
        {
            cfg.validate();
            if (cfg.N >= 2)
            {
                return {[cfg, metric, q](double d, bool noise_free) {
                            NetworkConfig c = cfg;
                            c.d = d;
                            if (noise_free)
                                c.noise_power = PowerW(0.0);
                            const double v = metric == DesignMetric::ccp ? worst_case_ccp(c, q) : worst_case_ergodic(c);
                            return McEstimate{v, 0.0, 0, 0.0, 0};
                        },
                        false};
            }
            const McScene scene = make_scene(cfg);
            auto table = std::make_shared<TrialTable>(cfg, scene, scene.user, opt.mc);
            const double noise = cfg.noise_power.value();
            return {[table, metric, q, noise](double d, bool noise_free) {
                        const double n = noise_free ? 0.0 : noise;
                        return metric == DesignMetric::ccp ? table->ccp(d, q, n) : table->ergodic(d, n);
                    },
                    true};
        }
    } // namespace detail

    inline DesignSolution solve_density(const NetworkConfig &cfg, double target, const CoverageQuery &q,
                                        DesignMetric metric = DesignMetric::ccp, const SolverOptions &opt = {})
    {
        if (metric == DesignMetric::ccp && !(target > 0.0 && target < 1.0))
            throw ConfigError("CCP target must lie in (0, 1)");
        if (metric == DesignMetric::ergodic && !(target > 0.0))
            throw ConfigError("ergodic target must be > 0");
        if (!(opt.d_lo > 0.0 && opt.d_hi > opt.d_lo && opt.rel_tol > 0.0))
            throw ConfigError("invalid solver bracket or tolerance");

        const detail::MetricEval m = detail::make_metric(cfg, metric, q, opt);
        DesignSolution s;
        s.scheme = scheme_label(cfg);
        s.metric = metric;
        s.target = target;
        if (m.monte_carlo)
        {
            s.trials = opt.mc.trials;
            s.seed = opt.mc.seed;
        }

        // Without noise the metric does not depend on d, so one evaluation
        // gives the floor that densification can never beat.
        s.floor = m.eval(opt.d_lo, true).mean;
        if (s.floor < target)
        {
            s.status = DesignStatus::interference_limited_infeasible;
            return s;
        }
        double lo = opt.d_lo, hi = opt.d_hi;
        McEstimate at_lo = m.eval(lo, false);
        const McEstimate at_hi = m.eval(hi, false);
        if (!(at_lo.mean >= target) || !(at_hi.mean < target))
        {
            s.status = DesignStatus::out_of_bracket;
            s.achieved = at_lo.mean;
            return s;
        }
        while (hi / lo - 1.0 > opt.rel_tol)
        {
            const double mid = std::sqrt(lo * hi);
            const McEstimate e = m.eval(mid, false);
            if (e.mean >= target)
            {
                lo = mid;
                at_lo = e;
            }
            else
            {
                hi = mid;
            }
            ++s.iterations;
        }
        s.status = DesignStatus::solved;
        s.d = lo;
        s.lambda = density_from_side(lo);
        s.achieved = at_lo.mean;
        s.tolerance = m.monte_carlo ? 3.0 * at_lo.std_error : 0.0;
        return s;
    }

    struct SweepRow
    {
        double lambda = 0.0;
        double d = 0.0;
        double ccp = 0.0;
        double ergodic = 0.0;
        double ccp_std_error = 0.0;
        double ergodic_std_error = 0.0;
    };

    // Worst-case CCP and ergodic capacity over a grid of cell sides.
    inline std::vector<SweepRow> sweep_metric(const NetworkConfig &cfg, const std::vector<double> &d_grid,
                                              const CoverageQuery &q, const SolverOptions &opt = {})
    {
        if (d_grid.empty())
            throw ConfigError("sweep grid is empty");
        for (double d : d_grid)
            if (!(d > 0.0) || !std::isfinite(d))
                throw ConfigError("sweep grid values must be finite and > 0");
        const detail::MetricEval ccp = detail::make_metric(cfg, DesignMetric::ccp, q, opt);
        const detail::MetricEval erg = detail::make_metric(cfg, DesignMetric::ergodic, q, opt);
        std::vector<SweepRow> rows;
        for (double d : d_grid)
        {
            const McEstimate c = ccp.eval(d, false), e = erg.eval(d, false);
            rows.push_back({density_from_side(d), d, c.mean, e.mean, c.std_error, e.std_error});
        }
        return rows;
    }

    inline std::vector<double> lambda_grid_to_d(const std::vector<double> &lambdas)
    {
        std::vector<double> d;
        for (double l : lambdas)
        {
            if (!(l > 0.0) || !std::isfinite(l))
                throw ConfigError("density values must be finite and > 0");
            d.push_back(side_from_density(l));
        }
        return d;
    }

    struct ComparisonRow
    {
        std::string scheme;
        DesignSolution solution;
        double ratio_vs_reuse1 = std::numeric_limits<double>::quiet_NaN();
        double ratio_vs_reuse7 = std::numeric_limits<double>::quiet_NaN();
    };

    // Required density per scheme (N = 1 reuse-1, N = 1 reuse-7, N = 2, N = 3)
    // for the worst-case CCP target, with ratios against both baselines.
    inline std::vector<ComparisonRow> compare_orders(const NetworkConfig &base, double target, const CoverageQuery &q,
                                                     const SolverOptions &opt = {})
    {
        std::vector<NetworkConfig> schemes;
        for (int reuse : {1, 7})
        {
            NetworkConfig c = base;
            c.N = 1;
            c.reuse = reuse;
            schemes.push_back(c);
        }
        for (int N : {2, 3})
        {
            NetworkConfig c = base;
            c.N = N;
            c.reuse = 6;
            schemes.push_back(c);
        }
        std::vector<ComparisonRow> rows;
        for (const auto &c : schemes)
            rows.push_back({scheme_label(c), solve_density(c, target, q, DesignMetric::ccp, opt)});
        const double l1 = rows[0].solution.lambda, l7 = rows[1].solution.lambda;
        for (auto &r : rows)
        {
            if (r.solution.status != DesignStatus::solved)
                continue;
            if (rows[0].solution.status == DesignStatus::solved)
                r.ratio_vs_reuse1 = r.solution.lambda / l1;
            if (rows[1].solution.status == DesignStatus::solved)
                r.ratio_vs_reuse7 = r.solution.lambda / l7;
        }
        return rows;
    }

} // namespace compcov

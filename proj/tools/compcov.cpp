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

#include <compcov/compcov.hpp>
#include <compcov/io.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace compcov;

namespace
{
    constexpr const char *tool_version = "compcov 0.1.0";

    constexpr int exit_ok = 0;
    constexpr int exit_config = 2;
    constexpr int exit_infeasible = 3;
    constexpr int exit_internal = 4;

    struct Overrides
    {
        std::string config;
        std::string out;
        std::optional<std::uint64_t> seed, trials;
        std::optional<unsigned> workers;
        std::optional<double> alpha, d, c0, target, sigma_l;
        std::optional<int> n, m, reuse, tiers;
    };

    void add_common(CLI::App &sub, Overrides &o)
    {
        sub.add_option("--config", o.config, "JSON study configuration")->check(CLI::ExistingFile);
        sub.add_option("--out", o.out, "output file ('-' for stdout)");
        sub.add_option("--seed", o.seed, "master seed for Monte Carlo streams");
        sub.add_option("--trials", o.trials, "Monte Carlo trials");
        sub.add_option("--workers", o.workers, "worker threads (0 = hardware concurrency)");
        sub.add_option("--alpha", o.alpha, "path-loss exponent");
        sub.add_option("--n", o.n, "cooperation order N (1, 2, 3)");
        sub.add_option("--m", o.m, "antennas per BS");
        sub.add_option("--d", o.d, "hexagon side, m");
        sub.add_option("--c0", o.c0, "target capacity, b/s/Hz");
        sub.add_option("--target", o.target, "design target (CCP or ergodic b/s/Hz)");
        sub.add_option("--sigma-l", o.sigma_l, "shadowing standard deviation, dB");
        sub.add_option("--reuse", o.reuse, "reuse factor for N = 1 (1 or 7)");
        sub.add_option("--tiers", o.tiers, "interference tiers (1 or 2)");
    }

    // defaults < config file < flags
    StudyConfig resolve(const Overrides &o)
    {
        StudyConfig s;
        if (!o.config.empty())
        {
            std::ifstream in(o.config);
            if (!in)
                throw ConfigError("cannot read config '" + o.config + "'");
            json j;
            try
            {
                j = json::parse(in);
            }
            catch (const json::parse_error &e)
            {
                throw ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            s = study_from_json(j);
        }
        if (o.seed)
            s.mc.seed = *o.seed;
        if (o.trials)
            s.mc.trials = *o.trials;
        if (o.workers)
            s.mc.workers = *o.workers;
        if (o.alpha)
            s.network.alpha = *o.alpha;
        if (o.d)
            s.network.d = *o.d;
        if (o.c0)
            s.c0 = *o.c0;
        if (o.target)
            s.target = *o.target;
        if (o.sigma_l)
            s.network.sigma_L = *o.sigma_l;
        if (o.n)
        {
            s.network.N = *o.n;
            if (s.network.N == 1 && !o.reuse && s.network.reuse == 6)
                s.network.reuse = 7;
        }
        if (o.m)
            s.network.M = *o.m;
        if (o.reuse)
            s.network.reuse = *o.reuse;
        if (o.tiers)
            s.network.tiers = *o.tiers;
        if (!o.out.empty())
            s.output = o.out;
        validate(s);
        return s;
    }

    json footer(const StudyConfig &s, bool monte_carlo)
    {
        json f{{"config", to_json(s)}, {"tool", tool_version}};
        if (monte_carlo)
        {
            f["seed"] = s.mc.seed;
            f["trials"] = s.mc.trials;
        }
        return f;
    }

    void emit(const StudyConfig &s, const std::string &text)
    {
        if (s.output == "-")
        {
            std::cout << text << std::flush;
            return;
        }
        std::ofstream out(s.output, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write '" + s.output + "'");
        out << text;
    }

    void emit_csv(const StudyConfig &s, const CsvTable &t, bool monte_carlo)
    {
        std::ostringstream os;
        t.write(os, footer(s, monte_carlo));
        emit(s, os.str());
    }

    void emit_json(const StudyConfig &s, json body, bool monte_carlo)
    {
        body["provenance"] = footer(s, monte_carlo);
        emit(s, body.dump(2) + "\n");
    }

    std::vector<double> linspace(double a, double b, int n)
    {
        std::vector<double> v;
        for (int i = 0; i < n; ++i)
            v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
        return v;
    }

    std::vector<double> logspace(double a, double b, int n)
    {
        std::vector<double> v;
        for (int i = 0; i < n; ++i)
            v.push_back(a * std::pow(b / a, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1)));
        return v;
    }

    // Side lengths from the sweep block, or a default density grid.
    std::vector<double> d_grid(const StudyConfig &s)
    {
        if (!s.sweep_d.empty())
            return s.sweep_d;
        return lambda_grid_to_d(s.sweep_lambda.empty() ? logspace(1e-7, 1e-5, 21) : s.sweep_lambda);
    }

    void require_comp(const NetworkConfig &c, const char *what)
    {
        if (c.N != 2 && c.N != 3)
            throw ConfigError(std::string(what) + " requires N = 2 or 3");
    }

    // ---------- subcommands ----------

    int cmd_beta(const StudyConfig &s, bool alpha_given, bool n_given)
    {
        const std::vector<double> alphas = alpha_given ? std::vector<double>{s.network.alpha}
                                                       : std::vector<double>{3.0, 3.5, 4.0};
        const std::vector<int> orders = n_given ? std::vector<int>{s.network.N} : std::vector<int>{2, 3};
        CsvTable t({"alpha", "N", "tiers", "beta"});
        for (int N : orders)
        {
            if (N != 2 && N != 3)
                throw ConfigError("beta requires N = 2 or 3");
            for (double a : alphas)
                t.add_row({format_double(a), std::to_string(N), std::to_string(s.network.tiers),
                           format_double(beta_total(a, N, s.network.tiers).total)});
        }
        emit_csv(s, t, false);
        return exit_ok;
    }

    int cmd_icri(const StudyConfig &s)
    {
        require_comp(s.network, "icri");
        CsvTable t({"d_m", "lambda_per_m2", "icri_w", "icri_dbm", "mc_icri_w", "mc_icri_dbm", "mc_std_error_w"});
        const auto grid = s.sweep_d.empty() && s.sweep_lambda.empty() ? std::vector<double>{100, 200, 500, 1000, 2000, 3000}
                                                                      : d_grid(s);
        for (double d : grid)
        {
            NetworkConfig c = s.network;
            c.d = d;
            const auto an = icri_avg(c).total_avg;
            const auto mc = estimate_icri(c, s.mc);
            double mc_total = 0.0, var = 0.0;
            for (const auto &e : mc)
            {
                mc_total += e.mean;
                var += e.std_error * e.std_error;
            }
            t.add_row({format_double(d), format_double(density_from_side(d)), format_double(an.value()),
                       format_double(watts_to_dbm(an)), format_double(mc_total),
                       format_double(watts_to_dbm(PowerW(mc_total))), format_double(std::sqrt(var))});
        }
        emit_csv(s, t, true);
        return exit_ok;
    }

    int cmd_icri_tiers(StudyConfig s)
    {
        require_comp(s.network, "icri-tiers");
        s.network.tiers = 2;
        CsvTable t({"d_m", "lambda_per_m2", "tier1_dbm", "tier2_dbm", "gap_db"});
        const auto grid = s.sweep_d.empty() && s.sweep_lambda.empty() ? std::vector<double>{100, 200, 500, 1000, 2000, 3000}
                                                                      : d_grid(s);
        for (double d : grid)
        {
            NetworkConfig c = s.network;
            c.d = d;
            const auto r = icri_avg(c);
            const double t1 = watts_to_dbm(r.per_tier[0]), t2 = watts_to_dbm(r.per_tier[1]);
            t.add_row({format_double(d), format_double(density_from_side(d)), format_double(t1), format_double(t2),
                       format_double(t2 - t1)});
        }
        emit_csv(s, t, false);
        return exit_ok;
    }

    int cmd_ccp_map(const StudyConfig &s)
    {
        require_comp(s.network, "ccp-map");
        const auto rows = ccp_map(s.network, CoverageQuery{s.c0}, s.map_resolution);
        CsvTable t({"ix", "iy", "x_m", "y_m", "ccp", "ergodic"});
        for (const auto &r : rows)
            t.add_row({std::to_string(r.ix), std::to_string(r.iy), format_double(r.p.x), format_double(r.p.y),
                       format_double(r.ccp), format_double(r.ergodic)});
        emit_csv(s, t, false);
        return exit_ok;
    }

    int cmd_worst_case(const StudyConfig &s)
    {
        require_comp(s.network, "worst-case");
        const auto pts = worst_case_points(s.network);
        const auto r = worst_case_distances(s.network);
        const auto ln = fit(s.network, r);
        json points = json::array();
        for (const auto &p : pts)
            points.push_back({{"x_m", p.point.x}, {"y_m", p.point.y}, {"distances_m", p.distances}});
        emit_json(s,
                  json{{"points", points},
                       {"c0", s.c0},
                       {"ccp", worst_case_ccp(s.network, CoverageQuery{s.c0})},
                       {"ergodic", worst_case_ergodic(s.network)},
                       {"average_ccp", average_ccp(s.network, CoverageQuery{s.c0})},
                       {"interference_limited", interference_limited(s.network)},
                       {"fit", {{"mu", ln.mu}, {"sigma", ln.sigma}, {"gamma1", ln.gamma1}, {"gamma2", ln.gamma2}}}},
                  false);
        return exit_ok;
    }

    int cmd_solve(const StudyConfig &s, bool compare, double d_lo, double d_hi)
    {
        SolverOptions opt;
        opt.mc = s.mc;
        opt.d_lo = d_lo;
        opt.d_hi = d_hi;
        const CoverageQuery q{s.c0};
        if (compare)
        {
            if (s.metric != DesignMetric::ccp)
                throw ConfigError("--compare supports the ccp metric only");
            const auto rows = compare_orders(s.network, s.target, q, opt);
            json arr = json::array();
            bool all = true;
            for (const auto &r : rows)
            {
                json j = solution_to_json(r.solution);
                auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
                j["ratio_vs_reuse1"] = num(r.ratio_vs_reuse1);
                j["ratio_vs_reuse7"] = num(r.ratio_vs_reuse7);
                all = all && r.solution.status == DesignStatus::solved;
                arr.push_back(j);
            }
            emit_json(s, json{{"c0", s.c0}, {"schemes", arr}}, true);
            return all ? exit_ok : exit_infeasible;
        }
        const auto sol = solve_density(s.network, s.target, q, s.metric, opt);
        json j = solution_to_json(sol);
        j["c0"] = s.c0;
        emit_json(s, j, sol.trials.has_value());
        if (sol.status != DesignStatus::solved)
        {
            std::cerr << json{{"error", {{"kind", "infeasible"}, {"status", to_string(sol.status)}}}}.dump() << "\n";
            return exit_infeasible;
        }
        return exit_ok;
    }

    int cmd_sweep(const StudyConfig &s)
    {
        SolverOptions opt;
        opt.mc = s.mc;
        const auto rows = sweep_metric(s.network, d_grid(s), CoverageQuery{s.c0}, opt);
        CsvTable t({"lambda_per_m2", "d_m", "ccp", "ccp_std_error", "ergodic", "ergodic_std_error"});
        for (const auto &r : rows)
            t.add_row({format_double(r.lambda), format_double(r.d), format_double(r.ccp),
                       format_double(r.ccp_std_error), format_double(r.ergodic), format_double(r.ergodic_std_error)});
        emit_csv(s, t, s.network.N == 1);
        return exit_ok;
    }

    int cmd_validate(const StudyConfig &s)
    {
        require_comp(s.network, "validate");
        const auto grid = s.c0_grid.empty() ? linspace(0.1, 3.0, 30) : s.c0_grid;
        const auto mc = estimate_ccp_curve(s.network, std::nullopt, grid, s.mc);
        CsvTable t({"c0", "analytic_ccp", "mc_ccp", "mc_std_error", "lower_bound_ok"});
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double an = worst_case_ccp(s.network, CoverageQuery{grid[i]});
            t.add_row({format_double(grid[i]), format_double(an), format_double(mc[i].mean),
                       format_double(mc[i].std_error), an <= mc[i].mean + 3.0 * mc[i].std_error ? "1" : "0"});
        }
        emit_csv(s, t, true);
        return exit_ok;
    }

    int cmd_geometry_dump(const StudyConfig &s, int color)
    {
        require_comp(s.network, "geometry dump");
        NetworkConfig unit = s.network;
        const auto layout = interference_layout(s.network.N, color);
        const auto scene = cochannel_scene(unit, color);
        json anchors = json::array();
        for (const auto &a : scene.home.anchors)
            anchors.push_back({a.x, a.y});
        json hears = json::array();
        for (const auto &row : scene.hears)
        {
            json r = json::array();
            for (bool b : row)
                r.push_back(b ? 1 : 0);
            hears.push_back(r);
        }
        json interferers = json::array();
        for (std::size_t i = 0; i < scene.interferers.size(); ++i)
        {
            json per_bs = json::array();
            for (const auto &row : scene.tier)
                per_bs.push_back(row[i]);
            interferers.push_back({{"tier_per_bs", per_bs}, {"vertices_m", to_json(scene.interferers[i])}});
        }
        emit_json(s,
                  json{{"layout", layout_to_json(layout)},
                       {"scene",
                        {{"home_m", to_json(scene.home.polygon)},
                         {"anchors_m", anchors},
                         {"interferers", interferers},
                         {"hears", hears}}}},
                  false);
        return exit_ok;
    }

    void error_record(const char *kind, const std::string &msg)
    {
        std::cerr << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << "\n";
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"compcov: coverage and density design for cooperating base stations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);
    Overrides o;

    auto *beta = app.add_subcommand("beta", "geometry coefficient beta(alpha, N)");
    auto *icri = app.add_subcommand("icri", "average ICRI vs cell side, analytic and simulated");
    auto *tiers = app.add_subcommand("icri-tiers", "per-tier analytic ICRI vs cell side");
    auto *map = app.add_subcommand("ccp-map", "CCP and ergodic capacity over a grid in the CR");
    auto *worst = app.add_subcommand("worst-case", "worst-case point, CCP and ergodic capacity");
    auto *solve = app.add_subcommand("solve-density", "minimum BS density meeting a target");
    auto *sweep = app.add_subcommand("sweep", "worst-case CCP and ergodic capacity vs density");
    auto *val = app.add_subcommand("validate", "analytic vs Monte Carlo CCP over a c0 grid");
    auto *geom = app.add_subcommand("geometry", "tessellation utilities");
    auto *dump = geom->add_subcommand("dump", "interference layout and co-channel scene as JSON");
    geom->require_subcommand(1);

    bool compare = false;
    double d_lo = SolverOptions{}.d_lo, d_hi = SolverOptions{}.d_hi;
    int color = 1;
    solve->add_flag("--compare", compare, "solve every scheme (N=1 reuse-1/7, N=2, N=3) and report ratios");
    solve->add_option("--d-min", d_lo, "bracket lower bound, m");
    solve->add_option("--d-max", d_hi, "bracket upper bound, m");
    dump->add_option("--color", color, "reuse-6 colour of the home CR")->check(CLI::Range(1, 6));

    for (auto *sub : {beta, icri, tiers, map, worst, solve, sweep, val, dump})
        add_common(*sub, o);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        error_record("config", e.what());
        return exit_config;
    }

    try
    {
        const StudyConfig s = resolve(o);
        if (beta->parsed())
            return cmd_beta(s, o.alpha.has_value() || !o.config.empty(), o.n.has_value() || !o.config.empty());
        if (icri->parsed())
            return cmd_icri(s);
        if (tiers->parsed())
            return cmd_icri_tiers(s);
        if (map->parsed())
            return cmd_ccp_map(s);
        if (worst->parsed())
            return cmd_worst_case(s);
        if (solve->parsed())
            return cmd_solve(s, compare, d_lo, d_hi);
        if (sweep->parsed())
            return cmd_sweep(s);
        if (val->parsed())
            return cmd_validate(s);
        if (dump->parsed())
            return cmd_geometry_dump(s, color);
    }
    catch (const ConfigError &e)
    {
        error_record("config", e.what());
        return exit_config;
    }
    catch (const GeometryError &e)
    {
        error_record("config", e.what());
        return exit_config;
    }
    catch (const std::exception &e)
    {
        error_record("internal", e.what());
        return exit_internal;
    }
    return exit_internal;
}

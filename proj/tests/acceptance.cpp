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

// Acceptance checks. Usage: acceptance [criterion...]; no argument runs all.
// Prints one PASS/FAIL line per criterion and exits non-zero on any FAIL.

#include <compcov/compcov.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace compcov;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::ostringstream detail;

        void check(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                detail << " [miss: " << what << "]";
            }
        }
    };

    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

    NetworkConfig make(int N, int M, double alpha, double d, double sigma_L = 4.0)
    {
        NetworkConfig c;
        c.N = N;
        c.M = M;
        c.alpha = alpha;
        c.d = d;
        c.sigma_L = sigma_L;
        if (N == 1)
            c.reuse = 7;
        return c;
    }

    bool within(double x, double ref, double tol) { return std::abs(x - ref) <= tol; }
    bool rel_within(double x, double ref, double rel) { return std::abs(x / ref - 1.0) <= rel; }

    // 1: beta table regression
    void beta_table(Outcome &o)
    {
        struct Row
        {
            double alpha;
            int N;
            double ref;
        };
        const Row rows[] = {{3, 2, 0.57}, {3.5, 2, 0.435}, {4, 2, 0.341}, {3, 3, 0.257}, {3.5, 3, 0.175}, {4, 3, 0.122}};
        const auto t0 = Clock::now();
        for (const auto &r : rows)
        {
            const double b = beta_total(r.alpha, r.N).total;
            o.detail << " (" << r.alpha << "," << r.N << ")=" << b;
            std::ostringstream what;
            what << "beta(" << r.alpha << "," << r.N << ")=" << b << " vs " << r.ref << " +-0.005";
            o.check(within(b, r.ref, 0.005), what.str());
        }
        const double t = seconds_since(t0);
        o.detail << " time=" << t << "s";
        o.check(t < 10.0, "runtime < 10 s");
    }

    // 2: analytic vs simulated average ICRI
    void icri_oracle(Outcome &o)
    {
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (double d : {500.0, 1000.0, 2000.0})
            for (int N : {2, 3})
                for (double alpha : {3.0, 4.0})
                {
                    const auto c = make(N, 1, alpha, d);
                    const double an = icri_avg(c).total_avg.value();
                    const double mc = estimate_icri(c, {100000, 2026, 0})[0].mean;
                    const double gap = std::abs(10.0 * std::log10(mc / an));
                    worst = std::max(worst, gap);
                    std::ostringstream what;
                    what << "d=" << d << " N=" << N << " alpha=" << alpha << " gap=" << gap << " dB";
                    o.check(gap <= 0.2, what.str());
                }
        const double t = seconds_since(t0);
        o.detail << " max_gap=" << worst << "dB time=" << t << "s";
        o.check(t < 60.0, "runtime < 1 min");
    }

    // 3: tier-2 vs tier-1 ICRI
    void tier_ratio(Outcome &o)
    {
        for (double d : {500.0, 1000.0, 2000.0})
        {
            auto c = make(2, 1, 4.0, d);
            c.tiers = 2;
            const auto r = icri_avg(c);
            const double gap = 10.0 * std::log10(r.per_tier[0].value() / r.per_tier[1].value());
            o.detail << " d=" << d << ":" << gap << "dB";
            o.check(within(gap, 9.0, 1.0), "tier gap 9 +- 1 dB");
        }
    }

    // 4: analytic lower bound vs simulation
    void lower_bound(Outcome &o)
    {
        std::vector<double> grid;
        for (int i = 1; i <= 30; ++i)
            grid.push_back(0.1 * i);
        double max_excess = -1.0, max_gap = 0.0;
        for (int N : {2, 3})
            for (double alpha : {3.0, 4.0})
            {
                const auto c = make(N, 1, alpha, 500.0, 6.0);
                const auto mc = estimate_ccp_curve(c, std::nullopt, grid, {100000, 2026, 0});
                for (std::size_t i = 0; i < grid.size(); ++i)
                {
                    const double an = worst_case_ccp(c, CoverageQuery{grid[i]});
                    const double excess = an - (mc[i].mean + 3.0 * mc[i].std_error);
                    max_excess = std::max(max_excess, excess);
                    std::ostringstream what;
                    what << "N=" << N << " alpha=" << alpha << " c0=" << grid[i] << " analytic=" << an
                         << " mc=" << mc[i].mean;
                    if (excess > 0.0)
                        o.check(false, "lower bound " + what.str());
                    if (grid[i] >= 1.0 - 1e-12)
                    {
                        const double gap = std::abs(an - mc[i].mean);
                        if (gap > max_gap)
                            max_gap = gap;
                        if (gap > 0.05)
                            o.check(false, "|gap|<=0.05 " + what.str());
                    }
                }
            }
        o.detail << " max(analytic-mc-3se)=" << max_excess << " max|gap|(c0>=1)=" << max_gap;
    }

    // 5: CCP-driven density endpoints for N = 3
    void ccp_density(Outcome &o)
    {
        const CoverageQuery q{0.5};
        const auto s1 = solve_density(make(3, 1, 4.0, 500.0), 0.5, q);
        const auto s2 = solve_density(make(3, 2, 4.0, 500.0), 0.5, q);
        o.detail << " M=1: lambda=" << s1.lambda << " d=" << s1.d << " M=2: lambda=" << s2.lambda << " d=" << s2.d;
        o.check(s1.status == DesignStatus::solved && s2.status == DesignStatus::solved, "solved");
        o.check(s1.lambda >= 3.6e-7 && s1.lambda <= 4.0e-7, "M=1 lambda in [3.6, 4.0]e-7");
        o.check(rel_within(s1.d, 1006.0, 0.03), "M=1 d = 1006 +- 3%");
        o.check(rel_within(s2.lambda, 2.3e-7, 0.10), "M=2 lambda = 2.3e-7 +- 10%");
    }

    // 6: CCP map over the triangular CR
    void ccp_map_check(Outcome &o)
    {
        const auto c = make(3, 1, 4.0, 1006.0);
        const auto rows = ccp_map(c, CoverageQuery{0.5}, 50);
        std::size_t arg = 0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].ccp < rows[arg].ccp)
                arg = i;
        const Point2D centroid = home_region(c).polygon.centroid();
        const double cell = std::sqrt(3.0) * c.d / 50.0;
        const double off = norm(rows[arg].p - centroid);
        o.detail << " cells=" << rows.size() << " min=" << rows[arg].ccp << " at (" << rows[arg].p.x << ","
                 << rows[arg].p.y << ") centroid_offset=" << off << "m";
        o.check(within(rows[arg].ccp, 0.55, 0.02), "minimum 0.55 +- 0.02");
        o.check(off <= cell, "minimum at the centroid cell");
        o.check(rows[arg].ccp >= 0.5, "no value below 0.5");
    }

    // 7: ergodic-driven density endpoint for N = 2
    void ergodic_density(Outcome &o)
    {
        const auto c = make(2, 1, 4.0, 500.0);
        const auto s = solve_density(c, 0.5, CoverageQuery{0.5}, DesignMetric::ergodic);
        auto at = c;
        at.d = 1034.0;
        const double erg = worst_case_ergodic(at);
        o.detail << " lambda=" << s.lambda << " d=" << s.d << " ergodic(d=1034)=" << erg;
        o.check(s.status == DesignStatus::solved, "solved");
        o.check(rel_within(s.lambda, 3.6e-7, 0.10), "lambda = 3.6e-7 +- 10%");
        o.check(rel_within(s.d, 1034.0, 0.03), "d = 1034 +- 3%");
        o.check(within(erg, 0.514, 0.01), "ergodic at d=1034 = 0.514 +- 0.01");
    }

    // 8: density ratios against the no-cooperation baselines
    void scheme_ratios(Outcome &o)
    {
        SolverOptions opt;
        opt.mc = {200000, 2026, 0};
        const auto rows = compare_orders(make(2, 1, 4.0, 500.0), 0.5, CoverageQuery{0.5}, opt);
        for (const auto &r : rows)
            o.detail << " " << r.scheme << ":lambda=" << r.solution.lambda;
        const double n2r1 = rows[2].ratio_vs_reuse1, n3r1 = rows[3].ratio_vs_reuse1;
        const double n2r7 = rows[2].ratio_vs_reuse7, n3r7 = rows[3].ratio_vs_reuse7;
        o.detail << " N2/r1=" << n2r1 << " N3/r1=" << n3r1 << " N2/r7=" << n2r7 << " N3/r7=" << n3r7;
        o.check(within(n2r1, 0.69, 0.05), "N=2/reuse-1 = 0.69 +- 0.05");
        o.check(within(n3r1, 0.55, 0.05), "N=3/reuse-1 = 0.55 +- 0.05");
        o.check(within(n2r7, 0.26, 0.05), "N=2/reuse-7 = 0.26 +- 0.05");
        o.check(within(n3r7, 0.20, 0.05), "N=3/reuse-7 = 0.20 +- 0.05");
    }

    // 9: property suites
    void properties(Outcome &o)
    {
        int checks = 0;
        auto tally = [&](bool ok, const std::string &what) {
            ++checks;
            o.check(ok, what);
        };

        // moment-match exactness
        {
            const auto c = make(3, 2, 3.5, 800.0);
            const std::vector<double> r{500.0, 800.0, 1100.0};
            const auto dec = decompose(c, r);
            const auto ln = moment_match(dec);
            const double m1 = std::exp(ln.mu + ln.sigma * ln.sigma / 2.0);
            const double m2 = std::exp(2.0 * ln.mu + 2.0 * ln.sigma * ln.sigma);
            tally(std::abs(m1 / ln.gamma1 - 1.0) <= 1e-12 && std::abs(m2 / ln.gamma2 - 1.0) <= 1e-12,
                  "moment-match exactness");
        }

        // d-invariance without noise
        for (int N : {2, 3})
        {
            auto c = make(N, 1, 4.0, 100.0);
            c.noise_power = PowerW(0.0);
            const double a = worst_case_ccp(c, CoverageQuery{0.5});
            c.d = 5000.0;
            const double b = worst_case_ccp(c, CoverageQuery{0.5});
            tally(std::abs(a - b) <= 1e-12, "noise-free d-invariance");
        }

        // ergodic closed form vs quadrature of the lognormal fit
        for (const auto &c : {make(2, 1, 4.0, 500.0), make(3, 2, 3.0, 1200.0), make(2, 1, 4.0, 3000.0)})
        {
            const auto ln = fit(c, worst_case_distances(c));
            const double k = c.N * std::numbers::ln2;
            auto f = [&](double x) { return x > 0.0 ? x / k * normal_pdf((x - ln.mu) / ln.sigma) / ln.sigma : 0.0; };
            const double lo = std::max(0.0, ln.mu - 40.0 * ln.sigma), hi = std::max(1.0, ln.mu + 40.0 * ln.sigma);
            const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-14);
            tally(std::abs(quad - ergodic_from_fit(ln, c.N)) <= 1e-10, "ergodic identity vs quadrature");
        }

        // no-interference exponential CCP
        {
            const auto c = make(1, 1, 4.0, 1000.0, 0.0);
            const Point2D user{600.0, 300.0};
            const std::vector<double> grid{0.05, 0.1, 0.2, 0.3};
            const auto est = estimate_ccp_curve(c, user, grid, {200000, 3, 0});
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                const double T = std::exp2(7.0 * grid[i]) - 1.0;
                const double exact = std::exp(-T * 1e-13 * std::pow(norm(user), 4.0) / 0.1);
                tally(std::abs(est[i].mean - exact) <= 3.0 * std::max(est[i].std_error, 1e-6),
                      "exponential CCP oracle");
            }
        }

        // worst-case points minimise sum_k r_k^(-2 alpha) on a 200 x 200 grid
        for (int N : {2, 3})
            for (double alpha : {3.0, 3.5, 4.0})
            {
                const auto c = make(N, 1, alpha, 1.0);
                const auto cr = home_region(c);
                double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
                for (const auto &v : cr.polygon.vertices())
                {
                    x0 = std::min(x0, v.x);
                    x1 = std::max(x1, v.x);
                    y0 = std::min(y0, v.y);
                    y1 = std::max(y1, v.y);
                }
                const int n = 200;
                const double hx = (x1 - x0) / n, hy = (y1 - y0) / n;
                double best = 1e300;
                Point2D arg{};
                for (int i = 0; i <= n; ++i)
                    for (int j = 0; j <= n; ++j)
                    {
                        const Point2D p{x0 + i * hx, y0 + j * hy};
                        if (!cr.polygon.contains(p))
                            continue;
                        double f = 0.0;
                        for (const auto &a : cr.anchors)
                        {
                            const double r = norm(p - a);
                            f += r > 0.0 ? std::pow(r, -2.0 * alpha) : 1e300;
                        }
                        if (f < best)
                        {
                            best = f;
                            arg = p;
                        }
                    }
                double nearest = 1e300;
                for (const auto &w : worst_case_points(c))
                    nearest = std::min(nearest, norm(arg - w.point));
                tally(nearest <= std::hypot(hx, hy), "grid argmin of sum r^-2alpha at a worst-case point");
            }

        // co-channel CRs share no anchor BS
        for (int N : {2, 3})
        {
            const auto regions = color_reuse6(build_tessellation(N, 1.0, 6));
            bool ok = true;
            for (std::size_t i = 0; i < regions.size() && ok; ++i)
                for (std::size_t j = i + 1; j < regions.size(); ++j)
                    if (regions[i].color == regions[j].color && regions[i].shares_anchor(regions[j]))
                    {
                        ok = false;
                        break;
                    }
            tally(ok, "reuse-6 colouring shares no anchor");
        }

        // byte-identical estimates for 1, 4 and 16 workers
        {
            const auto c = make(3, 2, 4.0, 900.0);
            const std::vector<double> grid{0.25, 0.5, 1.0};
            const auto ref = estimate_ccp_curve(c, std::nullopt, grid, {30000, 99, 1});
            bool ok = true;
            for (unsigned w : {4u, 16u})
            {
                const auto e = estimate_ccp_curve(c, std::nullopt, grid, {30000, 99, w});
                for (std::size_t i = 0; i < grid.size(); ++i)
                    ok = ok && std::memcmp(&e[i].mean, &ref[i].mean, sizeof(double)) == 0 &&
                         std::memcmp(&e[i].std_error, &ref[i].std_error, sizeof(double)) == 0;
            }
            tally(ok, "seed determinism across worker counts");
        }
        o.detail << " checks=" << checks;
    }

    struct Criterion
    {
        const char *name;
        std::function<void(Outcome &)> run;
    };
} // namespace

int main(int argc, char **argv)
{
    const std::vector<Criterion> all = {
        {"beta table", beta_table},
        {"ICRI analytic vs simulation", icri_oracle},
        {"tier-2 ICRI gap", tier_ratio},
        {"analytic CCP lower bound", lower_bound},
        {"CCP density endpoint (N=3)", ccp_density},
        {"CCP map over the CR", ccp_map_check},
        {"ergodic density endpoint (N=2)", ergodic_density},
        {"density ratios vs baselines", scheme_ratios},
        {"property suites", properties},
    };
    std::vector<int> which;
    for (int i = 1; i < argc; ++i)
        which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= static_cast<int>(all.size()); ++i)
            which.push_back(i);

    bool all_pass = true;
    for (int k : which)
    {
        if (k < 1 || k > static_cast<int>(all.size()))
        {
            std::cerr << "unknown criterion " << k << "\n";
            return 2;
        }
        Outcome o;
        try
        {
            all[k - 1].run(o);
        }
        catch (const std::exception &e)
        {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << " (" << all[k - 1].name << "):"
                  << o.detail.str() << std::endl;
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}

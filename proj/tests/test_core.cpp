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

#include <compcov/core.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace compcov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("dBm conversions", "[core]")
{
    CHECK(dbm_to_watts(20.0).value() == Catch::Approx(0.1).epsilon(1e-15));
    CHECK(dbm_to_watts(-100.0).value() == Catch::Approx(1e-13).epsilon(1e-15));
    CHECK(dbm_to_watts(30.0).value() == 1.0);
    CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::infinity()), ConfigError);
    CHECK_THROWS_AS(dbm_to_watts(std::nan("")), ConfigError);
}

TEST_CASE("dBm round trip over [-150, 50] dBm", "[core][property]")
{
    for (double p = -150.0; p <= 50.0; p += 0.37)
    {
        const double back = watts_to_dbm(dbm_to_watts(p));
        CHECK_THAT(back, WithinAbs(p, 1e-12 * std::max(1.0, std::abs(p))));
        const double w = dbm_to_watts(p).value();
        CHECK_THAT(dbm_to_watts(watts_to_dbm(PowerW(w))).value(), WithinRel(w, 1e-12));
    }
}

TEST_CASE("PowerW rejects negative and non-finite values", "[core]")
{
    CHECK_THROWS_AS(PowerW(-1e-20), ConfigError);
    CHECK_THROWS_AS(PowerW(std::numeric_limits<double>::infinity()), ConfigError);
    CHECK_THROWS_AS(PowerW(std::nan("")), ConfigError);
    CHECK(PowerW(0.0).value() == 0.0);
    CHECK(watts_to_dbm(PowerW(0.0)) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("shadow scale", "[core]")
{
    const auto s0 = shadow_scale(0.0);
    CHECK(s0.sigma_z == 0.0);
    CHECK(s0.mean_factor == 1.0);

    // mpmath, 30 digits
    const auto s4 = shadow_scale(4.0);
    CHECK_THAT(s4.sigma_z, WithinRel(0.921034037197618273, 1e-14));
    CHECK_THAT(s4.mean_factor, WithinRel(1.528293645779848153, 1e-14));
    const auto s6 = shadow_scale(6.0);
    CHECK_THAT(s6.sigma_z, WithinRel(1.381551055796427410, 1e-14));
    CHECK_THAT(s6.mean_factor, WithinRel(2.596960336855568446, 1e-14));

    CHECK_THROWS_AS(shadow_scale(-0.1), ConfigError);
}

TEST_CASE("Q function", "[core]")
{
    CHECK(q_function(0.0) == 0.5);
    CHECK(q_function(std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(q_function(-std::numeric_limits<double>::infinity()) == 1.0);
    // mpmath, 30 digits
    CHECK_THAT(q_function(1.0), WithinAbs(0.158655253931457051, 1e-12));
    CHECK_THAT(q_function(-1.5), WithinAbs(0.933192798731141934, 1e-12));
    CHECK_THAT(q_function(3.0), WithinAbs(0.00134989803163009453, 1e-12));
}

TEST_CASE("Q function symmetry and monotonicity", "[core][property]")
{
    double prev = 1.0;
    for (double x = -8.0; x <= 8.0; x += 0.01)
    {
        const double q = q_function(x);
        CHECK(q <= prev);
        prev = q;
        CHECK_THAT(q + q_function(-x), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("closed-form integral of Q", "[core]")
{
    CHECK(q_integral(0.0) == 0.0);
    CHECK_THAT(q_integral(1.0), WithinAbs(0.315626809813746380, 1e-12));
    CHECK_THAT(q_integral(std::numeric_limits<double>::infinity()), WithinAbs(0.398942280401432678, 1e-15));
    CHECK_THAT(q_integral(40.0), WithinAbs(0.398942280401432678, 1e-15));
    CHECK_THROWS_AS(q_integral(-1e-9), std::domain_error);
    CHECK_THROWS_AS(q_integral(std::nan("")), std::domain_error);
}

TEST_CASE("closed-form integral of Q matches adaptive quadrature", "[core][property]")
{
    // mpmath quadrature values for the same x grid
    const double frozen[] = {0.0480069491967180168, 0.201145723000126648, 0.315626809813746380,
                             0.390451577784603040, 0.398942226939777340};
    const double xs[] = {0.1, 0.5, 1.0, 2.0, 5.0};
    for (int i = 0; i < 5; ++i)
    {
        const double x = xs[i];
        const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [](double t) { return q_function(t); }, 0.0, x, 15, 1e-14);
        CHECK_THAT(q_integral(x), WithinAbs(quad, 1e-10));
        CHECK_THAT(q_integral(x), WithinAbs(frozen[i], 1e-12));
    }
}

TEST_CASE("probability clamping is counted", "[core]")
{
    reset_clamp_events();
    CHECK(clamp_probability(0.25) == 0.25);
    CHECK(clamp_event_count() == 0);
    CHECK(clamp_probability(1.0 + 1e-15) == 1.0);
    CHECK(clamp_probability(-1e-17) == 0.0);
    CHECK(clamp_event_count() == 2);
    reset_clamp_events();
}

TEST_CASE("compensated sum is order stable", "[core]")
{
    CompensatedSum a, b;
    const double v[] = {1e16, 1.0, -1e16, 3.0, 1e-3};
    for (double x : v)
        a += x;
    for (int i = 4; i >= 0; --i)
        b += v[i];
    CHECK_THAT(a.value(), Catch::Matchers::WithinAbs(4.001, 1e-15));
    CHECK_THAT(b.value(), Catch::Matchers::WithinAbs(4.001, 1e-15));
}

TEST_CASE("network config validation", "[core]")
{
    NetworkConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK_THAT(c.sigma_z(), WithinRel(0.921034037197618273, 1e-14));

    auto bad = [&](auto mutate) {
        NetworkConfig x;
        mutate(x);
        CHECK_THROWS_AS(x.validate(), ConfigError);
    };
    bad([](NetworkConfig &x) { x.d = 0.0; });
    bad([](NetworkConfig &x) { x.d = -5.0; });
    bad([](NetworkConfig &x) { x.alpha = 2.0; });
    bad([](NetworkConfig &x) { x.M = 0; });
    bad([](NetworkConfig &x) { x.sigma_L = -1.0; });
    bad([](NetworkConfig &x) { x.N = 4; });
    bad([](NetworkConfig &x) { x.reuse = 3; });
    bad([](NetworkConfig &x) { x.tiers = 3; });
    bad([](NetworkConfig &x) {
        x.N = 1;
        x.reuse = 6;
    });

    NetworkConfig base;
    base.N = 1;
    base.reuse = 7;
    CHECK_NOTHROW(base.validate());
}

TEST_CASE("density and side length are inverse", "[core]")
{
    for (double d : {1.0, 500.0, 1006.0, 1e5})
    {
        const double l = density_from_side(d);
        CHECK_THAT(l * 1.5 * std::sqrt(3.0) * d * d, WithinRel(1.0, 1e-12));
        CHECK_THAT(side_from_density(l), WithinRel(d, 1e-12));
    }
}

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

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

namespace compcov
{
    struct QuadratureResult
    {
        double value = 0.0;
        double error_estimate = 0.0;
        std::size_t evaluations = 0;
    };

    namespace detail
    {
        struct Triangle
        {
            Point2D a, b, c;
            double area() const { return 0.5 * std::abs(cross(b - a, c - a)); }
        };

        // Radon's 7-point rule, exact for polynomials of degree 5.
        template <class F>
        double radon7(const Triangle &t, F &f, std::size_t &evals)
        {
            static const double s15 = std::sqrt(15.0);
            static const double a1 = (6.0 - s15) / 21.0, b1 = 1.0 - 2.0 * a1;
            static const double a2 = (6.0 + s15) / 21.0, b2 = 1.0 - 2.0 * a2;
            static const double w0 = 9.0 / 40.0;
            static const double w1 = (155.0 - s15) / 1200.0;
            static const double w2 = (155.0 + s15) / 1200.0;

            auto at = [&](double l0, double l1, double l2) {
                return f(Point2D{l0 * t.a.x + l1 * t.b.x + l2 * t.c.x, l0 * t.a.y + l1 * t.b.y + l2 * t.c.y});
            };
            double s = w0 * at(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
            s += w1 * (at(a1, a1, b1) + at(a1, b1, a1) + at(b1, a1, a1));
            s += w2 * (at(a2, a2, b2) + at(a2, b2, a2) + at(b2, a2, a2));
            evals += 7;
            return s * t.area();
        }

        template <class F>
        double adapt(const Triangle &t, F &f, double coarse, double tol, int depth, int max_depth,
                     QuadratureResult &res)
        {
            const Point2D ab = 0.5 * (t.a + t.b), bc = 0.5 * (t.b + t.c), ca = 0.5 * (t.c + t.a);
            const std::array<Triangle, 4> kids{Triangle{t.a, ab, ca}, Triangle{ab, t.b, bc}, Triangle{ca, bc, t.c},
                                               Triangle{ab, bc, ca}};
            std::array<double, 4> v{};
            double fine = 0.0;
            for (std::size_t k = 0; k < 4; ++k)
            {
                v[k] = radon7(kids[k], f, res.evaluations);
                fine += v[k];
            }
            const double err = std::abs(fine - coarse);
            if (err <= tol)
            {
                res.error_estimate += err;
                return fine;
            }
            if (depth >= max_depth)
                throw NumericalError("polygon quadrature did not converge (error " + std::to_string(err) +
                                     " > tolerance " + std::to_string(tol) + ")");
            double s = 0.0;
            for (std::size_t k = 0; k < 4; ++k)
                s += adapt(kids[k], f, v[k], 0.25 * tol, depth + 1, max_depth, res);
            return s;
        }
    } // namespace detail

    // Adaptive integral of f over a convex polygon. The polygon is fanned from
    // its centroid; each triangle is refined until the 7-point rule and its
    // 4-way split agree within the triangle's share of abs_tol.
    template <class F>
    QuadratureResult integrate_polygon(const ConvexPolygon &poly, F f, double abs_tol = 1e-10, int max_depth = 14)
    {
        if (!(abs_tol > 0.0))
            throw std::invalid_argument("quadrature tolerance must be > 0");
        QuadratureResult res;
        const Point2D c = poly.centroid();
        const double total_area = poly.area();
        CompensatedSum sum;
        for (std::size_t k = 0; k < poly.size(); ++k)
        {
            const detail::Triangle t{c, poly[k], poly[(k + 1) % poly.size()]};
            const double share = abs_tol * t.area() / total_area;
            const double coarse = detail::radon7(t, f, res.evaluations);
            sum += detail::adapt(t, f, coarse, share, 0, max_depth, res);
        }
        res.value = sum.value();
        return res;
    }

} // namespace compcov

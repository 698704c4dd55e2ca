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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Hexagonal BS lattice and cooperation-region tessellation.
//
// Frame convention: the home BS sits at the origin and one of its neighbours
// at (sqrt(3) d, 0). Lattice index (i, j) maps to i * a1 + j * a2 with
// a1 = (sqrt(3), 0) d and a2 = (sqrt(3)/2, 3/2) d. Hexagon corners therefore
// sit at angles 30 + 60k degrees, distance d from their BS.

namespace compcov
{
    struct GeometryError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Point passed to a distance query lies outside the cooperation region.
    struct OutsideRegionError : GeometryError
    {
        using GeometryError::GeometryError;
    };

    // Point coincides with a cooperating BS; the path loss is singular there.
    struct AnchorCoincidenceError : GeometryError
    {
        using GeometryError::GeometryError;
    };

    // ---------- points ----------

    struct Point2D
    {
        double x = 0.0;
        double y = 0.0;

        friend constexpr Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
        friend constexpr Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
        friend constexpr Point2D operator*(double s, Point2D a) { return {s * a.x, s * a.y}; }
        friend constexpr bool operator==(Point2D, Point2D) = default;
    };

    constexpr double dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }
    constexpr double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }
    inline double norm(Point2D a) { return std::hypot(a.x, a.y); }

    inline double segment_distance(Point2D p, Point2D a, Point2D b)
    {
        const Point2D ab = b - a;
        const double len2 = dot(ab, ab);
        double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        return norm(a + t * ab - p);
    }

    // ---------- convex polygons ----------

    class ConvexPolygon
    {
    public:
        ConvexPolygon() = default;

        // Accepts either orientation and stores the vertices counter-clockwise.
        explicit ConvexPolygon(std::vector<Point2D> vertices) : v_(std::move(vertices))
        {
            if (v_.size() < 3)
                throw GeometryError("polygon needs at least 3 vertices");
            for (const auto &p : v_)
                if (!std::isfinite(p.x) || !std::isfinite(p.y))
                    throw GeometryError("polygon vertex is not finite");
            if (signed_area() < 0.0)
                std::reverse(v_.begin(), v_.end());
            const double a = signed_area();
            if (!(a > 0.0))
                throw GeometryError("polygon has zero area");
            const double scale = std::sqrt(a);
            for (std::size_t k = 0; k < v_.size(); ++k)
            {
                const Point2D e0 = v_[(k + 1) % v_.size()] - v_[k];
                const Point2D e1 = v_[(k + 2) % v_.size()] - v_[(k + 1) % v_.size()];
                if (!(cross(e0, e1) > 1e-12 * scale * scale))
                    throw GeometryError("polygon is not strictly convex");
            }
        }

        std::span<const Point2D> vertices() const { return v_; }
        std::size_t size() const { return v_.size(); }
        const Point2D &operator[](std::size_t k) const { return v_[k]; }

        double area() const { return signed_area(); }

        Point2D centroid() const
        {
            double cx = 0.0, cy = 0.0, a2 = 0.0;
            for (std::size_t k = 0; k < v_.size(); ++k)
            {
                const Point2D p = v_[k], q = v_[(k + 1) % v_.size()];
                const double c = cross(p, q);
                a2 += c;
                cx += (p.x + q.x) * c;
                cy += (p.y + q.y) * c;
            }
            return {cx / (3.0 * a2), cy / (3.0 * a2)};
        }

        // Boundary points count as inside; tol is absolute.
        bool contains(Point2D p, double tol = 1e-9) const
        {
            for (std::size_t k = 0; k < v_.size(); ++k)
            {
                const Point2D a = v_[k], b = v_[(k + 1) % v_.size()];
                const Point2D e = b - a;
                if (cross(e, p - a) < -tol * norm(e))
                    return false;
            }
            return true;
        }

        // Euclidean distance from p to the closed polygon (0 if inside).
        double distance_to(Point2D p) const
        {
            if (contains(p, 0.0))
                return 0.0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < v_.size(); ++k)
                best = std::min(best, segment_distance(p, v_[k], v_[(k + 1) % v_.size()]));
            return best;
        }

        ConvexPolygon translated(Point2D t) const
        {
            auto w = v_;
            for (auto &p : w)
                p = p + t;
            return ConvexPolygon(std::move(w));
        }

        ConvexPolygon scaled(double s) const
        {
            auto w = v_;
            for (auto &p : w)
                p = s * p;
            return ConvexPolygon(std::move(w));
        }

    private:
        double signed_area() const
        {
            double a = 0.0;
            for (std::size_t k = 0; k < v_.size(); ++k)
                a += cross(v_[k], v_[(k + 1) % v_.size()]);
            return 0.5 * a;
        }

        std::vector<Point2D> v_;
    };

    // Area of the intersection of two convex polygons (Sutherland-Hodgman clip).
    inline double intersection_area(const ConvexPolygon &subject, const ConvexPolygon &clip)
    {
        std::vector<Point2D> out(subject.vertices().begin(), subject.vertices().end());
        const auto cv = clip.vertices();
        for (std::size_t k = 0; k < cv.size() && !out.empty(); ++k)
        {
            const Point2D a = cv[k], b = cv[(k + 1) % cv.size()];
            const Point2D e = b - a;
            auto side = [&](Point2D p) { return cross(e, p - a); };
            std::vector<Point2D> in;
            in.swap(out);
            for (std::size_t m = 0; m < in.size(); ++m)
            {
                const Point2D p = in[m], q = in[(m + 1) % in.size()];
                const double sp = side(p), sq = side(q);
                if (sp >= 0.0)
                    out.push_back(p);
                if ((sp >= 0.0) != (sq >= 0.0))
                    out.push_back(p + (sp / (sp - sq)) * (q - p));
            }
        }
        if (out.size() < 3)
            return 0.0;
        double a = 0.0;
        for (std::size_t k = 0; k < out.size(); ++k)
            a += cross(out[k], out[(k + 1) % out.size()]);
        return std::max(0.0, 0.5 * a);
    }

    // ---------- lattice ----------

    struct LatticeIndex
    {
        int i = 0;
        int j = 0;
        friend constexpr bool operator==(LatticeIndex, LatticeIndex) = default;
        friend constexpr LatticeIndex operator+(LatticeIndex a, LatticeIndex b) { return {a.i + b.i, a.j + b.j}; }
        friend constexpr LatticeIndex operator-(LatticeIndex a, LatticeIndex b) { return {a.i - b.i, a.j - b.j}; }
    };

    inline Point2D bs_position(LatticeIndex b, double d)
    {
        const double s3 = std::sqrt(3.0);
        return {d * (s3 * b.i + 0.5 * s3 * b.j), d * 1.5 * b.j};
    }

    // Hex-ring distance between lattice sites.
    inline int ring_distance(LatticeIndex a, LatticeIndex b)
    {
        const int di = a.i - b.i, dj = a.j - b.j;
        return (std::abs(di) + std::abs(dj) + std::abs(di + dj)) / 2;
    }

    inline std::vector<LatticeIndex> lattice_ring(int r, LatticeIndex center = {})
    {
        std::vector<LatticeIndex> out;
        for (int i = -r; i <= r; ++i)
            for (int j = -r; j <= r; ++j)
                if (ring_distance({i, j}, {}) == r)
                    out.push_back(center + LatticeIndex{i, j});
        return out;
    }

    // Hexagonal cell of the BS at `center`, side d.
    inline ConvexPolygon hexagon(Point2D center, double d)
    {
        std::vector<Point2D> v;
        for (int k = 0; k < 6; ++k)
        {
            const double a = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
            v.push_back(center + Point2D{d * std::cos(a), d * std::sin(a)});
        }
        return ConvexPolygon(std::move(v));
    }

    // Canonical CR areas in units of d^2.
    inline double cr_area_normalized(int N)
    {
        if (N == 2)
            return std::sqrt(3.0) / 2.0;
        if (N == 3)
            return 3.0 * std::sqrt(3.0) / 4.0;
        if (N == 1)
            return 3.0 * std::sqrt(3.0) / 2.0;
        throw ConfigError("no cooperation region defined for N = " + std::to_string(N));
    }

    // ---------- cooperation regions ----------

    struct CoopRegion
    {
        ConvexPolygon polygon;
        std::vector<LatticeIndex> anchor_ids;
        std::vector<Point2D> anchors;
        int color = 0; // 1..6 once colored, 0 = unassigned

        bool has_anchor(LatticeIndex b) const
        {
            return std::find(anchor_ids.begin(), anchor_ids.end(), b) != anchor_ids.end();
        }
        bool shares_anchor(const CoopRegion &o) const
        {
            for (const auto &a : anchor_ids)
                if (o.has_anchor(a))
                    return true;
            return false;
        }
    };

    namespace detail
    {
        inline int floor_mod(int a, int m) { return ((a % m) + m) % m; }

        inline CoopRegion make_diamond(LatticeIndex a, LatticeIndex b, double d)
        {
            const Point2D pa = bs_position(a, d), pb = bs_position(b, d);
            const Point2D mid = 0.5 * (pa + pb);
            const Point2D dir = (1.0 / norm(pb - pa)) * (pb - pa);
            const Point2D nrm{-dir.y, dir.x};
            CoopRegion cr{ConvexPolygon({pa, mid - (0.5 * d) * nrm, pb, mid + (0.5 * d) * nrm}), {a, b}, {pa, pb}, 0};
            return cr;
        }

        inline CoopRegion make_triangle(std::array<LatticeIndex, 3> ids, double d)
        {
            std::vector<Point2D> p;
            for (auto id : ids)
                p.push_back(bs_position(id, d));
            return CoopRegion{ConvexPolygon(p), {ids.begin(), ids.end()}, p, 0};
        }

        // Reuse-6 colour from the periodic motif. N = 2: two colours per edge
        // orientation, alternating along each lattice line. N = 3: up triangles
        // take 1..3 and down triangles 4..6 via (i + 2j) mod 3.
        inline int motif_color(int N, const std::vector<LatticeIndex> &ids)
        {
            if (N == 2)
            {
                const LatticeIndex a = ids[0];
                const LatticeIndex diff = ids[1] - ids[0];
                if (diff == LatticeIndex{1, 0})
                    return 1 + floor_mod(a.i, 2);
                if (diff == LatticeIndex{0, 1})
                    return 3 + floor_mod(a.j, 2);
                if (diff == LatticeIndex{-1, 1})
                    return 5 + floor_mod(a.j, 2);
                throw GeometryError("diamond anchors are not lattice neighbours in canonical order");
            }
            if (N == 3)
            {
                const LatticeIndex a = ids[0];
                const bool up = ids[1] - a == LatticeIndex{1, 0} && ids[2] - a == LatticeIndex{0, 1};
                const bool down = ids[1] - a == LatticeIndex{0, 1} && ids[2] - a == LatticeIndex{-1, 1};
                if (up)
                    return 1 + floor_mod(a.i + 2 * a.j, 3);
                if (down)
                    return 4 + floor_mod(a.i - 1 + 2 * a.j, 3);
                throw GeometryError("triangle anchors are not in canonical order");
            }
            throw ConfigError("reuse-6 colouring is defined for N = 2 or 3");
        }
    } // namespace detail

    // All CRs whose anchor BSs lie within `extent` hex rings of `center`.
    // Colors are left unassigned.
    inline std::vector<CoopRegion> build_tessellation(int N, double d, int extent, LatticeIndex center = {})
    {
        if (N != 2 && N != 3)
            throw ConfigError("tessellation is defined for N = 2 or 3");
        if (extent < 1)
            throw ConfigError("tessellation extent must be >= 1");
        if (!(d > 0.0))
            throw ConfigError("d must be > 0");
        std::vector<CoopRegion> out;
        auto inside = [&](LatticeIndex b) { return ring_distance(b, center) <= extent; };
        for (int i = center.i - extent; i <= center.i + extent; ++i)
            for (int j = center.j - extent; j <= center.j + extent; ++j)
            {
                const LatticeIndex a{i, j};
                if (!inside(a))
                    continue;
                if (N == 2)
                {
                    for (LatticeIndex step : {LatticeIndex{1, 0}, LatticeIndex{0, 1}, LatticeIndex{-1, 1}})
                        if (inside(a + step))
                            out.push_back(detail::make_diamond(a, a + step, d));
                }
                else
                {
                    const LatticeIndex b = a + LatticeIndex{1, 0}, c = a + LatticeIndex{0, 1};
                    if (inside(b) && inside(c))
                        out.push_back(detail::make_triangle({a, b, c}, d));
                    // down triangle sharing edge b-c: (b, b + (0,1), c)
                    const LatticeIndex e = a + LatticeIndex{1, 1};
                    if (inside(b) && inside(c) && inside(e))
                        out.push_back(detail::make_triangle({b, e, c}, d));
                }
            }
        return out;
    }

    inline std::vector<CoopRegion> build_tessellation(const NetworkConfig &cfg, int extent)
    {
        return build_tessellation(cfg.N, cfg.d, extent);
    }

    inline std::vector<CoopRegion> color_reuse6(std::vector<CoopRegion> regions)
    {
        if (regions.empty())
            throw GeometryError("cannot colour an empty tessellation");
        const int N = static_cast<int>(regions.front().anchor_ids.size());
        // Periodicity can only be checked if some BS has its full fan of 6 CRs.
        bool full_fan = false;
        for (const auto &r : regions)
        {
            for (const auto &a : r.anchor_ids)
            {
                int incident = 0;
                for (const auto &o : regions)
                    incident += o.has_anchor(a) ? 1 : 0;
                if (incident == 6)
                {
                    full_fan = true;
                    break;
                }
            }
            if (full_fan)
                break;
        }
        if (!full_fan)
            throw GeometryError("tessellation too small to verify reuse-6 periodicity");
        for (auto &r : regions)
            r.color = detail::motif_color(N, r.anchor_ids);
        return regions;
    }

    // The CR of the given colour that has the BS `bs` as an anchor, in meters.
    inline CoopRegion home_region(int N, double d, int color = 1, LatticeIndex bs = {})
    {
        if (color < 1 || color > 6)
            throw ConfigError("colour must be in 1..6");
        auto crs = color_reuse6(build_tessellation(N, d, 2, bs));
        for (auto &cr : crs)
            if (cr.color == color && cr.has_anchor(bs))
                return cr;
        throw GeometryError("no home region found");
    }

    inline CoopRegion home_region(const NetworkConfig &cfg, int color = 1)
    {
        return home_region(cfg.N, cfg.d, color);
    }

    // ---------- interference layout ----------

    // Smallest distance from the home BS at which tier t ends, in units of d.
    inline double tier_radius(int tier) { return tier * std::sqrt(3.0); }

    // Tier of a region relative to a BS: 1 or 2 by nearest-point distance,
    // 0 beyond the modelled tiers.
    inline int tier_of(const ConvexPolygon &poly, Point2D bs, double d)
    {
        const double dist = poly.distance_to(bs) / d;
        constexpr double tol = 1e-9;
        if (dist <= tier_radius(1) + tol)
            return 1;
        if (dist <= tier_radius(2) + tol)
            return 2;
        return 0;
    }

    struct LayoutRegion
    {
        ConvexPolygon polygon; // d-normalized, home-BS-centred
        int tier = 0;
    };

    struct InterferenceLayout
    {
        int N = 0;
        int color = 0;
        ConvexPolygon home; // d-normalized, home-BS-centred
        std::vector<LayoutRegion> regions;

        std::vector<ConvexPolygon> tier(int t) const
        {
            std::vector<ConvexPolygon> out;
            for (const auto &r : regions)
                if (r.tier == t)
                    out.push_back(r.polygon);
            return out;
        }
        std::size_t count(int t) const
        {
            return static_cast<std::size_t>(std::count_if(regions.begin(), regions.end(), [t](const auto &r) { return r.tier == t; }));
        }
    };

    inline constexpr int layout_min_extent = 5;

    // Co-channel CRs around BS `bs` for the given colour, binned into tiers 1 and 2.
    inline InterferenceLayout interference_layout(int N, int color = 1, LatticeIndex bs = {}, int extent = layout_min_extent)
    {
        if (extent < layout_min_extent)
            throw GeometryError("tessellation extent " + std::to_string(extent) + " is too small to cover two interference tiers");
        auto crs = color_reuse6(build_tessellation(N, 1.0, extent, bs));
        const Point2D origin = bs_position(bs, 1.0);
        InterferenceLayout layout;
        layout.N = N;
        layout.color = color;
        bool have_home = false;
        for (const auto &cr : crs)
        {
            if (cr.color != color)
                continue;
            const ConvexPolygon local = cr.polygon.translated({-origin.x, -origin.y});
            if (cr.has_anchor(bs))
            {
                layout.home = local;
                have_home = true;
                continue;
            }
            const int t = tier_of(local, {}, 1.0);
            if (t > 0)
                layout.regions.push_back({local, t});
        }
        if (!have_home)
            throw GeometryError("home CR missing from tessellation");
        std::stable_sort(layout.regions.begin(), layout.regions.end(), [](const auto &a, const auto &b) {
            if (a.tier != b.tier)
                return a.tier < b.tier;
            return norm(a.polygon.centroid()) < norm(b.polygon.centroid());
        });
        return layout;
    }

    inline InterferenceLayout interference_layout(const NetworkConfig &cfg)
    {
        if (cfg.N != 2 && cfg.N != 3)
            throw ConfigError("interference layout is defined for N = 2 or 3");
        return interference_layout(cfg.N);
    }

    // ---------- distances / worst case ----------

    inline std::vector<double> distances(Point2D p, const CoopRegion &cr)
    {
        const double scale = std::sqrt(cr.polygon.area());
        if (!cr.polygon.contains(p, 1e-9 * scale))
            throw OutsideRegionError("point lies outside the cooperation region");
        std::vector<double> r;
        r.reserve(cr.anchors.size());
        for (const auto &a : cr.anchors)
        {
            const double dist = norm(p - a);
            if (dist <= 1e-12 * scale)
                throw AnchorCoincidenceError("point coincides with a cooperating BS");
            r.push_back(dist);
        }
        return r;
    }

    struct WorstCasePoint
    {
        Point2D point;
        std::vector<double> distances;
    };

    // N = 2: the two diamond corners that are not BSs (r = (d, d)).
    // N = 3: the triangle centroid (r = (d, d, d)).
    inline std::vector<WorstCasePoint> worst_case_points(const NetworkConfig &cfg)
    {
        if (cfg.N != 2 && cfg.N != 3)
            throw ConfigError("worst-case points are defined for N = 2 or 3");
        const CoopRegion cr = home_region(cfg);
        std::vector<WorstCasePoint> out;
        if (cfg.N == 2)
        {
            for (const auto &v : cr.polygon.vertices())
            {
                const bool is_anchor = std::any_of(cr.anchors.begin(), cr.anchors.end(),
                                                   [&](Point2D a) { return norm(a - v) < 1e-9 * cfg.d; });
                if (!is_anchor)
                    out.push_back({v, distances(v, cr)});
            }
        }
        else
        {
            const Point2D c = cr.polygon.centroid();
            out.push_back({c, distances(c, cr)});
        }
        return out;
    }

    // ---------- co-channel scene (Monte Carlo support) ----------

    // Home CR plus every co-channel CR that falls in the modelled tiers of at
    // least one cooperating BS, in meters. `hears[k][j]` is true when BS k
    // counts region j among its own tiers.
    struct CoChannelScene
    {
        CoopRegion home;
        std::vector<ConvexPolygon> interferers;
        std::vector<std::vector<bool>> hears;
        std::vector<std::vector<int>> tier; // tier[k][j], 0 if not heard

        std::size_t heard_by(std::size_t k) const
        {
            return static_cast<std::size_t>(std::count(hears[k].begin(), hears[k].end(), true));
        }
    };

    inline CoChannelScene cochannel_scene(const NetworkConfig &cfg, int color = 1)
    {
        if (cfg.N != 2 && cfg.N != 3)
            throw ConfigError("co-channel scene is defined for N = 2 or 3");
        auto crs = color_reuse6(build_tessellation(cfg.N, cfg.d, layout_min_extent + 1));
        CoChannelScene scene;
        bool have_home = false;
        for (const auto &cr : crs)
            if (cr.color == color && cr.has_anchor({}))
            {
                scene.home = cr;
                have_home = true;
            }
        if (!have_home)
            throw GeometryError("home CR missing from tessellation");
        const std::size_t K = scene.home.anchors.size();
        scene.hears.assign(K, {});
        scene.tier.assign(K, {});
        for (const auto &cr : crs)
        {
            if (cr.color != color || cr.has_anchor({}) || cr.shares_anchor(scene.home))
                continue;
            std::vector<int> t(K);
            bool any = false;
            for (std::size_t k = 0; k < K; ++k)
            {
                t[k] = tier_of(cr.polygon, scene.home.anchors[k], cfg.d);
                if (t[k] > cfg.tiers)
                    t[k] = 0;
                any = any || t[k] > 0;
            }
            if (!any)
                continue;
            scene.interferers.push_back(cr.polygon);
            for (std::size_t k = 0; k < K; ++k)
            {
                scene.hears[k].push_back(t[k] > 0);
                scene.tier[k].push_back(t[k]);
            }
        }
        return scene;
    }

} // namespace compcov

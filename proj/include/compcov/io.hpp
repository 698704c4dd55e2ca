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

// Config parsing and report writing. This is the only header that needs
// nlohmann/json; the numerical headers do not include it.

#include "core.hpp"
#include "design.hpp"
#include "geometry.hpp"
#include "montecarlo.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace compcov
{
    using json = nlohmann::json;

    // Shortest round-trip representation; identical on every platform with a
    // conforming std::to_chars.
    inline std::string format_double(double x)
    {
        if (std::isnan(x))
            return "nan";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        char buf[64];
        const auto r = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, r.ptr);
    }

    namespace detail
    {
        inline void reject_unknown(const json &j, std::initializer_list<const char *> allowed, const std::string &where)
        {
            if (!j.is_object())
                throw ConfigError(where + " must be a JSON object");
            const std::set<std::string> ok(allowed.begin(), allowed.end());
            for (const auto &[k, v] : j.items())
                if (!ok.count(k))
                    throw ConfigError("unknown key '" + k + "' in " + where);
        }

        template <class T>
        T get_as(const json &j, const char *key, const std::string &where)
        {
            try
            {
                return j.at(key).get<T>();
            }
            catch (const json::exception &e)
            {
                throw ConfigError(where + "." + key + ": " + e.what());
            }
        }

        template <class T>
        void read_opt(const json &j, const char *key, T &out, const std::string &where)
        {
            if (j.contains(key))
                out = get_as<T>(j, key, where);
        }
    } // namespace detail

    // ---------- network ----------

    inline NetworkConfig network_from_json(const json &j, NetworkConfig cfg = {})
    {
        const std::string w = "network";
        detail::reject_unknown(j, {"d_m", "N", "M", "alpha", "sigma_L_db", "tx_power_dbm", "noise_power_dbm", "reuse", "tiers"}, w);
        detail::read_opt(j, "d_m", cfg.d, w);
        detail::read_opt(j, "N", cfg.N, w);
        detail::read_opt(j, "M", cfg.M, w);
        detail::read_opt(j, "alpha", cfg.alpha, w);
        detail::read_opt(j, "sigma_L_db", cfg.sigma_L, w);
        if (j.contains("tx_power_dbm"))
            cfg.tx_power = dbm_to_watts(detail::get_as<double>(j, "tx_power_dbm", w));
        if (j.contains("noise_power_dbm"))
            cfg.noise_power = dbm_to_watts(detail::get_as<double>(j, "noise_power_dbm", w));
        detail::read_opt(j, "reuse", cfg.reuse, w);
        detail::read_opt(j, "tiers", cfg.tiers, w);
        return cfg;
    }

    // Echo in the configuration units and in SI.
    inline json to_json(const NetworkConfig &c)
    {
        return json{{"d_m", c.d},
                     {"lambda_per_m2", density_from_side(c.d)},
                     {"N", c.N},
                     {"M", c.M},
                     {"alpha", c.alpha},
                     {"sigma_L_db", c.sigma_L},
                     {"sigma_z_nats", c.sigma_z()},
                     {"tx_power_dbm", watts_to_dbm(c.tx_power)},
                     {"tx_power_w", c.tx_power.value()},
                     {"noise_power_dbm", c.noise_power.value() > 0.0 ? json(watts_to_dbm(c.noise_power)) : json("-inf")},
                     {"noise_power_w", c.noise_power.value()},
                     {"reuse", c.reuse},
                     {"tiers", c.tiers}};
    }

    // ---------- study ----------

    struct StudyConfig
    {
        NetworkConfig network;
        double c0 = 0.5;
        double target = 0.5;
        DesignMetric metric = DesignMetric::ccp;
        McOptions mc{100000, 1, 0};
        std::vector<double> sweep_d;       // meters
        std::vector<double> sweep_lambda;  // BSs per m^2
        std::vector<double> c0_grid;
        int map_resolution = 50;
        std::string output = "-";
    };

    inline StudyConfig study_from_json(const json &j)
    {
        detail::reject_unknown(j, {"network", "query", "mc", "sweep", "map", "output"}, "config");
        StudyConfig s;
        if (j.contains("network"))
            s.network = network_from_json(j.at("network"));
        if (j.contains("query"))
        {
            const json &q = j.at("query");
            detail::reject_unknown(q, {"c0", "target", "metric"}, "query");
            detail::read_opt(q, "c0", s.c0, "query");
            detail::read_opt(q, "target", s.target, "query");
            if (q.contains("metric"))
            {
                const auto m = detail::get_as<std::string>(q, "metric", "query");
                if (m == "ccp")
                    s.metric = DesignMetric::ccp;
                else if (m == "ergodic")
                    s.metric = DesignMetric::ergodic;
                else
                    throw ConfigError("query.metric must be 'ccp' or 'ergodic'");
            }
        }
        if (j.contains("mc"))
        {
            const json &m = j.at("mc");
            detail::reject_unknown(m, {"trials", "seed", "workers"}, "mc");
            detail::read_opt(m, "trials", s.mc.trials, "mc");
            detail::read_opt(m, "seed", s.mc.seed, "mc");
            detail::read_opt(m, "workers", s.mc.workers, "mc");
        }
        if (j.contains("sweep"))
        {
            const json &m = j.at("sweep");
            detail::reject_unknown(m, {"d_m", "lambda_per_m2", "c0"}, "sweep");
            detail::read_opt(m, "d_m", s.sweep_d, "sweep");
            detail::read_opt(m, "lambda_per_m2", s.sweep_lambda, "sweep");
            detail::read_opt(m, "c0", s.c0_grid, "sweep");
            if (!s.sweep_d.empty() && !s.sweep_lambda.empty())
                throw ConfigError("sweep: give either d_m or lambda_per_m2, not both");
        }
        if (j.contains("map"))
        {
            detail::reject_unknown(j.at("map"), {"resolution"}, "map");
            detail::read_opt(j.at("map"), "resolution", s.map_resolution, "map");
        }
        if (j.contains("output"))
        {
            detail::reject_unknown(j.at("output"), {"path"}, "output");
            detail::read_opt(j.at("output"), "path", s.output, "output");
        }
        return s;
    }

    inline void validate(const StudyConfig &s)
    {
        s.network.validate();
        if (!(s.c0 >= 0.0) || !std::isfinite(s.c0))
            throw ConfigError("c0 must be finite and >= 0");
        if (s.mc.trials < 1)
            throw ConfigError("mc.trials must be >= 1");
        if (s.map_resolution < 2)
            throw ConfigError("map.resolution must be >= 2");
    }

    inline json to_json(const StudyConfig &s)
    {
        return json{{"network", to_json(s.network)},
                    {"query", {{"c0", s.c0}, {"target", s.target}, {"metric", to_string(s.metric)}}},
                    {"mc", {{"trials", s.mc.trials}, {"seed", s.mc.seed}}},
                    {"sweep", {{"d_m", s.sweep_d}, {"lambda_per_m2", s.sweep_lambda}, {"c0", s.c0_grid}}},
                    {"map", {{"resolution", s.map_resolution}}}};
    }

    // ---------- layouts and solutions ----------

    inline json to_json(const ConvexPolygon &p)
    {
        json v = json::array();
        for (const auto &q : p.vertices())
            v.push_back({q.x, q.y});
        return v;
    }

    inline json layout_to_json(const InterferenceLayout &l)
    {
        json regions = json::array();
        for (const auto &r : l.regions)
            regions.push_back({{"tier", r.tier}, {"vertices", to_json(r.polygon)}});
        return json{{"N", l.N},
                    {"color", l.color},
                    {"units", "d"},
                    {"home", to_json(l.home)},
                    {"tier1_count", l.count(1)},
                    {"tier2_count", l.count(2)},
                    {"regions", regions}};
    }

    inline json solution_to_json(const DesignSolution &s)
    {
        auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
        json j{{"scheme", s.scheme},
               {"metric", to_string(s.metric)},
               {"lambda_per_m2", num(s.lambda)},
               {"d_m", num(s.d)},
               {"target", s.target},
               {"achieved", num(s.achieved)},
               {"floor", num(s.floor)},
               {"status", to_string(s.status)},
               {"iterations", s.iterations}};
        if (s.trials)
        {
            j["trials"] = *s.trials;
            j["seed"] = *s.seed;
            j["tolerance"] = s.tolerance;
        }
        return j;
    }

    // ---------- CSV ----------

    class CsvTable
    {
    public:
        explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

        void add_row(std::vector<std::string> row)
        {
            if (row.size() != header_.size())
                throw std::logic_error("CSV row width does not match header");
            rows_.push_back(std::move(row));
        }

        std::size_t size() const { return rows_.size(); }

        // Rows, then one '#' comment line per footer entry.
        void write(std::ostream &os, const json &footer) const
        {
            write_line(os, header_);
            for (const auto &r : rows_)
                write_line(os, r);
            for (const auto &[k, v] : footer.items())
                os << "# " << k << ": " << v.dump() << "\n";
        }

    private:
        static void write_line(std::ostream &os, const std::vector<std::string> &cells)
        {
            for (std::size_t i = 0; i < cells.size(); ++i)
                os << (i ? "," : "") << cells[i];
            os << "\n";
        }

        std::vector<std::string> header_;
        std::vector<std::vector<std::string>> rows_;
    };

} // namespace compcov

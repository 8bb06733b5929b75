// SPDX-License-Identifier: Apache-2.0
//
// dpalab: delay-phased array beamforming laboratory
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

#include "dpalab/io.hpp"

#include "json.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

using nlohmann::json;

namespace dpalab
{
    namespace
    {
        json parse(const std::string &text)
        {
            try
            {
                return json::parse(text);
            }
            catch (const json::exception &e)
            {
                throw Error("parse_error", std::string("invalid JSON: ") + e.what());
            }
        }

        template <typename T>
        void read_opt(const json &j, const char *key, T &dst)
        {
            if (!j.contains(key))
                return;
            try
            {
                dst = j.at(key).get<T>();
            }
            catch (const json::exception &)
            {
                throw Error("parse_error", std::string("wrong type for key ") + key);
            }
        }

        double required_number(const json &j, const char *key)
        {
            if (!j.contains(key) || !j.at(key).is_number())
                throw Error("parse_error", std::string("missing numeric key ") + key);
            return j.at(key).get<double>();
        }

        json user_metrics_json(const UserMetrics &m)
        {
            return json{{"id", m.id},
                        {"generated", m.generated},
                        {"delivered", m.delivered},
                        {"dropped", m.dropped},
                        {"queued", m.queued},
                        {"packet_loss_fraction", m.loss},
                        {"latency_median_ms", m.latency_median_ms},
                        {"latency_p99_ms", m.latency_p99_ms},
                        {"latency_worst_ms", m.latency_worst_ms},
                        {"throughput_bps", m.throughput_bps}};
        }
    }

    BeamPlan plan_from_json(const std::string &text)
    {
        const json j = parse(text);
        if (!j.is_object() || !j.contains("beams") || !j.at("beams").is_array())
            throw Error("parse_error", "beam plan needs a \"beams\" array");
        BeamPlan plan;
        for (const auto &b : j.at("beams"))
        {
            if (!b.is_object())
                throw Error("parse_error", "each beam must be an object");
            BeamSpec s;
            s.sin_theta = required_number(b, "sin_theta");
            s.f_low_hz = required_number(b, "f_low_hz");
            s.f_high_hz = required_number(b, "f_high_hz");
            if (b.contains("width"))
                s.width = required_number(b, "width");
            plan.beams.push_back(s);
        }
        return plan;
    }

    std::string plan_to_json(const BeamPlan &plan)
    {
        json beams = json::array();
        for (const auto &b : plan.beams)
        {
            json o{{"sin_theta", b.sin_theta}, {"f_low_hz", b.f_low_hz}, {"f_high_hz", b.f_high_hz}};
            if (b.width)
                o["width"] = *b.width;
            beams.push_back(o);
        }
        return json{{"beams", beams}}.dump(2);
    }

    void write_weights_csv(std::ostream &out, const DelayPhaseWeights &weights)
    {
        out << "antenna,delay_ns,phase_deg,quantized\n" << std::setprecision(15);
        for (std::size_t n = 0; n < weights.size(); ++n)
            out << n << ',' << weights.delays[n] * 1e9 << ',' << weights.phases[n] * 180.0 / pi << ','
                << (weights.quantized ? 1 : 0) << '\n';
    }

    DelayPhaseWeights read_weights_csv(std::istream &in)
    {
        std::string line;
        if (!std::getline(in, line) || line.rfind("antenna,delay_ns,phase_deg,quantized", 0) != 0)
            throw Error("parse_error", "missing weights CSV header");
        DelayPhaseWeights w;
        bool any_quantized = false, all_quantized = true;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            std::stringstream ss(line);
            std::string a, d, p, q;
            if (!std::getline(ss, a, ',') || !std::getline(ss, d, ',') || !std::getline(ss, p, ',') || !std::getline(ss, q, ','))
                throw Error("parse_error", "weights CSV row needs four cells");
            try
            {
                if (std::stoul(a) != w.size())
                    throw Error("parse_error", "antenna indices must be consecutive from 0");
                w.delays.push_back(std::stod(d) * 1e-9);
                w.phases.push_back(wrap_phase(std::stod(p) * pi / 180.0));
                const bool qz = std::stoi(q) != 0;
                any_quantized |= qz;
                all_quantized &= qz;
            }
            catch (const Error &)
            {
                throw;
            }
            catch (const std::exception &)
            {
                throw Error("parse_error", "non-numeric weights CSV cell");
            }
        }
        w.quantized = any_quantized && all_quantized;
        w.validate();
        return w;
    }

    EmulationScenario scenario_from_json(const std::string &text)
    {
        const json j = parse(text);
        if (!j.is_object())
            throw Error("parse_error", "scenario must be a JSON object");
        EmulationScenario sc;
        std::uint64_t seed = sc.rng_seed;
        read_opt(j, "rng_seed", seed);
        if (j.contains("preset"))
        {
            if (j.at("preset") != "table1")
                throw Error("parse_error", "unknown scenario preset");
            sc = EmulationScenario::table1(ArchitectureKind::dpa, seed);
        }
        sc.rng_seed = seed;
        if (j.contains("architecture"))
            sc.architecture = parse_architecture(j.at("architecture").get<std::string>());
        read_opt(j, "num_ttis", sc.num_ttis);
        read_opt(j, "tti_s", sc.tti_s);
        read_opt(j, "fov_groups", sc.fov_groups);
        read_opt(j, "fov_deg", sc.fov_deg);
        read_opt(j, "reference_snr_db", sc.reference_snr_db);
        read_opt(j, "num_antennas", sc.num_antennas);
        read_opt(j, "bandwidth_hz", sc.bandwidth_hz);
        read_opt(j, "num_subcarriers", sc.num_subcarriers);
        read_opt(j, "angle_bins", sc.angle_bins);
        read_opt(j, "max_beams", sc.max_beams);
        read_opt(j, "fraction_floor", sc.fraction_floor);
        read_opt(j, "ema_factor", sc.ema_factor);
        read_opt(j, "phy_cap_bps", sc.phy_cap_bps);
        read_opt(j, "phase_bits", sc.phase_bits);
        read_opt(j, "delay_step_s", sc.delay_step_s);
        read_opt(j, "frame_rate_hz", sc.frame_rate_hz);
        read_opt(j, "frame_spread_ttis", sc.frame_spread_ttis);
        if (j.contains("traffic"))
        {
            const std::string t = j.at("traffic").get<std::string>();
            if (t == "fluid")
                sc.traffic = TrafficModel::fluid;
            else if (t == "frames")
                sc.traffic = TrafficModel::frames;
            else
                throw Error("parse_error", "traffic must be \"fluid\" or \"frames\"");
        }
        if (j.contains("users"))
        {
            if (!j.at("users").is_array())
                throw Error("parse_error", "users must be an array");
            sc.users.clear();
            int next_id = 0;
            for (const auto &u : j.at("users"))
            {
                UserSpec s;
                s.id = next_id;
                read_opt(u, "id", s.id);
                s.sin_theta = required_number(u, "sin_theta");
                read_opt(u, "demand_bps", s.demand_bps);
                read_opt(u, "latency_bound_s", s.latency_bound_s);
                read_opt(u, "packet_bits", s.packet_bits);
                sc.users.push_back(s);
                next_id = s.id + 1;
            }
        }
        sc.validate();
        return sc;
    }

    std::string scenario_to_json(const EmulationScenario &sc)
    {
        json users = json::array();
        for (const auto &u : sc.users)
            users.push_back({{"id", u.id},
                             {"sin_theta", u.sin_theta},
                             {"demand_bps", u.demand_bps},
                             {"latency_bound_s", u.latency_bound_s},
                             {"packet_bits", u.packet_bits}});
        json j{{"architecture", to_string(sc.architecture)},
               {"num_ttis", sc.num_ttis},
               {"tti_s", sc.tti_s},
               {"fov_groups", sc.fov_groups},
               {"fov_deg", sc.fov_deg},
               {"reference_snr_db", sc.reference_snr_db},
               {"rng_seed", sc.rng_seed},
               {"num_antennas", sc.num_antennas},
               {"bandwidth_hz", sc.bandwidth_hz},
               {"num_subcarriers", sc.num_subcarriers},
               {"angle_bins", sc.angle_bins},
               {"max_beams", sc.max_beams},
               {"fraction_floor", sc.fraction_floor},
               {"ema_factor", sc.ema_factor},
               {"phy_cap_bps", sc.phy_cap_bps},
               {"phase_bits", sc.phase_bits},
               {"delay_step_s", sc.delay_step_s},
               {"traffic", sc.traffic == TrafficModel::fluid ? "fluid" : "frames"},
               {"frame_rate_hz", sc.frame_rate_hz},
               {"frame_spread_ttis", sc.frame_spread_ttis},
               {"users", users}};
        return j.dump(2);
    }

    std::string metrics_to_json(const MetricsReport &report)
    {
        json users = json::array();
        for (const auto &u : report.users)
            users.push_back(user_metrics_json(u));
        json agg = user_metrics_json(report.aggregate);
        agg.erase("id");
        return json{{"architecture", report.architecture}, {"aggregate", agg}, {"users", users}}.dump(2);
    }
}

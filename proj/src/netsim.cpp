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

#include "dpalab/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <tuple>

namespace dpalab
{
    namespace
    {
        // Portable uniform [0, 1) draw; the standard distributions are implementation-defined.
        double unit_draw(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

        struct TrafficOffsets
        {
            std::vector<double> fluid; // initial accumulator fill, in packets
            std::vector<double> frame; // first frame start, in TTIs
        };

        TrafficOffsets traffic_offsets(const EmulationScenario &sc)
        {
            std::mt19937_64 rng(sc.rng_seed ^ 0x9E3779B97F4A7C15ull);
            TrafficOffsets off;
            const double period = 1.0 / (sc.frame_rate_hz * sc.tti_s);
            for (std::size_t u = 0; u < sc.users.size(); ++u)
            {
                off.fluid.push_back(unit_draw(rng));
                off.frame.push_back(unit_draw(rng) * period);
            }
            return off;
        }

        // Bits offered by user u up to the end of TTI t (t = -1 -> before the run).
        double cumulative_bits(const EmulationScenario &sc, const TrafficOffsets &off, std::size_t u, int t)
        {
            const UserSpec &user = sc.users[u];
            const double x = t + 1.0;
            if (sc.traffic == TrafficModel::fluid)
                return (x * user.demand_bps * sc.tti_s / user.packet_bits + off.fluid[u]) * user.packet_bits;

            const double period = 1.0 / (sc.frame_rate_hz * sc.tti_s);
            const double frame_bits = user.demand_bps / sc.frame_rate_hz;
            const double spread = std::max(1, sc.frame_spread_ttis);
            const double y = x - off.frame[u];
            if (y <= 0.0)
                return 0.0;
            // frames j = 0.. start at off + j * period; each ramps linearly over `spread` TTIs
            double full = 0.0;
            if (y >= spread)
                full = std::floor((y - spread) / period) + 1.0;
            double total = full * frame_bits;
            const double j_last = std::floor(y / period);
            for (double j = full; j <= j_last; j += 1.0)
                total += frame_bits * std::clamp((y - j * period) / spread, 0.0, 1.0);
            return total;
        }

        int packets_until(const EmulationScenario &sc, const TrafficOffsets &off, std::size_t u, int t)
        {
            return static_cast<int>(std::floor(cumulative_bits(sc, off, u, t) / sc.users[u].packet_bits + 1e-9));
        }
    }

    void EmulationScenario::validate() const
    {
        if (num_ttis < 1)
            throw Error("invalid_scenario", "num_ttis must be at least 1");
        if (!(tti_s > 0.0))
            throw Error("invalid_scenario", "tti duration must be positive");
        if (fov_groups < 1 || !(fov_deg > 0.0 && fov_deg <= 180.0))
            throw Error("invalid_scenario", "invalid field-of-view grouping");
        if (num_antennas < 2 || num_subcarriers < 2 || angle_bins < num_antennas || !(bandwidth_hz > 0.0))
            throw Error("invalid_scenario", "invalid radio configuration");
        if (max_beams < 1 || !(fraction_floor >= 0.0 && fraction_floor < 1.0))
            throw Error("invalid_scenario", "invalid scheduler configuration");
        if (!(ema_factor > 0.0 && ema_factor <= 1.0))
            throw Error("invalid_scenario", "ema_factor must lie in (0, 1]");
        if (!(phy_cap_bps > 0.0) || phase_bits < 1 || !(delay_step_s > 0.0))
            throw Error("invalid_scenario", "invalid PHY configuration");
        if (traffic == TrafficModel::frames && (!(frame_rate_hz > 0.0) || frame_spread_ttis < 1))
            throw Error("invalid_scenario", "invalid frame traffic configuration");
        for (const auto &u : users)
        {
            if (!(u.demand_bps > 0.0))
                throw Error("invalid_scenario", "user demand must be positive");
            if (!(u.latency_bound_s > 0.0))
                throw Error("invalid_scenario", "user latency bound must be positive");
            if (u.packet_bits < 1)
                throw Error("invalid_scenario", "packet size must be positive");
            if (!(std::abs(u.sin_theta) <= 1.0))
                throw Error("out_of_range", "user direction must satisfy |sin(theta)| <= 1");
        }
    }

    int EmulationScenario::latency_bound_ttis(const UserSpec &u) const
    {
        return std::max(1, static_cast<int>(std::floor(u.latency_bound_s / tti_s + 1e-9)));
    }

    EmulationScenario EmulationScenario::table1(ArchitectureKind arch, std::uint64_t seed)
    {
        EmulationScenario sc;
        sc.architecture = arch;
        sc.rng_seed = seed;
        std::mt19937_64 rng(seed);
        for (int u = 0; u < 10; ++u)
        {
            const double deg = -54.0 + 12.0 * u + (unit_draw(rng) * 6.0 - 3.0);
            sc.users.push_back({u, std::sin(deg * pi / 180.0), 60e6, 1e-3, 12000});
        }
        return sc;
    }

    std::vector<Packet> generate_traffic(const EmulationScenario &scenario, int tti)
    {
        std::vector<Packet> out;
        if (scenario.users.empty())
            return out;
        const TrafficOffsets off = traffic_offsets(scenario);
        for (std::size_t u = 0; u < scenario.users.size(); ++u)
        {
            const int count = packets_until(scenario, off, u, tti) - packets_until(scenario, off, u, tti - 1);
            for (int i = 0; i < count; ++i)
                out.push_back({scenario.users[u].id, scenario.users[u].packet_bits, tti, std::nullopt, false});
        }
        return out;
    }

    std::vector<std::vector<int>> group_users(const std::vector<UserSpec> &users, int fov_groups, double fov_deg)
    {
        if (fov_groups < 1)
            throw Error("invalid_scenario", "fov_groups must be positive");
        std::vector<std::vector<int>> groups(fov_groups);
        const double width = fov_deg / fov_groups;
        for (std::size_t i = 0; i < users.size(); ++i)
        {
            const double deg = std::asin(std::clamp(users[i].sin_theta, -1.0, 1.0)) * 180.0 / pi;
            if (std::abs(deg) > fov_deg / 2.0 + 1e-9)
                throw Error("out_of_fov", "user direction lies outside the field of view");
            int g = static_cast<int>(std::floor((deg + fov_deg / 2.0) / width));
            g = std::clamp(g, 0, fov_groups - 1);
            groups[g].push_back(static_cast<int>(i));
        }
        return groups;
    }

    Allocation pf_schedule(const std::vector<double> &backlog_bits, const std::vector<double> &rates,
                           const std::vector<double> &ema_throughput, const SchedulerParams &params)
    {
        Allocation alloc;
        std::vector<int> cand;
        for (std::size_t g = 0; g < backlog_bits.size(); ++g)
            if (backlog_bits[g] > 0.0 && rates[g] > 0.0)
                cand.push_back(static_cast<int>(g));
        if (cand.empty() || params.num_subcarriers < 1)
            return alloc;

        auto metric = [&](int g) { return rates[g] / std::max(ema_throughput[g], 1e-9); };
        std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return metric(a) > metric(b); });
        const int take = std::min<int>({static_cast<int>(cand.size()), std::max(1, params.max_beams), params.num_subcarriers});
        std::vector<int> sel(cand.begin(), cand.begin() + take);
        std::sort(sel.begin(), sel.end());

        // backlog-proportional shares; shares under the floor are pinned and the rest rescaled
        const std::size_t S = sel.size();
        const double floor = std::min(params.fraction_floor, 1.0 / S);
        std::vector<double> fr(S, 0.0);
        std::vector<bool> pinned(S, false);
        for (int iter = 0; iter < static_cast<int>(S) + 1; ++iter)
        {
            double free_mass = 1.0, free_backlog = 0.0;
            for (std::size_t i = 0; i < S; ++i)
                if (pinned[i])
                    free_mass -= floor;
                else
                    free_backlog += backlog_bits[sel[i]];
            bool changed = false;
            for (std::size_t i = 0; i < S; ++i)
            {
                fr[i] = pinned[i] ? floor : free_mass * backlog_bits[sel[i]] / free_backlog;
                if (!pinned[i] && fr[i] < floor)
                {
                    pinned[i] = true;
                    changed = true;
                }
            }
            if (!changed)
                break;
        }

        // largest-remainder rounding to whole subcarriers, at least one each
        const int M = params.num_subcarriers;
        std::vector<int> count(S);
        std::vector<std::pair<double, std::size_t>> rem;
        int used = 0;
        for (std::size_t i = 0; i < S; ++i)
        {
            const double exact = fr[i] * M;
            count[i] = std::max(1, static_cast<int>(std::floor(exact)));
            used += count[i];
            rem.push_back({exact - std::floor(exact), i});
        }
        std::stable_sort(rem.begin(), rem.end(), [](const auto &a, const auto &b) { return a.first > b.first; });
        for (std::size_t r = 0; used < M; r = (r + 1) % S)
        {
            ++count[rem[r].second];
            ++used;
        }
        while (used > M)
        {
            auto it = std::max_element(count.begin(), count.end());
            --*it;
            --used;
        }

        int first = 0;
        for (std::size_t i = 0; i < S; ++i)
        {
            alloc.shares.push_back({sel[i], fr[i], first, count[i]});
            first += count[i];
        }
        return alloc;
    }

    namespace
    {
        // Computes per-user bits for an allocation; caches DPA weights per band layout.
        class CapacityEngine
        {
        public:
            explicit CapacityEngine(const EmulationScenario &sc) : sc_(sc)
            {
                cfg_.num_antennas = sc.num_antennas;
                cfg_.bandwidth_hz = sc.bandwidth_hz;
                cfg_.num_freq_bins = sc.num_subcarriers;
                cfg_.num_angle_bins = sc.angle_bins;
                cfg_.validate();
                se_cap_ = sc.phy_cap_bps / sc.bandwidth_hz;
                snr_ref_ = std::pow(10.0, sc.reference_snr_db / 10.0);
            }

            std::vector<double> compute(ArchitectureKind arch, const Allocation &alloc,
                                        const std::vector<std::vector<int>> &groups, const std::vector<double> &group_dirs,
                                        const std::vector<double> &user_backlog)
            {
                std::vector<double> bits(sc_.users.size(), 0.0);
                if (alloc.shares.empty())
                    return bits;

                DelayPhaseWeights w;
                bool ideal = false;
                std::vector<double> dirs;
                for (const auto &s : alloc.shares)
                    dirs.push_back(group_dirs[s.group]);
                switch (arch)
                {
                case ArchitectureKind::dpa:
                    w = dpa_weights(alloc, group_dirs);
                    break;
                case ArchitectureKind::split_antenna:
                    w = split_array_weights(dirs, sc_.num_antennas);
                    break;
                case ArchitectureKind::phased_tdma:
                    w = phased_array_weights(dirs.front(), sc_.num_antennas);
                    break;
                case ArchitectureKind::ttd_rainbow:
                    w = ttd_rainbow_weights(sc_.num_antennas, sc_.bandwidth_hz);
                    break;
                case ArchitectureKind::oracle:
                    ideal = true;
                    break;
                }

                const double df = sc_.bandwidth_hz / sc_.num_subcarriers;
                for (const auto &share : alloc.shares)
                {
                    std::vector<int> active;
                    for (int u : groups[share.group])
                        if (user_backlog[u] > 0.0)
                            active.push_back(u);
                    if (active.empty())
                        continue;
                    // contiguous equal sub-bands for co-grouped users
                    for (std::size_t i = 0; i < active.size(); ++i)
                    {
                        const int lo = share.first_subcarrier + static_cast<int>(share.num_subcarriers * i / active.size());
                        const int hi = share.first_subcarrier + static_cast<int>(share.num_subcarriers * (i + 1) / active.size());
                        if (hi <= lo)
                            continue;
                        const int u = active[i];
                        double se_sum = 0.0;
                        if (ideal)
                            se_sum = (hi - lo) * spectral_efficiency(1.0);
                        else
                        {
                            const std::vector<cplx> g = gain_along(w, sc_.users[u].sin_theta, cfg_);
                            for (int m = lo; m < hi; ++m)
                                se_sum += spectral_efficiency(std::abs(g[m]) / sc_.num_antennas);
                        }
                        bits[u] += se_sum * df * sc_.tti_s;
                    }
                }
                return bits;
            }

        private:
            double spectral_efficiency(double rel_gain) const
            {
                return std::min(std::log2(1.0 + rel_gain * rel_gain * snr_ref_), se_cap_);
            }

            DelayPhaseWeights dpa_weights(const Allocation &alloc, const std::vector<double> &group_dirs)
            {
                std::vector<std::tuple<int, int, int>> key;
                for (const auto &s : alloc.shares)
                    key.emplace_back(s.group, s.first_subcarrier, s.num_subcarriers);
                auto it = cache_.find(key);
                if (it != cache_.end())
                    return it->second;

                BeamPlan plan;
                const double df = sc_.bandwidth_hz / sc_.num_subcarriers;
                for (const auto &s : alloc.shares)
                {
                    const int end = s.first_subcarrier + s.num_subcarriers;
                    const double hi = end >= sc_.num_subcarriers ? sc_.bandwidth_hz / 2.0 : -sc_.bandwidth_hz / 2.0 + end * df;
                    plan.beams.push_back({group_dirs[s.group], -sc_.bandwidth_hz / 2.0 + s.first_subcarrier * df, hi, std::nullopt});
                }
                const QuantizerSpec q{sc_.phase_bits, sc_.delay_step_s, cfg_.time_window()};
                DelayPhaseWeights w = synthesize(plan, cfg_, q);
                cache_.emplace(key, w);
                return w;
            }

            const EmulationScenario &sc_;
            ArrayConfig cfg_;
            double se_cap_ = 0.0;
            double snr_ref_ = 0.0;
            std::map<std::vector<std::tuple<int, int, int>>, DelayPhaseWeights> cache_;
        };

        // Fixed disjoint slice per sector for the rainbow front-end.
        Allocation ttd_allocation(const std::vector<double> &group_backlog, int num_subcarriers)
        {
            Allocation alloc;
            const int G = static_cast<int>(group_backlog.size());
            for (int g = 0; g < G; ++g)
            {
                if (group_backlog[g] <= 0.0)
                    continue;
                const int lo = static_cast<int>(static_cast<long>(g) * num_subcarriers / G);
                const int hi = static_cast<int>(static_cast<long>(g + 1) * num_subcarriers / G);
                alloc.shares.push_back({g, static_cast<double>(hi - lo) / num_subcarriers, lo, hi - lo});
            }
            return alloc;
        }

        std::vector<double> group_directions(const EmulationScenario &sc, const std::vector<std::vector<int>> &groups)
        {
            std::vector<double> dirs(groups.size(), 0.0);
            const double width = sc.fov_deg / sc.fov_groups;
            for (std::size_t g = 0; g < groups.size(); ++g)
            {
                if (groups[g].empty())
                {
                    dirs[g] = std::sin((-sc.fov_deg / 2.0 + width * (g + 0.5)) * pi / 180.0);
                    continue;
                }
                double acc = 0.0;
                for (int u : groups[g])
                    acc += sc.users[u].sin_theta;
                dirs[g] = acc / groups[g].size();
            }
            return dirs;
        }

        double percentile_ttis(std::vector<int> v, double q)
        {
            if (v.empty())
                return 0.0;
            std::sort(v.begin(), v.end());
            const std::size_t rank = static_cast<std::size_t>(std::ceil(q * v.size()));
            return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
        }

        void summarize(UserMetrics &m, const std::vector<int> &lat, double tti_ms, double duration_s, double bits_delivered)
        {
            m.loss = m.generated ? static_cast<double>(m.dropped) / m.generated : 0.0;
            m.latency_median_ms = percentile_ttis(lat, 0.5) * tti_ms;
            m.latency_p99_ms = percentile_ttis(lat, 0.99) * tti_ms;
            m.latency_worst_ms = lat.empty() ? 0.0 : *std::max_element(lat.begin(), lat.end()) * tti_ms;
            m.throughput_bps = bits_delivered / duration_s;
        }
    }

    std::vector<double> capacity(ArchitectureKind arch, const Allocation &alloc, const std::vector<UserSpec> &users,
                                 const std::vector<std::vector<int>> &groups, const std::vector<double> &group_dirs,
                                 const std::vector<double> &user_backlog, const EmulationScenario &scenario)
    {
        EmulationScenario sc = scenario;
        sc.users = users;
        CapacityEngine engine(sc);
        return engine.compute(arch, alloc, groups, group_dirs, user_backlog);
    }

    MetricsReport run_emulation(const EmulationScenario &scenario)
    {
        scenario.validate();
        MetricsReport report;
        report.architecture = to_string(scenario.architecture);
        const std::size_t U = scenario.users.size();
        if (U == 0)
            return report;

        const auto groups = group_users(scenario.users, scenario.fov_groups, scenario.fov_deg);
        const auto dirs = group_directions(scenario, groups);
        const TrafficOffsets off = traffic_offsets(scenario);
        CapacityEngine engine(scenario);

        const int G = scenario.fov_groups;
        const double nominal_rate = std::min(scenario.bandwidth_hz * std::log2(1.0 + std::pow(10.0, scenario.reference_snr_db / 10.0)),
                                             scenario.phy_cap_bps) * scenario.tti_s;
        const std::vector<double> rates(G, nominal_rate);
        std::vector<double> ema(G, 1.0);

        SchedulerParams params{scenario.max_beams, scenario.fraction_floor, scenario.num_subcarriers};
        if (scenario.architecture == ArchitectureKind::phased_tdma)
            params.max_beams = 1;

        std::vector<std::deque<Packet>> queues(U);
        std::vector<double> credit(U, 0.0);
        std::vector<UserMetrics> um(U);
        std::vector<std::vector<int>> latencies(U);
        std::vector<double> delivered_bits(U, 0.0);
        std::vector<int> prev_count(U);
        for (std::size_t u = 0; u < U; ++u)
        {
            um[u].id = scenario.users[u].id;
            prev_count[u] = packets_until(scenario, off, u, -1);
        }
        report.series.reserve(static_cast<std::size_t>(scenario.num_ttis) * U);

        for (int t = 0; t < scenario.num_ttis; ++t)
        {
            std::vector<int> dropped_now(U, 0);
            std::vector<double> backlog(U, 0.0);
            std::vector<double> group_backlog(G, 0.0);
            for (std::size_t u = 0; u < U; ++u)
            {
                const int now = packets_until(scenario, off, u, t);
                for (int i = prev_count[u]; i < now; ++i)
                    queues[u].push_back({scenario.users[u].id, scenario.users[u].packet_bits, t, std::nullopt, false});
                um[u].generated += now - prev_count[u];
                prev_count[u] = now;

                const int bound = scenario.latency_bound_ttis(scenario.users[u]);
                while (!queues[u].empty() && t - queues[u].front().created_at + 1 > bound)
                {
                    queues[u].pop_front();
                    credit[u] = 0.0;
                    ++um[u].dropped;
                    ++dropped_now[u];
                }
                double q = -credit[u];
                for (const auto &p : queues[u])
                    q += p.size_bits;
                backlog[u] = std::max(q, 0.0);
            }
            for (int g = 0; g < G; ++g)
                for (int u : groups[g])
                    group_backlog[g] += backlog[u];

            const Allocation alloc = scenario.architecture == ArchitectureKind::ttd_rainbow
                                         ? ttd_allocation(group_backlog, scenario.num_subcarriers)
                                         : pf_schedule(group_backlog, rates, ema, params);
            const std::vector<double> bits = engine.compute(scenario.architecture, alloc, groups, dirs, backlog);

            std::vector<double> served_group(G, 0.0);
            for (std::size_t u = 0; u < U; ++u)
            {
                long delivered_now = 0;
                credit[u] += bits[u];
                while (!queues[u].empty() && credit[u] >= queues[u].front().size_bits)
                {
                    const Packet &p = queues[u].front();
                    credit[u] -= p.size_bits;
                    latencies[u].push_back(t - p.created_at + 1);
                    delivered_now += p.size_bits;
                    ++um[u].delivered;
                    queues[u].pop_front();
                }
                if (queues[u].empty())
                    credit[u] = 0.0;
                delivered_bits[u] += delivered_now;

                double q = -credit[u];
                for (const auto &p : queues[u])
                    q += p.size_bits;
                report.series.push_back({t, scenario.users[u].id, static_cast<long>(std::llround(std::max(q, 0.0))),
                                         delivered_now, dropped_now[u]});
            }
            for (int g = 0; g < G; ++g)
            {
                for (int u : groups[g])
                    served_group[g] += std::min(bits[u], backlog[u]);
                ema[g] = (1.0 - scenario.ema_factor) * ema[g] + scenario.ema_factor * served_group[g] / scenario.tti_s;
            }
        }

        const double tti_ms = scenario.tti_s * 1e3;
        const double duration = scenario.num_ttis * scenario.tti_s;
        std::vector<int> all_lat;
        double all_bits = 0.0;
        UserMetrics agg;
        agg.id = -1;
        for (std::size_t u = 0; u < U; ++u)
        {
            um[u].queued = static_cast<long>(queues[u].size());
            summarize(um[u], latencies[u], tti_ms, duration, delivered_bits[u]);
            agg.generated += um[u].generated;
            agg.delivered += um[u].delivered;
            agg.dropped += um[u].dropped;
            agg.queued += um[u].queued;
            all_lat.insert(all_lat.end(), latencies[u].begin(), latencies[u].end());
            all_bits += delivered_bits[u];
        }
        summarize(agg, all_lat, tti_ms, duration, all_bits);
        report.users = std::move(um);
        report.aggregate = agg;
        return report;
    }

    void write_timeseries_csv(std::ostream &out, const MetricsReport &report)
    {
        out << "tti,user,queued_bits,delivered_bits,dropped_packets\n";
        for (const auto &r : report.series)
            out << r.tti << ',' << r.user << ',' << r.queued_bits << ',' << r.delivered_bits << ',' << r.dropped_packets << '\n';
    }
}

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

#ifndef dpalab_netsim_H
#define dpalab_netsim_H

#include "dpalab/baselines.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dpalab
{
    struct UserSpec
    {
        int id = 0;
        double sin_theta = 0.0;
        double demand_bps = 60e6;
        double latency_bound_s = 1e-3;
        int packet_bits = 12000;
    };

    enum class TrafficModel
    {
        fluid, // constant bit rate accumulated into packets
        frames // frame_rate bursts, each spread evenly over frame_spread_ttis
    };

    struct EmulationScenario
    {
        std::vector<UserSpec> users;
        ArchitectureKind architecture = ArchitectureKind::dpa;
        int num_ttis = 2000;
        double tti_s = 125e-6;
        int fov_groups = 10;
        double fov_deg = 120.0;
        double reference_snr_db = 25.0;
        std::uint64_t rng_seed = 1;

        // radio and scheduler knobs
        int num_antennas = 8;
        double bandwidth_hz = 400e6;
        int num_subcarriers = 256;
        int angle_bins = 64;
        int max_beams = 8;
        double fraction_floor = 0.04;
        double ema_factor = 0.1;
        double phy_cap_bps = 2.2e9;
        int phase_bits = 6;
        double delay_step_s = 0.1e-9;

        TrafficModel traffic = TrafficModel::fluid;
        double frame_rate_hz = 60.0;
        int frame_spread_ttis = 8;

        void validate() const;
        int latency_bound_ttis(const UserSpec &u) const;

        // 10 users x 60 Mbps, 1 ms bound, one user per 12 degree sector with seeded +/-3 degree jitter.
        static EmulationScenario table1(ArchitectureKind arch, std::uint64_t seed = 1);
    };

    struct Packet
    {
        int owner = 0;
        int size_bits = 0;
        int created_at = 0;
        std::optional<int> delivered_at;
        bool dropped = false;
    };

    // Packets created during TTI `tti`; a pure function of (scenario, tti).
    std::vector<Packet> generate_traffic(const EmulationScenario &scenario, int tti);

    // group index -> user indices; sector g spans [-fov/2 + g w, -fov/2 + (g + 1) w).
    std::vector<std::vector<int>> group_users(const std::vector<UserSpec> &users, int fov_groups, double fov_deg = 120.0);

    struct GroupShare
    {
        int group = 0;
        double fraction = 0.0;
        int first_subcarrier = 0;
        int num_subcarriers = 0;
    };

    struct Allocation
    {
        std::vector<GroupShare> shares; // ascending group index, contiguous disjoint bands
    };

    struct SchedulerParams
    {
        int max_beams = 8;
        double fraction_floor = 0.04;
        int num_subcarriers = 256;
    };

    // Picks up to max_beams backlogged groups with the largest rate / ema, then shares subcarriers
    // in proportion to backlog with a floor.
    Allocation pf_schedule(const std::vector<double> &backlog_bits, const std::vector<double> &rates,
                           const std::vector<double> &ema_throughput, const SchedulerParams &params);

    // Per-user bits deliverable this TTI for an allocation. `group_dirs` holds each group's beam direction.
    std::vector<double> capacity(ArchitectureKind arch, const Allocation &alloc, const std::vector<UserSpec> &users,
                                 const std::vector<std::vector<int>> &groups, const std::vector<double> &group_dirs,
                                 const std::vector<double> &user_backlog, const EmulationScenario &scenario);

    struct UserMetrics
    {
        int id = 0;
        long generated = 0;
        long delivered = 0;
        long dropped = 0;
        long queued = 0;
        double loss = 0.0;
        double latency_median_ms = 0.0;
        double latency_p99_ms = 0.0;
        double latency_worst_ms = 0.0;
        double throughput_bps = 0.0;
    };

    struct TimeSeriesRow
    {
        int tti = 0;
        int user = 0;
        long queued_bits = 0;
        long delivered_bits = 0;
        int dropped_packets = 0;
    };

    struct MetricsReport
    {
        std::string architecture;
        std::vector<UserMetrics> users;
        UserMetrics aggregate;
        std::vector<TimeSeriesRow> series;
    };

    MetricsReport run_emulation(const EmulationScenario &scenario);

    void write_timeseries_csv(std::ostream &out, const MetricsReport &report);
}

#endif

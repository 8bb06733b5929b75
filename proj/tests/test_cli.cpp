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

#include "doctest.h"

#include "dpalab/cli.hpp"
#include "dpalab/closedform.hpp"
#include "dpalab/io.hpp"

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
using namespace dpalab;
namespace fs = std::filesystem;

namespace
{
    struct Run
    {
        int code;
        std::string out, err;
    };

    Run run(std::vector<std::string> args)
    {
        args.insert(args.begin(), "dpalab");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    fs::path scratch(const std::string &name)
    {
        const fs::path p = fs::temp_directory_path() / ("dpalab_test_" + name);
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}

TEST_CASE("plan json round trip")
{
    BeamPlan p = BeamPlan::from_fractions({-0.2, 0.5}, {0.3, 0.7}, 400e6);
    p.beams[1].width = 0.1;
    const BeamPlan q = plan_from_json(plan_to_json(p));
    REQUIRE(q.beams.size() == 2);
    CHECK(q.beams[0].sin_theta == p.beams[0].sin_theta);
    CHECK(q.beams[1].f_high_hz == p.beams[1].f_high_hz);
    CHECK_FALSE(q.beams[0].width.has_value());
    CHECK(*q.beams[1].width == 0.1);
    CHECK_THROWS_AS(plan_from_json("{\"beams\": 3}"), Error);
    CHECK_THROWS_AS(plan_from_json("not json"), Error);
}

TEST_CASE("weights csv round trip")
{
    const DelayPhaseWeights w = two_beam_weights(0.37, 400e6, 16);
    std::stringstream ss;
    write_weights_csv(ss, w);
    const DelayPhaseWeights r = read_weights_csv(ss);
    REQUIRE(r.size() == 16);
    for (int n = 0; n < 16; ++n)
    {
        CHECK(r.delays[n] == doctest::Approx(w.delays[n]).scale(1e-9));
        CHECK(r.phases[n] == doctest::Approx(w.phases[n]));
    }
    std::stringstream bad("antenna,delay_ns,phase_deg,quantized\n0,abc,1,0\n");
    CHECK_THROWS_AS(read_weights_csv(bad), Error);
}

TEST_CASE("scenario json round trip")
{
    EmulationScenario sc = EmulationScenario::table1(ArchitectureKind::split_antenna, 4);
    sc.traffic = TrafficModel::frames;
    const EmulationScenario r = scenario_from_json(scenario_to_json(sc));
    CHECK(r.architecture == ArchitectureKind::split_antenna);
    CHECK(r.traffic == TrafficModel::frames);
    REQUIRE(r.users.size() == 10);
    CHECK(r.users[3].sin_theta == sc.users[3].sin_theta);
    CHECK(scenario_from_json("{\"preset\":\"table1\"}").users.size() == 10);
    CHECK(scenario_from_json("{\"users\":[]}").users.empty());
    CHECK_THROWS_AS(scenario_from_json("{\"traffic\":\"bursty\"}"), Error);
}

TEST_CASE("weights subcommand: closed form two-beam and both methods")
{
    const fs::path dir = scratch("weights");
    const double s0 = std::sin(20.0 * pi / 180.0);
    const fs::path plan = dir / "plan.json";
    {
        std::ofstream f(plan);
        f << plan_to_json(BeamPlan::equal_split({-s0, s0}, 400e6));
    }
    Run r = run({"weights", "--plan", plan.string(), "--method", "closedform", "--out", dir.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(dir / "weights.csv");
    const DelayPhaseWeights w = read_weights_csv(in);
    const DelayPhaseWeights tb = two_beam_weights(s0, 400e6, 16);
    const double shift = tb.delays[0] - w.delays[0];
    for (int n = 0; n < 16; ++n)
    {
        CHECK(w.delays[n] + shift == doctest::Approx(tb.delays[n]).scale(1e-9));
        CHECK(std::abs(std::remainder(w.phases[n] - tb.phases[n], two_pi)) < 1e-9);
    }

    r = run({"weights", "--plan", plan.string(), "--method", "both", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "weights_fsda.csv"));
    CHECK(fs::exists(dir / "weights_closedform.csv"));
    CHECK(slurp(dir / "weights_diff.csv").rfind("antenna,delay_diff_ns,phase_diff_deg", 0) == 0);

    r = run({"weights", "--directions", "0", "--method", "closedform", "--out", dir.string()});
    REQUIRE(r.code == 0);
    std::ifstream b(dir / "weights.csv");
    for (double t : read_weights_csv(b).delays)
        CHECK(t == 0.0);
}

TEST_CASE("weights subcommand: five-beam plan at 32 antennas has 32 rows")
{
    const fs::path dir = scratch("five");
    Run r = run({"weights", "--directions", "-50,-10,15,30,55", "--fractions", "0.15,0.25,0.2,0.25,0.15", "--antennas",
                 "32", "--method", "both", "--out", dir.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(dir / "weights_fsda.csv");
    CHECK(read_weights_csv(in).size() == 32);
}

TEST_CASE("pattern subcommand writes a re-parseable heatmap")
{
    const fs::path dir = scratch("pattern");
    Run r = run({"pattern", "--directions", "20", "--arch", "tdma", "--out", dir.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(dir / "pattern.csv");
    const FrequencySpaceImage img = read_image_csv(in, 16);
    CHECK(img.values.rows() == 256);
    CHECK(img.values.cols() == 64);

    r = run({"pattern", "--arch", "ttd", "--out", dir.string()});
    CHECK(r.code == 0);
    r = run({"pattern", "--directions", "-20,20", "--out", dir.string()});
    CHECK(r.code == 0);
}

TEST_CASE("benchmark subcommand")
{
    const fs::path dir = scratch("bench");
    Run r = run({"benchmark", "--kind", "delay_range", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "benchmark_delay_range.csv").size() > 10);
    r = run({"benchmark", "--kind", "nope", "--out", dir.string()});
    CHECK(r.code != 0);
    CHECK(json::parse(r.err).contains("error"));
}

TEST_CASE("emulate subcommand is deterministic")
{
    const fs::path d1 = scratch("emu1"), d2 = scratch("emu2");
    REQUIRE(run({"emulate", "--all", "--ttis", "200", "--out", d1.string()}).code == 0);
    REQUIRE(run({"emulate", "--all", "--ttis", "200", "--out", d2.string()}).code == 0);
    for (const char *f : {"comparison.csv", "metrics_dpa.json", "timeseries_tdma.csv", "metrics_ttd.json"})
        CHECK(slurp(d1 / f) == slurp(d2 / f));
    const std::string cmp = slurp(d1 / "comparison.csv");
    CHECK(std::count(cmp.begin(), cmp.end(), '\n') == 5);
    const json m = json::parse(slurp(d1 / "metrics_dpa.json"));
    CHECK(m.at("aggregate").contains("packet_loss_fraction"));

    const fs::path sc = d1 / "empty.json";
    {
        std::ofstream f(sc);
        f << "{\"users\": []}";
    }
    REQUIRE(run({"emulate", "--scenario", sc.string(), "--out", d1.string()}).code == 0);
    CHECK(json::parse(slurp(d1 / "metrics_dpa.json")).at("users").empty());
}

TEST_CASE("validate subcommand")
{
    const fs::path dir = scratch("validate");
    Run r = run({"validate", "--out", dir.string()});
    CAPTURE(r.out);
    CHECK(r.code == 0);
    CHECK(json::parse(slurp(dir / "validation.json")).at("all_pass") == true);

    r = run({"validate", "--antennas", "2", "--angle-bins", "16", "--out", dir.string()});
    CAPTURE(r.out);
    CHECK(r.code == 0);

    r = run({"validate", "--flip-delay-sign", "--out", dir.string()});
    CHECK(r.code != 0);
    const json rep = json::parse(slurp(dir / "validation.json"));
    bool pointing_failed = false;
    for (const auto &c : rep.at("checks"))
        if (c.at("name") == "two_beam_pointing")
            pointing_failed = c.at("pass") == false;
    CHECK(pointing_failed);
}

TEST_CASE("errors are reported as json on stderr")
{
    Run r = run({"weights", "--plan", "/nonexistent/plan.json"});
    CHECK(r.code != 0);
    const json e = json::parse(r.err);
    CHECK(e.at("error") == "io_error");

    r = run({"weights", "--antennas", "1", "--directions", "0"});
    CHECK(r.code != 0);
    CHECK(json::parse(r.err).at("error") == "invalid_config");

    r = run({});
    CHECK(r.code != 0);
    CHECK(json::parse(r.err).contains("message"));
}

TEST_CASE("output directory falls back to the environment")
{
    const fs::path dir = scratch("env");
    setenv(output_dir_env, dir.c_str(), 1);
    const Run r = run({"benchmark", "--kind", "delay_range"});
    unsetenv(output_dir_env);
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "benchmark_delay_range.csv"));
}

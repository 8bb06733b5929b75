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

#ifndef dpalab_io_H
#define dpalab_io_H

#include "dpalab/netsim.hpp"

#include <iosfwd>
#include <string>

namespace dpalab
{
    // {"beams":[{"sin_theta":0.34,"f_low_hz":-2.0e8,"f_high_hz":0.0,"width":0.2}]}; "width" is optional.
    BeamPlan plan_from_json(const std::string &text);
    std::string plan_to_json(const BeamPlan &plan);

    // Columns antenna,delay_ns,phase_deg,quantized.
    void write_weights_csv(std::ostream &out, const DelayPhaseWeights &weights);
    DelayPhaseWeights read_weights_csv(std::istream &in);

    // All keys optional; "preset":"table1" fills the ten-user scenario before explicit users apply.
    EmulationScenario scenario_from_json(const std::string &text);
    std::string scenario_to_json(const EmulationScenario &scenario);

    std::string metrics_to_json(const MetricsReport &report);
}

#endif

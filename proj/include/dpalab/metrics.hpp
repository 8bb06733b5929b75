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

#ifndef dpalab_metrics_H
#define dpalab_metrics_H

#include "dpalab/fsda.hpp"

#include <vector>

namespace dpalab
{
    // Angle bin with the largest |G| in frequency row m (smallest index on ties).
    int argmax_angle(const FrequencySpaceImage &image, int m);

    // Index of the beam whose band holds frequency f, or -1.
    int owning_beam(const BeamPlan &plan, double f);

    struct PointingStats
    {
        int in_band_bins = 0;
        int correct_bins = 0;
        double fraction() const { return in_band_bins ? static_cast<double>(correct_bins) / in_band_bins : 0.0; }
    };

    // In-band rows whose argmax lies within `tolerance_bins` angle bins of the owning beam (circular distance).
    PointingStats pointing_accuracy(const FrequencySpaceImage &image, const BeamPlan &plan, const ArrayConfig &config,
                                    double tolerance_bins = 1.0);

    // Share of in-band rows on which two images have the same argmax bin.
    double argmax_agreement(const FrequencySpaceImage &a, const FrequencySpaceImage &b, const BeamPlan &plan,
                            const ArrayConfig &config, int tolerance_bins = 0);

    // 10 log10(mean |G|^2 inside desired cells / mean |G|^2 outside).
    double in_out_ratio_db(const FrequencySpaceImage &image, const FrequencySpaceImage &desired);

    // Per beam, power-mean SNR over its in-band bins evaluated exactly at its direction.
    std::vector<double> beam_snr_db(const DelayPhaseWeights &weights, const BeamPlan &plan, const ArrayConfig &config,
                                    double reference_snr_db);

    // Same, for a precomputed image; the direction is the nearest angle bin.
    std::vector<double> beam_snr_db(const FrequencySpaceImage &image, const BeamPlan &plan, const ArrayConfig &config,
                                    double reference_snr_db);

    double mean(const std::vector<double> &v);
}

#endif

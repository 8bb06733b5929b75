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

#ifndef dpalab_cli_H
#define dpalab_cli_H

#include "dpalab/array_core.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dpalab
{
    // Environment variable naming the default output directory.
    inline constexpr const char *output_dir_env = "DPALAB_OUT_DIR";

    struct ValidationCheck
    {
        std::string name;
        bool pass = false;
        double measured = 0.0;
        double tolerance = 0.0;
    };

    // Property suite behind the `validate` subcommand.
    std::vector<ValidationCheck> run_validation(const ArrayConfig &config);

    // Entry point for the command-line tool; returns the process exit code.
    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif

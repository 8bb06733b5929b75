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

#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace dpalab::detail
{
    namespace
    {
        // FFTW planning is not thread-safe; execution on fresh arrays is.
        // Plans are created once per shape on an aligned scratch buffer and reused
        // through the new-array execute interface.
        struct PlanCache
        {
            std::mutex lock;
            std::map<std::tuple<int, int, int>, fftw_plan> plans;

            ~PlanCache()
            {
                for (auto &entry : plans)
                    fftw_destroy_plan(entry.second);
            }

            fftw_plan get(int n, int howmany, int sign)
            {
                std::lock_guard<std::mutex> guard(lock);
                auto key = std::make_tuple(n, howmany, sign);
                auto it = plans.find(key);
                if (it != plans.end())
                    return it->second;
                auto *buf = fftw_alloc_complex(static_cast<std::size_t>(n) * howmany);
                int dims[1] = {n};
                fftw_plan p = fftw_plan_many_dft(1, dims, howmany, buf, nullptr, 1, n, buf, nullptr, 1, n,
                                                 sign, FFTW_ESTIMATE);
                fftw_free(buf);
                plans.emplace(key, p);
                return p;
            }
        };

        PlanCache &cache()
        {
            static PlanCache instance;
            return instance;
        }
    }

    void fft_batch(std::complex<double> *data, int n, int howmany, FftDirection dir)
    {
        if (n <= 0 || howmany <= 0)
            return;
        const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan p = cache().get(n, howmany, sign);

        const std::size_t total = static_cast<std::size_t>(n) * howmany;
        auto *buf = fftw_alloc_complex(total);
        std::memcpy(buf, data, total * sizeof(fftw_complex));
        fftw_execute_dft(p, buf, buf);
        std::memcpy(static_cast<void *>(data), buf, total * sizeof(fftw_complex));
        fftw_free(buf);
    }
}

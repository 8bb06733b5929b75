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

#ifndef dpalab_fft_H
#define dpalab_fft_H

#include <complex>

namespace dpalab::detail
{
    enum class FftDirection
    {
        forward,  // sum x[k] exp(-j 2 pi k m / n)
        backward  // sum x[k] exp(+j 2 pi k m / n)
    };

    // In-place unnormalized DFT of `howmany` contiguous length-n sequences.
    void fft_batch(std::complex<double> *data, int n, int howmany, FftDirection dir);
}

#endif

// SPDX-License-Identifier: Apache-2.0
//
// cpsync: cyclic-prefix symbol timing estimation for OFDM
// Copyright (C) 2026 The cpsync Authors
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

#ifndef CPSYNC_SPECTRAL_HPP
#define CPSYNC_SPECTRAL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cpsync {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Frequency-domain vector of N bins, one per subcarrier.
class SpectrumVector {
public:
    SpectrumVector() = default;
    explicit SpectrumVector(CVector bins);

    std::size_t size() const noexcept { return bins_.size(); }
    const CVector& bins() const noexcept { return bins_; }
    const cplx& operator[](std::size_t k) const { return bins_[k]; }

    friend bool operator==(const SpectrumVector&, const SpectrumVector&) = default;

private:
    CVector bins_;
};

bool is_power_of_two(std::size_t n) noexcept;

// Forward transform is unscaled, the inverse carries the 1/N.
// Power-of-two sizes take the radix-2 path, anything else is summed directly.

SpectrumVector dft(std::span<const cplx> x, std::size_t n);
inline SpectrumVector dft(std::span<const cplx> x) { return dft(x, x.size()); }

CVector idft(const SpectrumVector& spectrum);

/// Direct O(N^2) summation, any N. sign = -1 forward, +1 inverse; no scaling.
CVector direct_dft(std::span<const cplx> x, int sign);

} // namespace cpsync

#endif

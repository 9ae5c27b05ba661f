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

#include "cpsync/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cpsync {

namespace {

void require_finite(std::span<const cplx> x)
{
    for (const auto& v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("spectral: non-finite sample");
}

// Iterative in-place radix-2 Cooley-Tukey. Twiddles are evaluated directly
// rather than by recurrence so the error does not grow with N.
void radix2(CVector& a, int sign)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    CVector twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                         static_cast<double>(n));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx u = a[start + k];
                const cplx v = a[start + k + half] * twiddle[k * stride];
                a[start + k] = u + v;
                a[start + k + half] = u - v;
            }
        }
    }
}

CVector transform(std::span<const cplx> x, int sign)
{
    if (is_power_of_two(x.size())) {
        CVector a(x.begin(), x.end());
        radix2(a, sign);
        return a;
    }
    return direct_dft(x, sign);
}

} // namespace

SpectrumVector::SpectrumVector(CVector bins) : bins_(std::move(bins))
{
    require_finite(bins_);
}

bool is_power_of_two(std::size_t n) noexcept
{
    return n != 0 && (n & (n - 1)) == 0;
}

CVector direct_dft(std::span<const cplx> x, int sign)
{
    const std::size_t n = x.size();
    CVector out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        for (std::size_t i = 0; i < n; ++i) {
            // reduce k*i mod n first so the angle stays in [0, 2pi)
            const auto r = static_cast<double>((k * i) % n);
            acc += x[i] * std::polar(1.0, sign * 2.0 * std::numbers::pi * r / static_cast<double>(n));
        }
        out[k] = acc;
    }
    return out;
}

SpectrumVector dft(std::span<const cplx> x, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("dft: N must be positive");
    if (x.size() != n)
        throw std::invalid_argument("dft: input length " + std::to_string(x.size()) +
                                    " does not match N=" + std::to_string(n));
    require_finite(x);
    return SpectrumVector(transform(x, -1));
}

CVector idft(const SpectrumVector& spectrum)
{
    const std::size_t n = spectrum.size();
    if (n == 0)
        throw std::invalid_argument("idft: empty spectrum");
    CVector x = transform(spectrum.bins(), +1);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : x)
        v *= scale;
    return x;
}

} // namespace cpsync

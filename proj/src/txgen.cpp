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

#include "cpsync/txgen.hpp"

#include "cpsync/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cpsync {

std::string_view to_string(Constellation c) noexcept
{
    switch (c) {
    case Constellation::QPSK:
        return "qpsk";
    case Constellation::QAM16:
        return "qam16";
    }
    return "?";
}

int bits_per_symbol(Constellation c) noexcept
{
    return c == Constellation::QPSK ? 2 : 4;
}

void OfdmParams::validate() const
{
    if (n_subcarriers < 2)
        throw std::invalid_argument("n_subcarriers: must be at least 2");
    if (cp_len == 0 || cp_len >= n_subcarriers)
        throw std::invalid_argument("cp_len: must satisfy 0 < cp_len < n_subcarriers (" +
                                    std::to_string(n_subcarriers) + ")");
    if (symbols_per_frame == 0)
        throw std::invalid_argument("symbols_per_frame: must be at least 1");
}

void SampleStream::validate() const
{
    if (branches.empty())
        throw std::invalid_argument("stream: no receive branches");
    for (const auto& b : branches) {
        if (b.size() != branches.front().size())
            throw std::invalid_argument("stream: branches differ in length");
        for (const auto& v : b)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("stream: non-finite sample");
    }
}

namespace {

double gray_pam4(std::uint8_t hi, std::uint8_t lo)
{
    // 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
    const double level = hi ? 3.0 : -3.0;
    return lo ? level / 3.0 : level;
}

} // namespace

CVector map_bits(std::span<const std::uint8_t> bits, Constellation constellation)
{
    const auto bps = static_cast<std::size_t>(bits_per_symbol(constellation));
    if (bits.size() % bps != 0)
        throw std::invalid_argument("map_bits: " + std::to_string(bits.size()) +
                                    " bits is not a multiple of " + std::to_string(bps));
    CVector out;
    out.reserve(bits.size() / bps);
    for (std::size_t i = 0; i < bits.size(); i += bps) {
        if (constellation == Constellation::QPSK) {
            const double re = bits[i] ? -kQpskScale : kQpskScale;
            const double im = bits[i + 1] ? -kQpskScale : kQpskScale;
            out.emplace_back(re, im);
        } else {
            out.emplace_back(gray_pam4(bits[i], bits[i + 1]) * kQam16Scale,
                             gray_pam4(bits[i + 2], bits[i + 3]) * kQam16Scale);
        }
    }
    return out;
}

CVector ofdm_symbol(const SpectrumVector& data, const OfdmParams& params)
{
    if (data.size() != params.n_subcarriers)
        throw std::invalid_argument("ofdm_symbol: data length " + std::to_string(data.size()) +
                                    " does not match N=" + std::to_string(params.n_subcarriers));
    return idft(data);
}

CVector add_cp(std::span<const cplx> symbol, std::size_t cp_len)
{
    if (cp_len == 0 || cp_len > symbol.size())
        throw std::invalid_argument("add_cp: cp_len " + std::to_string(cp_len) +
                                    " outside (0, " + std::to_string(symbol.size()) + "]");
    CVector out;
    out.reserve(symbol.size() + cp_len);
    out.insert(out.end(), symbol.end() - static_cast<std::ptrdiff_t>(cp_len), symbol.end());
    out.insert(out.end(), symbol.begin(), symbol.end());
    return out;
}

std::vector<std::size_t> symbol_starts(const OfdmParams& params)
{
    std::vector<std::size_t> starts(params.symbols_per_frame);
    for (std::size_t m = 0; m < starts.size(); ++m)
        starts[m] = params.n_subcarriers + m * params.symbol_len();
    return starts;
}

SampleStream build_frame(const OfdmParams& params, std::uint64_t seed)
{
    params.validate();
    const std::size_t n = params.n_subcarriers;
    const auto bps = static_cast<std::size_t>(bits_per_symbol(params.constellation));
    const double gain = std::sqrt(static_cast<double>(n));

    Rng rng(derive_seed(seed, "txgen.bits"));
    std::vector<std::uint8_t> bits(n * bps);

    CVector buffer(n, cplx{});
    buffer.reserve(2 * n + params.symbols_per_frame * params.symbol_len());
    for (std::size_t m = 0; m < params.symbols_per_frame; ++m) {
        for (auto& b : bits)
            b = static_cast<std::uint8_t>(rng.bits() >> 63);
        CVector time = ofdm_symbol(SpectrumVector(map_bits(bits, params.constellation)), params);
        for (auto& v : time)
            v *= gain;
        const CVector with_cp = add_cp(time, params.cp_len);
        buffer.insert(buffer.end(), with_cp.begin(), with_cp.end());
    }
    buffer.insert(buffer.end(), n, cplx{});

    SampleStream stream;
    stream.branches.push_back(std::move(buffer));
    stream.sample_origin = static_cast<std::ptrdiff_t>(n);
    stream.active_begin = n;
    stream.active_length = params.symbols_per_frame * params.symbol_len();
    return stream;
}

} // namespace cpsync

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

#include "cpsync/channel.hpp"

#include "cpsync/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cpsync {

double CfoParams::doppler_hz() const
{
    return doppler_frequency(velocity_mps, carrier_hz);
}

void CfoParams::validate() const
{
    if (!std::isfinite(epsilon))
        throw std::invalid_argument("cfo.epsilon: must be finite");
    if (!(carrier_hz > 0.0))
        throw std::invalid_argument("cfo.carrier_hz: must be positive");
    if (!(velocity_mps >= 0.0))
        throw std::invalid_argument("cfo.velocity_mps: must be non-negative");
}

void ChannelScenario::validate(std::size_t n_fft) const
{
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
        throw std::invalid_argument("snr_db: must be a number or +inf");
    if (static_cast<std::size_t>(std::abs(sto)) >= n_fft)
        throw std::invalid_argument("sto: |" + std::to_string(sto) + "| must be below N=" +
                                    std::to_string(n_fft));
    for (const auto& h : cir_taps)
        if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
            throw std::invalid_argument("cir_taps: non-finite tap");
    if (rx_branches == 0)
        throw std::invalid_argument("rx_branches: must be at least 1");
    if (cfo)
        cfo->validate();
}

CVector cir_fixture()
{
    return {kCirFixture.begin(), kCirFixture.end()};
}

SampleStream apply_sto(SampleStream stream, int delta)
{
    const std::ptrdiff_t origin = stream.sample_origin - delta;
    if (origin < 0 || origin >= static_cast<std::ptrdiff_t>(stream.size()))
        throw std::invalid_argument("apply_sto: offset " + std::to_string(delta) +
                                    " moves the origin outside the buffer");
    stream.sample_origin = origin;
    return stream;
}

SampleStream apply_cir(SampleStream stream, std::span<const cplx> taps)
{
    if (taps.empty())
        throw std::invalid_argument("apply_cir: empty tap list");
    for (auto& branch : stream.branches) {
        CVector out(branch.size(), cplx{});
        for (std::size_t n = 0; n < branch.size(); ++n) {
            cplx acc{};
            const std::size_t k_max = std::min(taps.size(), n + 1);
            for (std::size_t k = 0; k < k_max; ++k)
                acc += taps[k] * branch[n - k];
            out[n] = acc;
        }
        branch = std::move(out);
    }
    return stream;
}

CVector random_cir(std::size_t n_taps, std::uint64_t seed, bool normalize)
{
    if (n_taps == 0)
        throw std::invalid_argument("random_cir: n_taps must be at least 1");
    Rng rng(derive_seed(seed, "channel.cir"));
    CVector taps(n_taps);
    for (auto& h : taps)
        h = rng.complex_gaussian(1.0);
    if (normalize) {
        const double scale = 1.0 / std::sqrt(tap_energy(taps));
        for (auto& h : taps)
            h *= scale;
    }
    return taps;
}

double tap_energy(std::span<const cplx> taps) noexcept
{
    double e = 0.0;
    for (const auto& h : taps)
        e += std::norm(h);
    return e;
}

double active_power(const SampleStream& stream)
{
    if (stream.active_length == 0 || stream.branches.empty())
        return 0.0;
    if (stream.active_begin + stream.active_length > stream.size())
        throw std::invalid_argument("stream: active span exceeds buffer");
    double total = 0.0;
    for (const auto& b : stream.branches)
        for (std::size_t i = 0; i < stream.active_length; ++i)
            total += std::norm(b[stream.active_begin + i]);
    return total / static_cast<double>(stream.active_length * stream.branches.size());
}

SampleStream add_awgn(SampleStream stream, double snr_db, std::uint64_t seed)
{
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
        throw std::invalid_argument("add_awgn: snr_db must be a number or +inf");
    if (snr_db == kNoiselessSnr)
        return stream;
    const double variance = active_power(stream) / std::pow(10.0, snr_db / 10.0);
    for (std::size_t l = 0; l < stream.branches.size(); ++l) {
        Rng rng(derive_seed(seed, "channel.awgn", l));
        for (auto& v : stream.branches[l])
            v += rng.complex_gaussian(variance);
    }
    return stream;
}

SampleStream apply_cfo(SampleStream stream, double epsilon, std::size_t n_fft)
{
    if (!std::isfinite(epsilon))
        throw std::invalid_argument("apply_cfo: epsilon must be finite");
    if (n_fft == 0)
        throw std::invalid_argument("apply_cfo: N must be positive");
    if (epsilon == 0.0)
        return stream;
    for (auto& branch : stream.branches)
        for (std::size_t n = 0; n < branch.size(); ++n) {
            const double cycles = epsilon * static_cast<double>(n) / static_cast<double>(n_fft);
            // drop whole turns before the trig call
            const double phase = 2.0 * std::numbers::pi * (cycles - std::floor(cycles));
            branch[n] *= std::polar(1.0, phase);
        }
    return stream;
}

double doppler_frequency(double velocity_mps, double carrier_hz)
{
    if (!(velocity_mps >= 0.0))
        throw std::invalid_argument("doppler_frequency: velocity must be non-negative");
    if (!(carrier_hz > 0.0))
        throw std::invalid_argument("doppler_frequency: carrier must be positive");
    return velocity_mps * carrier_hz / kSpeedOfLight;
}

SampleStream with_branches(SampleStream stream, std::size_t n_branches)
{
    if (n_branches == 0)
        throw std::invalid_argument("with_branches: at least one branch required");
    if (stream.branches.empty())
        throw std::invalid_argument("with_branches: empty stream");
    stream.branches.resize(1);
    stream.branches.resize(n_branches, stream.branches.front());
    return stream;
}

} // namespace cpsync

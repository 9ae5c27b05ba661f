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

#ifndef CPSYNC_CHANNEL_HPP
#define CPSYNC_CHANNEL_HPP

#include "cpsync/spectral.hpp"
#include "cpsync/txgen.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>

namespace cpsync {

inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s, exact SI value

/// snr_db value that disables noise.
inline constexpr double kNoiselessSnr = std::numeric_limits<double>::infinity();

struct CfoParams {
    double epsilon = 0.0;      ///< cycles per N samples
    double carrier_hz = 1e9;
    double velocity_mps = 0.0;

    double doppler_hz() const;
    void validate() const;
};

struct ChannelScenario {
    double snr_db = kNoiselessSnr; ///< per-sample Es/N0 at the receiver
    CVector cir_taps;              ///< empty means ideal channel
    int sto = 0;                   ///< delta, samples
    std::optional<CfoParams> cfo;
    std::size_t rx_branches = 1;

    /// Checks |sto| < n_fft, finite taps, L >= 1.
    void validate(std::size_t n_fft) const;
};

/// Ten-tap Rayleigh channel realization used for the fixed-channel runs.
inline constexpr std::array<cplx, 10> kCirFixture = {{
    {-0.2338, 0.1770},
    {0.1573, -0.0179},
    {0.1352, 0.1641},
    {-0.1318, -0.2919},
    {-0.1715, 0.3104},
    {0.5049, -0.1209},
    {0.2021, -0.6263},
    {0.0621, 0.1324},
    {0.1568, -0.0362},
    {0.0113, -0.0004},
}};

CVector cir_fixture();

/// Timing offset. For delta > 0 the symbol begins delta samples after the
/// receiver's nominal start (sample_origin moves back by delta); samples
/// are not touched. Throws if the new origin leaves the buffer.
SampleStream apply_sto(SampleStream stream, int delta);

/// Linear convolution per branch, truncated to the input length.
SampleStream apply_cir(SampleStream stream, std::span<const cplx> taps);

/// Taps (g_re + j g_im)/sqrt(2), g ~ N(0,1); optionally scaled to unit energy.
CVector random_cir(std::size_t n_taps, std::uint64_t seed, bool normalize);

/// Mean |h|^2 summed over taps.
double tap_energy(std::span<const cplx> taps) noexcept;

/// Mean power over the active span, averaged across branches.
double active_power(const SampleStream& stream);

/// Circular complex Gaussian noise at sigma^2 = P_active / 10^(snr_db/10),
/// drawn independently per branch. snr_db = +inf leaves the stream unchanged.
SampleStream add_awgn(SampleStream stream, double snr_db, std::uint64_t seed);

/// Multiplies buffer sample n by exp(j 2 pi epsilon n / n_fft).
SampleStream apply_cfo(SampleStream stream, double epsilon, std::size_t n_fft);

/// f_d = v f_c / c.
double doppler_frequency(double velocity_mps, double carrier_hz);

/// Copies branch 0 into L identical branches.
SampleStream with_branches(SampleStream stream, std::size_t n_branches);

} // namespace cpsync

#endif

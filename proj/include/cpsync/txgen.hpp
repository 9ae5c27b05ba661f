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

#ifndef CPSYNC_TXGEN_HPP
#define CPSYNC_TXGEN_HPP

#include "cpsync/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cpsync {

enum class Constellation { QPSK, QAM16 };

std::string_view to_string(Constellation c) noexcept;
int bits_per_symbol(Constellation c) noexcept;

struct OfdmParams {
    std::size_t n_subcarriers = 128; ///< IDFT size N, also the CP copy stride
    std::size_t cp_len = 32;         ///< N_G
    Constellation constellation = Constellation::QPSK;
    std::size_t symbols_per_frame = 4;

    std::size_t symbol_len() const noexcept { return n_subcarriers + cp_len; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Received (or transmitted) samples, one buffer per receive branch.
///
/// sample_origin is where the receiver believes the first CP sample of
/// symbol 0 sits. [active_begin, active_begin + active_length) is the
/// non-guard span actually occupied by the frame; it does not move with
/// timing offsets.
struct SampleStream {
    std::vector<CVector> branches;
    std::ptrdiff_t sample_origin = 0;
    std::size_t active_begin = 0;
    std::size_t active_length = 0;

    std::size_t size() const noexcept { return branches.empty() ? 0 : branches.front().size(); }
    std::size_t n_branches() const noexcept { return branches.size(); }

    /// Throws std::invalid_argument on ragged or non-finite buffers.
    void validate() const;

    friend bool operator==(const SampleStream&, const SampleStream&) = default;
};

// Gray mappings. QPSK: first bit selects the sign of I, second of Q, 0 -> +.
// QAM16: bit pairs (b0 b1) for I and (b2 b3) for Q, 00 -> -3, 01 -> -1,
// 11 -> +1, 10 -> +3. Both scaled to unit average power.
inline constexpr double kQpskScale = 0.70710678118654752440; // 1/sqrt(2)
inline constexpr double kQam16Scale = 0.31622776601683793320; // 1/sqrt(10)

/// bits holds one bit per element (0 or 1).
CVector map_bits(std::span<const std::uint8_t> bits, Constellation constellation);

/// One OFDM symbol in time: idft(data), length N.
CVector ofdm_symbol(const SpectrumVector& data, const OfdmParams& params);

/// Prepends the last cp_len samples of the symbol.
CVector add_cp(std::span<const cplx> symbol, std::size_t cp_len);

/// M CP-extended symbols back to back, N zero samples of guard on each side,
/// time samples scaled by sqrt(N) so the frame carries unit mean power.
/// Single branch; a pure function of (params, seed).
SampleStream build_frame(const OfdmParams& params, std::uint64_t seed);

/// Absolute start index of each symbol's CP within a frame built by build_frame.
std::vector<std::size_t> symbol_starts(const OfdmParams& params);

} // namespace cpsync

#endif

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

#ifndef CPSYNC_HARNESS_HPP
#define CPSYNC_HARNESS_HPP

#include "cpsync/channel.hpp"
#include "cpsync/sync.hpp"
#include "cpsync/txgen.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cpsync {

enum class ChannelMode { Awgn, RayleighFixture, RayleighRandom };

std::string_view to_string(ChannelMode m) noexcept;
std::optional<ChannelMode> parse_channel_mode(std::string_view name) noexcept;

/// Taps per draw in RayleighRandom mode.
inline constexpr std::size_t kRandomCirTaps = 10;

struct Scenario {
    std::string label;
    OfdmParams ofdm;
    ChannelMode mode = ChannelMode::Awgn;
    ChannelScenario channel;          ///< sto is ignored, trials take theirs from sto_cycle
    std::vector<int> sto_cycle = {3, -3, 2, -2};
    std::vector<Method> methods = {kAllMethods.begin(), kAllMethods.end()};
    std::optional<int> search_half_width; ///< defaults to 2 N_G

    int half_width() const noexcept
    {
        return search_half_width.value_or(static_cast<int>(2 * ofdm.cp_len));
    }

    /// Throws std::invalid_argument naming the inconsistent field.
    void validate() const;
};

/// Scenario with the label "snr<S>_cp<G>_<channel>"; fixture taps are filled in.
Scenario make_scenario(double snr_db, std::size_t cp_len, ChannelMode mode,
                       std::size_t n_subcarriers = 128);

/// {10 dB, 2 dB} x {CP 32, CP 16} x {AWGN, AWGN + fixture CIR}.
std::vector<Scenario> paper_scenarios();

struct TrialResult {
    int true_sto = 0;
    std::map<Method, int> estimates;
    std::map<Method, MetricTrace> traces;
    std::uint64_t seed = 0;

    friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct MethodStats {
    double exact_hit_rate = 0.0;
    double within_1_rate = 0.0;
    double mean_abs_error = 0.0;
    double mean_squared_error = 0.0;
    std::map<int, std::size_t> error_histogram; ///< estimate - true -> count

    friend bool operator==(const MethodStats&, const MethodStats&) = default;
};

struct ScenarioStats {
    std::size_t n_trials = 0;
    std::map<Method, MethodStats> per_method;

    friend bool operator==(const ScenarioStats&, const ScenarioStats&) = default;
};

/// Sub-seeds: derive_seed(seed, "trial.frame" | "trial.cir" | "trial.noise").
/// Pipeline: frame -> branches -> CIR -> STO -> CFO -> AWGN -> estimators.
TrialResult run_trial(const Scenario& scenario, int true_sto, std::uint64_t seed);

/// Seed of trial i: derive_seed(master_seed, scenario.label, i).
std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view label, std::size_t index);

/// Trial i uses sto_cycle[i % size]. Deterministic per master_seed.
ScenarioStats run_monte_carlo(const Scenario& scenario, std::size_t n_trials,
                              std::uint64_t master_seed);

ScenarioStats aggregate(std::span<const TrialResult> results, std::span<const Method> methods);

struct FrequencyPoint {
    std::size_t bin = 0;
    double normalized_frequency = 0.0; ///< bin / n_points, cycles per sample
    double magnitude_db = 0.0;
    double phase_rad = 0.0; ///< in (-pi, pi]
};

/// Zero-padded DFT of the taps.
std::vector<FrequencyPoint> freq_response(std::span<const cplx> taps, std::size_t n_points);

} // namespace cpsync

#endif

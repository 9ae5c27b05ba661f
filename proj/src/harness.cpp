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

#include "cpsync/harness.hpp"

#include "cpsync/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cpsync {

std::string_view to_string(ChannelMode m) noexcept
{
    switch (m) {
    case ChannelMode::Awgn:
        return "awgn";
    case ChannelMode::RayleighFixture:
        return "rayleigh-fixture";
    case ChannelMode::RayleighRandom:
        return "rayleigh-random";
    }
    return "?";
}

std::optional<ChannelMode> parse_channel_mode(std::string_view name) noexcept
{
    for (auto m : {ChannelMode::Awgn, ChannelMode::RayleighFixture, ChannelMode::RayleighRandom})
        if (to_string(m) == name)
            return m;
    return std::nullopt;
}

void Scenario::validate() const
{
    ofdm.validate();
    channel.validate(ofdm.n_subcarriers);
    if (sto_cycle.empty())
        throw std::invalid_argument("sto: at least one offset required");
    if (methods.empty())
        throw std::invalid_argument("method: at least one method required");
    const int half = half_width();
    if (half < 0)
        throw std::invalid_argument("search_half_width: must be non-negative");
    for (int d : sto_cycle) {
        if (static_cast<std::size_t>(std::abs(d)) >= ofdm.n_subcarriers)
            throw std::invalid_argument("sto: |" + std::to_string(d) + "| must be below N=" +
                                        std::to_string(ofdm.n_subcarriers));
        if (std::abs(d) > half)
            throw std::invalid_argument("sto: " + std::to_string(d) +
                                        " lies outside the search range +-" + std::to_string(half));
    }
    if (mode == ChannelMode::RayleighFixture && channel.cir_taps.empty())
        throw std::invalid_argument("channel: fixture mode without taps");
    if (mode == ChannelMode::Awgn && !channel.cir_taps.empty())
        throw std::invalid_argument("channel: awgn mode carries taps");
}

namespace {

std::string format_snr(double snr_db)
{
    if (snr_db == kNoiselessSnr)
        return "inf";
    std::ostringstream os;
    os << snr_db;
    return os.str();
}

} // namespace

Scenario make_scenario(double snr_db, std::size_t cp_len, ChannelMode mode, std::size_t n_subcarriers)
{
    Scenario s;
    s.ofdm.n_subcarriers = n_subcarriers;
    s.ofdm.cp_len = cp_len;
    s.mode = mode;
    s.channel.snr_db = snr_db;
    if (mode == ChannelMode::RayleighFixture)
        s.channel.cir_taps = cir_fixture();
    s.label = "snr" + format_snr(snr_db) + "_cp" + std::to_string(cp_len) + "_" +
              std::string(to_string(mode));
    return s;
}

std::vector<Scenario> paper_scenarios()
{
    std::vector<Scenario> out;
    for (double snr : {10.0, 2.0})
        for (std::size_t cp : {32u, 16u})
            for (auto mode : {ChannelMode::Awgn, ChannelMode::RayleighFixture})
                out.push_back(make_scenario(snr, cp, mode));
    return out;
}

TrialResult run_trial(const Scenario& scenario, int true_sto, std::uint64_t seed)
{
    scenario.validate();
    const auto& ofdm = scenario.ofdm;

    SampleStream stream = build_frame(ofdm, derive_seed(seed, "trial.frame"));
    stream = with_branches(std::move(stream), scenario.channel.rx_branches);

    switch (scenario.mode) {
    case ChannelMode::Awgn:
        break;
    case ChannelMode::RayleighFixture:
        stream = apply_cir(std::move(stream), scenario.channel.cir_taps);
        break;
    case ChannelMode::RayleighRandom:
        stream = apply_cir(std::move(stream),
                           random_cir(kRandomCirTaps, derive_seed(seed, "trial.cir"), false));
        break;
    }
    stream = apply_sto(std::move(stream), true_sto);
    if (scenario.channel.cfo)
        stream = apply_cfo(std::move(stream), scenario.channel.cfo->epsilon, ofdm.n_subcarriers);
    stream = add_awgn(std::move(stream), scenario.channel.snr_db, derive_seed(seed, "trial.noise"));

    TrialResult result;
    result.true_sto = true_sto;
    result.seed = seed;
    const int half = scenario.half_width();
    for (Method m : scenario.methods) {
        EstimatorConfig cfg = default_estimator_config(stream, ofdm, m);
        cfg.search_min = std::max(cfg.search_min, -half);
        cfg.search_max = std::min(cfg.search_max, half);
        MetricTrace trace = estimate_sto(stream, cfg);
        result.estimates[m] = trace.argopt;
        result.traces[m] = std::move(trace);
    }
    return result;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view label, std::size_t index)
{
    return derive_seed(master_seed, label, index);
}

ScenarioStats aggregate(std::span<const TrialResult> results, std::span<const Method> methods)
{
    ScenarioStats stats;
    stats.n_trials = results.size();
    if (results.empty())
        return stats;
    const auto n = static_cast<double>(results.size());
    for (Method m : methods) {
        std::size_t exact = 0;
        std::size_t within = 0;
        // integer sums keep the result independent of trial order
        long long abs_sum = 0;
        long long sq_sum = 0;
        MethodStats ms;
        for (const auto& r : results) {
            const auto it = r.estimates.find(m);
            if (it == r.estimates.end())
                throw std::invalid_argument("aggregate: trial lacks method " +
                                            std::string(to_string(m)));
            const int err = it->second - r.true_sto;
            exact += err == 0;
            within += std::abs(err) <= 1;
            abs_sum += std::abs(err);
            sq_sum += static_cast<long long>(err) * err;
            ++ms.error_histogram[err];
        }
        ms.exact_hit_rate = static_cast<double>(exact) / n;
        ms.within_1_rate = static_cast<double>(within) / n;
        ms.mean_abs_error = static_cast<double>(abs_sum) / n;
        ms.mean_squared_error = static_cast<double>(sq_sum) / n;
        stats.per_method[m] = std::move(ms);
    }
    return stats;
}

ScenarioStats run_monte_carlo(const Scenario& scenario, std::size_t n_trials, std::uint64_t master_seed)
{
    if (n_trials == 0)
        throw std::invalid_argument("trials: must be at least 1");
    scenario.validate();
    std::vector<TrialResult> results;
    results.reserve(n_trials);
    for (std::size_t i = 0; i < n_trials; ++i) {
        const int sto = scenario.sto_cycle[i % scenario.sto_cycle.size()];
        TrialResult r = run_trial(scenario, sto, trial_seed(master_seed, scenario.label, i));
        r.traces.clear();
        results.push_back(std::move(r));
    }
    return aggregate(results, scenario.methods);
}

std::vector<FrequencyPoint> freq_response(std::span<const cplx> taps, std::size_t n_points)
{
    if (taps.empty())
        throw std::invalid_argument("freq_response: empty tap list");
    if (n_points < taps.size())
        throw std::invalid_argument("freq_response: n_points " + std::to_string(n_points) +
                                    " is below the tap count " + std::to_string(taps.size()));
    CVector padded(n_points, cplx{});
    std::copy(taps.begin(), taps.end(), padded.begin());
    const SpectrumVector h = dft(padded);

    std::vector<FrequencyPoint> out(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        double phase = std::arg(h[k]);
        if (phase <= -std::numbers::pi)
            phase = std::numbers::pi;
        out[k] = {k, static_cast<double>(k) / static_cast<double>(n_points),
                  20.0 * std::log10(std::abs(h[k])), phase};
    }
    return out;
}

} // namespace cpsync

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

#ifndef CPSYNC_SYNC_HPP
#define CPSYNC_SYNC_HPP

#include "cpsync/txgen.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace cpsync {

/// Cyclic-prefix timing metrics.
///
///  - Cbm:          | sum_l sum_i y_l[n+i] conj(y_l[n+N+i]) |, maximized
///  - DbmMagnitude: sum_l sum_i (|y_l[n+i]| - |y_l[n+N+i]|)^2, minimized
///  - DbmLiteral:   sum_l sum_i |y_l[n+i] - conj(y_l[n+N+i])|^2, minimized
///
/// with i running over the N_G samples starting at the candidate offset.
/// DbmLiteral subtracts a conjugated copy and so does not vanish at the true
/// offset for complex signals; it is kept for comparison with DbmMagnitude.
enum class Method { Cbm, DbmMagnitude, DbmLiteral };

inline constexpr std::array<Method, 3> kAllMethods = {Method::Cbm, Method::DbmMagnitude,
                                                      Method::DbmLiteral};

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// True for the correlation metric (arg max), false for the difference metrics (arg min).
constexpr bool is_maximized(Method m) noexcept { return m == Method::Cbm; }

struct EstimatorConfig {
    Method method = Method::DbmMagnitude;
    int search_min = 0;
    int search_max = 0;
    std::ptrdiff_t n = 0;              ///< nominal symbol start in the buffer
    std::size_t symbols_averaged = 1;  ///< consecutive symbol periods summed into each value
    std::size_t n_fft = 128;           ///< N, stride between a sample and its CP copy
    std::size_t cp_len = 32;           ///< N_G, window length

    std::size_t symbol_len() const noexcept { return n_fft + cp_len; }

    /// Throws std::invalid_argument for a malformed range or a window that
    /// does not fit the stream.
    void validate(const SampleStream& stream) const;
};

/// Nominal start taken from the stream, all M symbols averaged, search range
/// +-2 N_G clamped so every window stays inside the buffer.
EstimatorConfig default_estimator_config(const SampleStream& stream, const OfdmParams& params,
                                         Method method);

struct MetricTrace {
    Method method = Method::DbmMagnitude;
    std::vector<int> offsets;
    std::vector<double> values;
    int argopt = 0;
    double opt_value = 0.0;

    friend bool operator==(const MetricTrace&, const MetricTrace&) = default;
};

// Single-candidate evaluation.
double cbm_metric(const SampleStream& stream, const EstimatorConfig& cfg, int delta);
double dbm_metric(const SampleStream& stream, const EstimatorConfig& cfg, int delta);
double metric(const SampleStream& stream, const EstimatorConfig& cfg, int delta);

/// Evaluates the configured metric over [search_min, search_max] and picks
/// the arg max (Cbm) or arg min (Dbm*). Ties go to the smallest |delta|, then
/// to the smaller delta.
MetricTrace estimate_sto(const SampleStream& stream, const EstimatorConfig& cfg);

/// Index of the preferred entry under the rule above.
std::size_t select_optimum(const std::vector<int>& offsets, const std::vector<double>& values,
                           bool maximize);

} // namespace cpsync

#endif

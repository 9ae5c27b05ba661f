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

#include "cpsync/sync.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cpsync {

std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::Cbm:
        return "cbm";
    case Method::DbmMagnitude:
        return "dbm-mag";
    case Method::DbmLiteral:
        return "dbm-lit";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept
{
    for (Method m : kAllMethods)
        if (to_string(m) == name)
            return m;
    return std::nullopt;
}

void EstimatorConfig::validate(const SampleStream& stream) const
{
    if (search_min > 0 || search_max < 0)
        throw std::invalid_argument("estimator: search range [" + std::to_string(search_min) + ", " +
                                    std::to_string(search_max) + "] must contain 0");
    if (symbols_averaged == 0)
        throw std::invalid_argument("estimator: symbols_averaged must be at least 1");
    if (cp_len == 0 || cp_len > n_fft)
        throw std::invalid_argument("estimator: cp_len must satisfy 0 < cp_len <= n_fft");
    if (stream.branches.empty())
        throw std::invalid_argument("estimator: stream has no branches");
    const std::ptrdiff_t first = n + search_min;
    const std::ptrdiff_t last = n + search_max +
                                static_cast<std::ptrdiff_t>((symbols_averaged - 1) * symbol_len() +
                                                            n_fft + cp_len);
    if (first < 0 || last > static_cast<std::ptrdiff_t>(stream.size()))
        throw std::invalid_argument("estimator: insufficient samples, window [" +
                                    std::to_string(first) + ", " + std::to_string(last) +
                                    ") exceeds buffer of " + std::to_string(stream.size()));
}

EstimatorConfig default_estimator_config(const SampleStream& stream, const OfdmParams& params,
                                         Method method)
{
    params.validate();
    EstimatorConfig cfg;
    cfg.method = method;
    cfg.n = stream.sample_origin;
    cfg.n_fft = params.n_subcarriers;
    cfg.cp_len = params.cp_len;
    cfg.symbols_averaged = params.symbols_per_frame;

    const auto reach = static_cast<std::ptrdiff_t>((cfg.symbols_averaged - 1) * cfg.symbol_len() +
                                                   cfg.n_fft + cfg.cp_len);
    const auto half = static_cast<std::ptrdiff_t>(2 * params.cp_len);
    const auto len = static_cast<std::ptrdiff_t>(stream.size());
    cfg.search_min = static_cast<int>(-std::min(half, cfg.n));
    cfg.search_max = static_cast<int>(std::clamp(len - reach - cfg.n, std::ptrdiff_t{0}, half));
    return cfg;
}

namespace {

void require_in_range(const EstimatorConfig& cfg, int delta)
{
    if (delta < cfg.search_min || delta > cfg.search_max)
        throw std::invalid_argument("metric: offset " + std::to_string(delta) +
                                    " outside search range");
}

// Sample pair (y[j], y[j+N]) for every branch and averaged symbol, j taken
// relative to the candidate's window start.
template <typename Visit>
void for_each_pair(const SampleStream& stream, const EstimatorConfig& cfg, int delta, Visit&& visit)
{
    for (const auto& y : stream.branches)
        for (std::size_t k = 0; k < cfg.symbols_averaged; ++k) {
            const auto start =
                static_cast<std::size_t>(cfg.n + delta) + k * cfg.symbol_len();
            for (std::size_t i = 0; i < cfg.cp_len; ++i)
                visit(y[start + i], y[start + i + cfg.n_fft]);
        }
}

double dbm_term(Method m, const cplx& a, const cplx& b)
{
    if (m == Method::DbmLiteral)
        return std::norm(a - std::conj(b));
    const double d = std::abs(a) - std::abs(b);
    return d * d;
}

} // namespace

double cbm_metric(const SampleStream& stream, const EstimatorConfig& cfg, int delta)
{
    cfg.validate(stream);
    require_in_range(cfg, delta);
    cplx acc{};
    for_each_pair(stream, cfg, delta, [&](const cplx& a, const cplx& b) { acc += a * std::conj(b); });
    return std::abs(acc);
}

double dbm_metric(const SampleStream& stream, const EstimatorConfig& cfg, int delta)
{
    if (cfg.method == Method::Cbm)
        throw std::invalid_argument("dbm_metric: configured method is cbm");
    cfg.validate(stream);
    require_in_range(cfg, delta);
    double acc = 0.0;
    for_each_pair(stream, cfg, delta,
                  [&](const cplx& a, const cplx& b) { acc += dbm_term(cfg.method, a, b); });
    return acc;
}

double metric(const SampleStream& stream, const EstimatorConfig& cfg, int delta)
{
    return cfg.method == Method::Cbm ? cbm_metric(stream, cfg, delta)
                                     : dbm_metric(stream, cfg, delta);
}

std::size_t select_optimum(const std::vector<int>& offsets, const std::vector<double>& values,
                           bool maximize)
{
    if (offsets.empty() || offsets.size() != values.size())
        throw std::invalid_argument("select_optimum: empty or mismatched trace");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const bool better = maximize ? values[i] > values[best] : values[i] < values[best];
        if (better) {
            best = i;
        } else if (values[i] == values[best]) {
            const int a = std::abs(offsets[i]);
            const int b = std::abs(offsets[best]);
            if (a < b || (a == b && offsets[i] < offsets[best]))
                best = i;
        }
    }
    return best;
}

MetricTrace estimate_sto(const SampleStream& stream, const EstimatorConfig& cfg)
{
    cfg.validate(stream);

    // Per-position terms are computed once and shared by the N_G windows that
    // cover them; each window is then summed afresh, so there is no running
    // sum to drift.
    const auto span = static_cast<std::size_t>(cfg.search_max - cfg.search_min) + cfg.cp_len;
    const auto base = static_cast<std::size_t>(cfg.n + cfg.search_min);
    const std::size_t P = cfg.symbol_len();
    const std::size_t N = cfg.n_fft;

    MetricTrace trace;
    trace.method = cfg.method;
    const auto count = static_cast<std::size_t>(cfg.search_max - cfg.search_min + 1);
    trace.offsets.resize(count);
    trace.values.resize(count);

    if (cfg.method == Method::Cbm) {
        CVector terms(span, cplx{});
        for (const auto& y : stream.branches)
            for (std::size_t k = 0; k < cfg.symbols_averaged; ++k)
                for (std::size_t j = 0; j < span; ++j) {
                    const std::size_t p = base + k * P + j;
                    terms[j] += y[p] * std::conj(y[p + N]);
                }
        for (std::size_t c = 0; c < count; ++c) {
            cplx acc{};
            for (std::size_t i = 0; i < cfg.cp_len; ++i)
                acc += terms[c + i];
            trace.offsets[c] = cfg.search_min + static_cast<int>(c);
            trace.values[c] = std::abs(acc);
        }
    } else {
        std::vector<double> terms(span, 0.0);
        for (const auto& y : stream.branches)
            for (std::size_t k = 0; k < cfg.symbols_averaged; ++k)
                for (std::size_t j = 0; j < span; ++j) {
                    const std::size_t p = base + k * P + j;
                    terms[j] += dbm_term(cfg.method, y[p], y[p + N]);
                }
        for (std::size_t c = 0; c < count; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < cfg.cp_len; ++i)
                acc += terms[c + i];
            trace.offsets[c] = cfg.search_min + static_cast<int>(c);
            trace.values[c] = acc;
        }
    }

    const std::size_t best = select_optimum(trace.offsets, trace.values, is_maximized(cfg.method));
    trace.argopt = trace.offsets[best];
    trace.opt_value = trace.values[best];
    return trace;
}

} // namespace cpsync

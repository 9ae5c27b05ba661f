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

#ifndef CPSYNC_CLI_HPP
#define CPSYNC_CLI_HPP

#include "cpsync/harness.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpsync::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Bad flag value or combination; exit status 2.
class UsageError : public std::invalid_argument {
public:
    UsageError(std::string_view field, std::string_view message)
        : std::invalid_argument("--" + std::string(field) + ": " + std::string(message))
    {
    }
};

enum class Subcommand { Trace, Sweep, Response, Fixture };

/// Unset selectors fall back to the paper grid (sweep) or to 10 dB / CP 32 /
/// AWGN / delta = 3 (trace).
struct RunConfig {
    Subcommand subcommand = Subcommand::Sweep;
    std::optional<double> snr_db;
    std::optional<std::size_t> cp_len;
    std::optional<ChannelMode> channel;
    std::vector<Method> methods = {kAllMethods.begin(), kAllMethods.end()};
    std::vector<int> sto;
    std::size_t n_trials = 1000;
    std::uint64_t master_seed = kDefaultSeed;
    std::string output_path; ///< empty writes to the output stream
    std::size_t n_fft = 128;
    std::size_t symbols = 4;
    std::size_t branches = 1;
    std::optional<double> cfo_epsilon;
    std::size_t n_points = 256;
    CVector taps; ///< response only; empty selects the fixture
};

/// Throws UsageError naming the first offending flag.
void validate(const RunConfig& config);

/// Scenario grid selected by the config, validated.
std::vector<Scenario> scenarios_for(const RunConfig& config);

void cmd_trace(const RunConfig& config, std::ostream& out);
void cmd_sweep(const RunConfig& config, std::ostream& out);
void cmd_response(const RunConfig& config, std::ostream& out);
void cmd_fixture(std::ostream& out);

/// "inf", "+inf" and "none" disable noise.
std::optional<double> parse_snr(std::string_view text);

/// "a", "a+bj", "a-bj", "bj" (i accepted for j).
std::optional<cplx> parse_complex(std::string_view text);

/// Full command line, program name excluded. Returns the exit status:
/// 0 success, 2 usage or validation error, 1 runtime failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cpsync::cli

#endif

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

#include "cpsync/cli.hpp"

#include "cpsync/csv.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace cpsync::cli {

namespace {

bool parse_number(std::string_view text, double& v)
{
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

std::string join_ints(const std::vector<int>& values)
{
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(values[i]);
    }
    return s;
}

std::string method_column(Method m)
{
    switch (m) {
    case Method::Cbm:
        return "cbm_value";
    case Method::DbmMagnitude:
        return "dbm_mag_value";
    case Method::DbmLiteral:
        return "dbm_lit_value";
    }
    return "?";
}

// Single writer: either the named file or the caller's stream.
template <typename Body>
void with_output(const RunConfig& config, std::ostream& fallback, Body&& body)
{
    if (config.output_path.empty()) {
        body(fallback);
        return;
    }
    std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("cannot open '" + config.output_path + "' for writing");
    body(file);
    file.flush();
    if (!file)
        throw std::runtime_error("write to '" + config.output_path + "' failed");
}

} // namespace

std::optional<double> parse_snr(std::string_view text)
{
    if (text == "inf" || text == "+inf" || text == "none")
        return kNoiselessSnr;
    double v = 0.0;
    if (!parse_number(text, v) || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<cplx> parse_complex(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    const char last = text.back();
    if (last != 'j' && last != 'i') {
        double re = 0.0;
        if (!parse_number(text, re))
            return std::nullopt;
        return cplx{re, 0.0};
    }
    text.remove_suffix(1);
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size(); i-- > 1;) {
        if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    double re = 0.0;
    double im = 0.0;
    if (split == std::string_view::npos) {
        if (!parse_number(text, im))
            return std::nullopt;
        return cplx{0.0, im};
    }
    if (!parse_number(text.substr(0, split), re) || !parse_number(text.substr(split), im))
        return std::nullopt;
    return cplx{re, im};
}

void validate(const RunConfig& config)
{
    if (config.n_fft < 2)
        throw UsageError("n", "IDFT size must be at least 2");
    if (config.cp_len && (*config.cp_len == 0 || *config.cp_len >= config.n_fft))
        throw UsageError("cp", "CP length " + std::to_string(*config.cp_len) +
                                   " must lie in (0, " + std::to_string(config.n_fft) + ")");
    if (!config.cp_len && config.n_fft <= 32 && config.subcommand != Subcommand::Response &&
        config.subcommand != Subcommand::Fixture)
        throw UsageError("n", "IDFT size " + std::to_string(config.n_fft) +
                                  " cannot hold the default CP lengths; pass --cp");
    if (config.symbols == 0)
        throw UsageError("symbols", "must be at least 1");
    if (config.branches == 0)
        throw UsageError("branches", "must be at least 1");
    if (config.n_trials == 0)
        throw UsageError("trials", "must be at least 1");
    if (config.methods.empty())
        throw UsageError("method", "no method selected");
    if (config.cfo_epsilon && !std::isfinite(*config.cfo_epsilon))
        throw UsageError("cfo", "must be finite");
    if (config.subcommand == Subcommand::Trace && config.sto.size() > 1)
        throw UsageError("sto", "trace takes a single offset");
    for (int d : config.sto)
        if (static_cast<std::size_t>(std::abs(d)) >= config.n_fft)
            throw UsageError("sto", "|" + std::to_string(d) + "| must be below N=" +
                                        std::to_string(config.n_fft));
    if (config.subcommand == Subcommand::Response) {
        const std::size_t n_taps = config.taps.empty() ? kCirFixture.size() : config.taps.size();
        if (config.n_points < n_taps)
            throw UsageError("points", std::to_string(config.n_points) +
                                           " is below the tap count " + std::to_string(n_taps));
        for (const auto& h : config.taps)
            if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
                throw UsageError("taps", "non-finite tap");
    }
}

std::vector<Scenario> scenarios_for(const RunConfig& config)
{
    validate(config);
    const bool trace = config.subcommand == Subcommand::Trace;
    std::vector<double> snrs;
    std::vector<std::size_t> cps;
    std::vector<ChannelMode> modes;
    if (config.snr_db)
        snrs = {*config.snr_db};
    else
        snrs = trace ? std::vector<double>{10.0} : std::vector<double>{10.0, 2.0};
    if (config.cp_len)
        cps = {*config.cp_len};
    else
        cps = trace ? std::vector<std::size_t>{32} : std::vector<std::size_t>{32, 16};
    if (config.channel)
        modes = {*config.channel};
    else
        modes = trace ? std::vector<ChannelMode>{ChannelMode::Awgn}
                      : std::vector<ChannelMode>{ChannelMode::Awgn, ChannelMode::RayleighFixture};

    std::vector<Scenario> out;
    for (double snr : snrs)
        for (std::size_t cp : cps)
            for (ChannelMode mode : modes) {
                Scenario s = make_scenario(snr, cp, mode, config.n_fft);
                s.ofdm.symbols_per_frame = config.symbols;
                s.channel.rx_branches = config.branches;
                if (config.cfo_epsilon)
                    s.channel.cfo = CfoParams{*config.cfo_epsilon};
                s.methods = config.methods;
                if (!config.sto.empty())
                    s.sto_cycle = config.sto;
                else if (trace)
                    s.sto_cycle = {3};
                try {
                    s.validate();
                } catch (const std::invalid_argument& e) {
                    throw UsageError("sto", std::string(e.what()) + " (scenario " + s.label + ")");
                }
                out.push_back(std::move(s));
            }
    return out;
}

void cmd_trace(const RunConfig& config, std::ostream& out)
{
    const Scenario scenario = scenarios_for(config).front();
    const int sto = scenario.sto_cycle.front();
    const std::uint64_t seed = trial_seed(config.master_seed, scenario.label, 0);
    const TrialResult result = run_trial(scenario, sto, seed);

    std::ostringstream meta;
    meta << "scenario=" << scenario.label << " n=" << scenario.ofdm.n_subcarriers
         << " cp=" << scenario.ofdm.cp_len << " symbols=" << scenario.ofdm.symbols_per_frame
         << " branches=" << scenario.channel.rx_branches << " seed=" << config.master_seed
         << " trial_seed=" << seed << " true_sto=" << sto;
    for (Method m : scenario.methods)
        meta << " estimate_" << to_string(m) << '=' << result.estimates.at(m);

    with_output(config, out, [&](std::ostream& os) {
        CsvWriter csv(os);
        csv.comment("cpsync trace");
        csv.comment(meta.str());
        std::vector<std::string> header = {"offset"};
        std::vector<const MetricTrace*> columns;
        for (Method m : kAllMethods) {
            if (const auto it = result.traces.find(m); it != result.traces.end()) {
                header.push_back(method_column(m));
                columns.push_back(&it->second);
            }
        }
        csv.row(header);
        const auto& offsets = columns.front()->offsets;
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            std::vector<std::string> row = {std::to_string(offsets[i])};
            for (const auto* t : columns)
                row.push_back(format_double(t->values[i]));
            csv.row(row);
        }
    });
}

void cmd_sweep(const RunConfig& config, std::ostream& out)
{
    const std::vector<Scenario> grid = scenarios_for(config);
    std::vector<ScenarioStats> stats;
    stats.reserve(grid.size());
    for (const auto& s : grid)
        stats.push_back(run_monte_carlo(s, config.n_trials, config.master_seed));

    with_output(config, out, [&](std::ostream& os) {
        CsvWriter csv(os);
        csv.comment("cpsync sweep");
        csv.comment("seed=" + std::to_string(config.master_seed) + " n=" +
                    std::to_string(config.n_fft) + " symbols=" + std::to_string(config.symbols) +
                    " branches=" + std::to_string(config.branches) +
                    " sto=" + join_ints(grid.front().sto_cycle));
        csv.row({"snr_db", "cp_len", "channel", "method", "n_trials", "exact_hit_rate",
                 "within_1_rate", "mean_abs_error", "mean_squared_error"});
        for (std::size_t c = 0; c < grid.size(); ++c) {
            const auto& s = grid[c];
            for (Method m : s.methods) {
                const auto& ms = stats[c].per_method.at(m);
                csv.row({format_double(s.channel.snr_db), std::to_string(s.ofdm.cp_len),
                         std::string(to_string(s.mode)), std::string(to_string(m)),
                         std::to_string(stats[c].n_trials), format_double(ms.exact_hit_rate),
                         format_double(ms.within_1_rate), format_double(ms.mean_abs_error),
                         format_double(ms.mean_squared_error)});
            }
        }
    });
}

void cmd_response(const RunConfig& config, std::ostream& out)
{
    validate(config);
    const CVector taps = config.taps.empty() ? cir_fixture() : config.taps;
    const auto points = freq_response(taps, config.n_points);
    with_output(config, out, [&](std::ostream& os) {
        CsvWriter csv(os);
        csv.comment("cpsync response");
        csv.comment(std::string("taps=") + (config.taps.empty() ? "fixture" : "user") +
                    " n_taps=" + std::to_string(taps.size()) +
                    " n_points=" + std::to_string(config.n_points));
        csv.row({"normalized_frequency", "magnitude_db", "phase_rad"});
        for (const auto& p : points)
            csv.row({format_double(p.normalized_frequency), format_double(p.magnitude_db),
                     format_double(p.phase_rad)});
    });
}

void cmd_fixture(std::ostream& out)
{
    char line[64];
    for (const auto& h : kCirFixture) {
        std::snprintf(line, sizeof line, "%.4f %+.4fj\n", h.real(), h.imag());
        out << line;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cyclic-prefix symbol timing offset estimation for OFDM"};
    app.name("cpsync");
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    app.require_subcommand(1);

    std::string snr_text;
    std::size_t cp = 0;
    std::string channel_text;
    std::vector<std::string> method_text;
    std::vector<int> sto;
    std::vector<std::string> tap_text;
    std::optional<double> cfo;
    RunConfig config;

    auto* snr_opt = app.add_option("--snr-db", snr_text, "SNR in dB, or inf for no noise");
    auto* cp_opt = app.add_option("--cp", cp, "cyclic prefix length in samples");
    app.add_option("--channel", channel_text, "awgn | rayleigh-fixture | rayleigh-random");
    app.add_option("--sto", sto, "true offsets, comma separated")->delimiter(',');
    app.add_option("--trials", config.n_trials, "Monte Carlo trials per scenario");
    app.add_option("--seed", config.master_seed, "master seed");
    app.add_option("--out", config.output_path, "output file (default: standard output)");
    app.add_option("--method", method_text, "cbm | dbm-mag | dbm-lit | all, comma separated")
        ->delimiter(',');
    app.add_option("--n", config.n_fft, "IDFT size");
    app.add_option("--points", config.n_points, "frequency-response points");
    app.add_option("--symbols", config.symbols, "OFDM symbols per frame");
    app.add_option("--branches", config.branches, "receive branches");
    app.add_option("--cfo", cfo, "normalized carrier frequency offset");
    app.add_option("--taps", tap_text, "response taps, e.g. 1,0.5-0.5j")->delimiter(',');

    auto* trace_cmd = app.add_subcommand("trace", "metric traces for one realization")->fallthrough();
    auto* sweep_cmd = app.add_subcommand("sweep", "hit-rate statistics over the scenario grid")->fallthrough();
    auto* response_cmd = app.add_subcommand("response", "frequency response of a tap set")->fallthrough();
    auto* fixture_cmd = app.add_subcommand("fixture", "print the fixed channel taps")->fallthrough();

    std::vector<const char*> argv = {"cpsync"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (trace_cmd->parsed())
            config.subcommand = Subcommand::Trace;
        else if (sweep_cmd->parsed())
            config.subcommand = Subcommand::Sweep;
        else if (response_cmd->parsed())
            config.subcommand = Subcommand::Response;
        else if (fixture_cmd->parsed())
            config.subcommand = Subcommand::Fixture;

        if (snr_opt->count() > 0) {
            config.snr_db = parse_snr(snr_text);
            if (!config.snr_db)
                throw UsageError("snr-db", "'" + snr_text + "' is not a number or inf");
        }
        if (cp_opt->count() > 0)
            config.cp_len = cp;
        if (!channel_text.empty()) {
            config.channel = parse_channel_mode(channel_text);
            if (!config.channel)
                throw UsageError("channel", "unknown channel '" + channel_text + "'");
        }
        if (!method_text.empty()) {
            config.methods.clear();
            for (const auto& name : method_text) {
                if (name == "all") {
                    config.methods.assign(kAllMethods.begin(), kAllMethods.end());
                    break;
                }
                const auto m = parse_method(name);
                if (!m)
                    throw UsageError("method", "unknown method '" + name + "'");
                if (std::find(config.methods.begin(), config.methods.end(), *m) == config.methods.end())
                    config.methods.push_back(*m);
            }
        }
        config.sto = sto;
        config.cfo_epsilon = cfo;
        for (const auto& t : tap_text) {
            const auto h = parse_complex(t);
            if (!h)
                throw UsageError("taps", "cannot parse '" + t + "'");
            config.taps.push_back(*h);
        }
        validate(config);
        if (config.subcommand != Subcommand::Response && config.subcommand != Subcommand::Fixture)
            (void)scenarios_for(config);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        switch (config.subcommand) {
        case Subcommand::Trace:
            cmd_trace(config, out);
            break;
        case Subcommand::Sweep:
            cmd_sweep(config, out);
            break;
        case Subcommand::Response:
            cmd_response(config, out);
            break;
        case Subcommand::Fixture:
            cmd_fixture(out);
            break;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace cpsync::cli

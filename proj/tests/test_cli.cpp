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

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cpsync;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text, bool skip_comments = true)
{
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);)
        if (!skip_comments || line.rfind('#', 0) != 0)
            lines.push_back(line);
    return lines;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            f.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    f.push_back(cur);
    return f;
}

double number(const std::string& field)
{
    if (field == "inf")
        return INFINITY;
    if (field == "-inf")
        return -INFINITY;
    double v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    REQUIRE(res.ec == std::errc{});
    REQUIRE(res.ptr == field.data() + field.size());
    return v;
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("cpsync_test_" + name);
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("fixture listing")
    {
        const Outcome o = invoke({"fixture"});
        CHECK(o.status == 0);
        const auto lines = lines_of(o.out);
        REQUIRE(lines.size() == 10);
        CHECK(lines.front() == "-0.2338 +0.1770j");
        CHECK(lines.back() == "0.0113 -0.0004j");
        for (const auto& l : lines) {
            const auto h = cli::parse_complex(l.substr(0, l.find(' ')) + l.substr(l.find(' ') + 1));
            REQUIRE(h.has_value());
        }
    }

    TEST_CASE("noiseless trace")
    {
        const Outcome o = invoke({"trace", "--snr-db", "inf", "--sto=2"});
        REQUIRE(o.status == 0);
        const auto rows = lines_of(o.out);
        REQUIRE(rows.front() == "offset,cbm_value,dbm_mag_value,dbm_lit_value");
        CHECK(rows.size() - 1 == 129);
        double best_cbm = 0;
        std::vector<std::string> at2;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto f = split(rows[i]);
            REQUIRE(f.size() == 4);
            best_cbm = std::max(best_cbm, number(f[1]));
            if (f[0] == "2")
                at2 = f;
        }
        REQUIRE(at2.size() == 4);
        CHECK(number(at2[1]) == best_cbm);
        CHECK(number(at2[2]) == 0.0);
        CHECK(o.out.find("true_sto=2") != std::string::npos);
        CHECK(o.out.find("estimate_cbm=2") != std::string::npos);
    }

    TEST_CASE("trace method selection and CP length")
    {
        const Outcome o = invoke({"trace", "--method", "dbm-mag", "--cp", "16", "--sto=-3"});
        REQUIRE(o.status == 0);
        const auto rows = lines_of(o.out);
        CHECK(rows.front() == "offset,dbm_mag_value");
        CHECK(rows.size() - 1 == 65);
        CHECK(rows[1].rfind("-32,", 0) == 0);
    }

    TEST_CASE("trace and sweep files are byte-identical across runs")
    {
        const auto a = temp_path("trace_a.csv"), b = temp_path("trace_b.csv");
        REQUIRE(invoke({"trace", "--seed", "5", "--channel", "rayleigh-random", "--out", a.string()}).status == 0);
        REQUIRE(invoke({"trace", "--seed", "5", "--channel", "rayleigh-random", "--out", b.string()}).status == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK_FALSE(slurp(a).empty());

        const auto c = temp_path("sweep_a.csv"), d = temp_path("sweep_b.csv");
        REQUIRE(invoke({"sweep", "--trials", "10", "--out", c.string()}).status == 0);
        REQUIRE(invoke({"sweep", "--trials", "10", "--out", d.string()}).status == 0);
        CHECK(slurp(c) == slurp(d));
        for (const auto& p : {a, b, c, d})
            std::filesystem::remove(p);
    }

    TEST_CASE("default sweep covers the grid")
    {
        const Outcome o = invoke({"sweep", "--trials", "12"});
        REQUIRE(o.status == 0);
        const auto rows = lines_of(o.out);
        REQUIRE(rows.front() == "snr_db,cp_len,channel,method,n_trials,exact_hit_rate,within_1_rate,"
                                "mean_abs_error,mean_squared_error");
        CHECK(rows.size() - 1 == 24);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto f = split(rows[i]);
            REQUIRE(f.size() == 9);
            const double exact = number(f[5]), within = number(f[6]);
            CHECK(exact >= 0.0);
            CHECK(within <= 1.0);
            CHECK(within >= exact);
            CHECK(f[4] == "12");
            // round-trip formatting
            CHECK(format_double(number(f[7])) == f[7]);
        }
    }

    TEST_CASE("noiseless sweep")
    {
        const Outcome o = invoke({"sweep", "--snr-db", "inf", "--channel", "awgn", "--method",
                                  "dbm-mag", "--trials", "40"});
        REQUIRE(o.status == 0);
        const auto rows = lines_of(o.out);
        CHECK(rows.size() - 1 == 2);
        for (std::size_t i = 1; i < rows.size(); ++i)
            CHECK(split(rows[i])[5] == "1");
    }

    TEST_CASE("response")
    {
        const Outcome unit = invoke({"response", "--taps", "1", "--points", "32"});
        REQUIRE(unit.status == 0);
        const auto rows = lines_of(unit.out);
        CHECK(rows.front() == "normalized_frequency,magnitude_db,phase_rad");
        CHECK(rows.size() - 1 == 32);
        for (std::size_t i = 1; i < rows.size(); ++i)
            CHECK(number(split(rows[i])[1]) == 0.0);

        const Outcome fixture = invoke({"response"});
        REQUIRE(fixture.status == 0);
        CHECK(lines_of(fixture.out).size() - 1 == 256);

        const Outcome user = invoke({"response", "--taps=0.5-0.25j,1e-1+2E-1i,-3j", "--points", "8"});
        CHECK(user.status == 0);
    }

    TEST_CASE("complex and SNR parsing")
    {
        CHECK(cli::parse_complex("1") == cplx(1, 0));
        CHECK(cli::parse_complex("-0.2338+0.1770j") == cplx(-0.2338, 0.1770));
        CHECK(cli::parse_complex("1e-3-2e+1j") == cplx(1e-3, -20));
        CHECK(cli::parse_complex("-2j") == cplx(0, -2));
        CHECK(cli::parse_complex("+4i") == cplx(0, 4));
        CHECK_FALSE(cli::parse_complex("abc").has_value());
        CHECK_FALSE(cli::parse_complex("").has_value());
        CHECK(cli::parse_snr("inf") == INFINITY);
        CHECK(cli::parse_snr("-3.5") == -3.5);
        CHECK_FALSE(cli::parse_snr("ten").has_value());
        CHECK_FALSE(cli::parse_snr("nan").has_value());
    }

    TEST_CASE("validation fails fast with status 2 and names the flag")
    {
        const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
            {{"sweep", "--cp", "0"}, "--cp"},
            {{"sweep", "--cp", "128"}, "--cp"},
            {{"trace", "--sto=3,4"}, "--sto"},
            {{"trace", "--sto=200"}, "--sto"},
            {{"trace", "--sto=70"}, "--sto"},
            {{"sweep", "--channel", "rician"}, "--channel"},
            {{"sweep", "--method", "mle"}, "--method"},
            {{"sweep", "--snr-db", "loud"}, "--snr-db"},
            {{"sweep", "--trials", "0"}, "--trials"},
            {{"response", "--points", "4"}, "--points"},
            {{"response", "--taps=1,zz"}, "--taps"},
            {{"trace", "--symbols", "0"}, "--symbols"},
        };
        for (const auto& [args, field] : cases) {
            const Outcome o = invoke(args);
            CHECK(o.status == 2);
            CHECK(o.out.empty());
            CHECK(o.err.find(field) != std::string::npos);
            CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);
        }
        CHECK(invoke({}).status == 2);
        CHECK(invoke({"sweep", "--bogus"}).status == 2);
    }

    TEST_CASE("unwritable output is a runtime failure")
    {
        const Outcome o = invoke({"response", "--out", "/nonexistent-dir/x.csv"});
        CHECK(o.status == 1);
        CHECK(o.err.find("error:") == 0);
    }

    TEST_CASE("config file, flags win")
    {
        const auto cfg = temp_path("config.ini");
        {
            std::ofstream f(cfg);
            f << "cp = 16\nsnr-db = inf\nsto = -2\n";
        }
        const Outcome from_file = invoke({"trace", "--config", cfg.string(), "--method", "dbm-mag"});
        REQUIRE(from_file.status == 0);
        CHECK(from_file.out.find("cp=16") != std::string::npos);
        CHECK(from_file.out.find("true_sto=-2") != std::string::npos);
        CHECK(from_file.out.find("estimate_dbm-mag=-2") != std::string::npos);

        const Outcome overridden =
            invoke({"trace", "--config", cfg.string(), "--cp", "32", "--method", "dbm-mag"});
        REQUIRE(overridden.status == 0);
        CHECK(overridden.out.find("cp=32") != std::string::npos);
        std::filesystem::remove(cfg);
    }

    TEST_CASE("csv escaping")
    {
        CHECK(csv_escape("plain") == "plain");
        CHECK(csv_escape("a,b") == "\"a,b\"");
        CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(-INFINITY) == "-inf");
    }
}

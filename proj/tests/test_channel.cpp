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

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace cpsync;

namespace {

SampleStream frame(std::uint64_t seed = 1, std::size_t symbols = 4)
{
    OfdmParams p;
    p.symbols_per_frame = symbols;
    return build_frame(p, seed);
}

} // namespace

TEST_SUITE("channel")
{
    TEST_CASE("apply_sto moves only the origin")
    {
        const SampleStream s = frame();
        CHECK(apply_sto(s, 0) == s);

        const SampleStream late = apply_sto(s, 3);
        CHECK(late.sample_origin == s.sample_origin - 3);
        CHECK(late.branches == s.branches);

        for (int a : {-7, 0, 5})
            for (int b : {-3, 2, 11})
                CHECK(apply_sto(apply_sto(s, a), b) == apply_sto(s, a + b));

        CHECK_THROWS_AS(apply_sto(s, 129), std::invalid_argument);
        CHECK_THROWS_AS(apply_sto(s, -static_cast<int>(s.size())), std::invalid_argument);
    }

    TEST_CASE("apply_cir with unit and shifted impulses")
    {
        const SampleStream s = frame(2);
        const CVector unit = {1};
        CHECK(apply_cir(s, unit) == s);

        const CVector delay = {0, 1};
        const SampleStream d = apply_cir(s, delay);
        CHECK(d.branches[0][0] == cplx{});
        for (std::size_t i = 1; i < s.size(); ++i)
            REQUIRE(d.branches[0][i] == s.branches[0][i - 1]);

        CHECK_THROWS_AS(apply_cir(s, CVector{}), std::invalid_argument);
    }

    TEST_CASE("apply_cir is linear convolution truncated to the input")
    {
        SampleStream s = oracle::random_stream(40, 2, 4);
        const CVector taps = {{0.5, 0.1}, {-0.2, 0.3}, {0.05, -0.7}};
        const SampleStream out = apply_cir(s, taps);
        for (std::size_t l = 0; l < 2; ++l)
            for (std::size_t n = 0; n < 40; ++n) {
                cplx want{};
                for (std::size_t k = 0; k < taps.size() && k <= n; ++k)
                    want += taps[k] * s.branches[l][n - k];
                CHECK(std::abs(out.branches[l][n] - want) < 1e-15);
            }
    }

    TEST_CASE("fixture taps")
    {
        const CVector h = cir_fixture();
        REQUIRE(h.size() == 10);
        CHECK(h.front() == cplx(-0.2338, 0.1770));
        CHECK(h.back() == cplx(0.0113, -0.0004));
        // exact sum of squares of the printed decimals
        CHECK(std::abs(tap_energy(h) - 1.13464787) < 1e-14);
    }

    TEST_CASE("random_cir")
    {
        CHECK(random_cir(10, 3, false) == random_cir(10, 3, false));
        CHECK_FALSE(random_cir(10, 3, false) == random_cir(10, 4, false));
        CHECK(std::abs(tap_energy(random_cir(10, 3, true)) - 1.0) < 1e-12);
        CHECK_THROWS_AS(random_cir(0, 3, false), std::invalid_argument);

        // Rayleigh mean for sigma^2 = 1/2 per component: sqrt(pi)/2
        const CVector many = random_cir(100000, 8, false);
        double mean_mag = 0;
        for (const auto& z : many)
            mean_mag += std::abs(z) / many.size();
        const double rayleigh_mean = std::sqrt(std::numbers::pi) / 2.0;
        CHECK(std::abs(mean_mag / rayleigh_mean - 1.0) < 0.01);
    }

    TEST_CASE("add_awgn reaches the target SNR")
    {
        // 10^6 active samples: one long "symbol"-free stream with unit power
        SampleStream s;
        s.branches.push_back(CVector(1'000'000, cplx{1.0, 0.0}));
        s.active_begin = 0;
        s.active_length = s.size();
        for (double snr : {2.0, 10.0, 30.0}) {
            const SampleStream noisy = add_awgn(s, snr, 77);
            double noise = 0;
            for (std::size_t i = 0; i < s.size(); ++i)
                noise += std::norm(noisy.branches[0][i] - s.branches[0][i]);
            noise /= static_cast<double>(s.size());
            const double measured = 10.0 * std::log10(1.0 / noise);
            CHECK(std::abs(measured - snr) < 0.1);
            if (snr == 10.0)
                CHECK(std::abs(noise - 0.1) < 0.001);
        }
    }

    TEST_CASE("add_awgn measures power on the active span")
    {
        const SampleStream s = frame(3, 40);
        const double p = active_power(s);
        CHECK(std::abs(p - 1.0) < 0.05);
        const SampleStream scaled = apply_cir(s, CVector{cplx{2.0, 0.0}});
        CHECK(std::abs(active_power(scaled) - 4 * p) < 1e-12);
    }

    TEST_CASE("add_awgn determinism, branches and the noiseless sentinel")
    {
        const SampleStream s = with_branches(frame(5), 2);
        CHECK(add_awgn(s, kNoiselessSnr, 1) == s);
        CHECK(add_awgn(s, 5.0, 9) == add_awgn(s, 5.0, 9));
        CHECK_FALSE(add_awgn(s, 5.0, 9) == add_awgn(s, 5.0, 10));
        const SampleStream n = add_awgn(s, 5.0, 9);
        CHECK(n.branches[0] != n.branches[1]);
        CHECK_THROWS_AS(add_awgn(s, std::nan(""), 1), std::invalid_argument);
    }

    TEST_CASE("apply_cfo")
    {
        const SampleStream s = frame(6);
        CHECK(apply_cfo(s, 0.0, 128) == s);

        const SampleStream r = apply_cfo(s, 0.37, 128);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double a = std::abs(s.branches[0][i]);
            const double b = std::abs(r.branches[0][i]);
            REQUIRE(std::abs(a - b) <= 1e-15 * std::max(a, 1e-300) + 1e-300);
        }

        // epsilon cycles per N samples: 0.25 over N = 4 is 22.5 degrees a sample,
        // a whole cycle per N is 90 degrees a sample
        SampleStream ones;
        ones.branches.push_back(CVector(8, cplx{1.0, 0.0}));
        const SampleStream q = apply_cfo(ones, 0.25, 4);
        const SampleStream full = apply_cfo(ones, 1.0, 4);
        const cplx quarter[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (std::size_t n = 0; n < 8; ++n) {
            CHECK(std::abs(q.branches[0][n] - std::polar(1.0, n * std::numbers::pi / 8)) < 1e-15);
            CHECK(std::abs(full.branches[0][n] - quarter[n % 4]) < 1e-15);
        }

        CHECK_THROWS_AS(apply_cfo(s, std::nan(""), 128), std::invalid_argument);
    }

    TEST_CASE("doppler frequency")
    {
        CHECK(doppler_frequency(0.0, 2.4e9) == 0.0);
        CHECK(doppler_frequency(299.792458, 1e9) == doctest::Approx(1000.0).epsilon(1e-15));
        CHECK(doppler_frequency(kSpeedOfLight, 5.8e9) == doctest::Approx(5.8e9).epsilon(1e-15));
        CHECK_THROWS_AS(doppler_frequency(-1.0, 1e9), std::invalid_argument);
        CHECK_THROWS_AS(doppler_frequency(1.0, 0.0), std::invalid_argument);

        CfoParams cfo{0.1, 2e9, 30.0};
        CHECK(cfo.doppler_hz() == doctest::Approx(200.138457));
        CHECK_NOTHROW(cfo.validate());
        cfo.velocity_mps = -2;
        CHECK_THROWS_AS(cfo.validate(), std::invalid_argument);
    }

    TEST_CASE("scenario validation")
    {
        ChannelScenario c;
        c.sto = 3;
        CHECK_NOTHROW(c.validate(128));
        c.sto = -128;
        CHECK_THROWS_AS(c.validate(128), std::invalid_argument);
        c.sto = 0;
        c.rx_branches = 0;
        CHECK_THROWS_AS(c.validate(128), std::invalid_argument);
        c.rx_branches = 1;
        c.cir_taps = {cplx{std::nan(""), 0}};
        CHECK_THROWS_AS(c.validate(128), std::invalid_argument);
    }

    TEST_CASE("with_branches copies branch 0")
    {
        const SampleStream s = with_branches(frame(), 3);
        CHECK(s.n_branches() == 3);
        CHECK(s.branches[2] == s.branches[0]);
        CHECK_THROWS_AS(with_branches(frame(), 0), std::invalid_argument);
    }
}

// SPDX-License-Identifier: Apache-2.0
//
// wavecopy: wavefront copying through programmable wireless environments
// Copyright (C) 2026 The wavecopy authors
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

#include "references.hpp"
#include "support.hpp"

#include "wavecopy/error.hpp"
#include "wavecopy/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace wcopy;
using namespace wcopy::testing;

namespace {

// Direct per-window evaluation of mean SSIM, no separable filtering.
double naive_ssim(const ImageU8& a, const ImageU8& b)
{
    double w[11][11], wsum = 0.0;
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j)
            wsum += w[i][j] = std::exp(-((i - 5) * (i - 5) + (j - 5) * (j - 5)) / (2 * 1.5 * 1.5));
    const double c1 = std::pow(0.01 * 255, 2), c2 = std::pow(0.03 * 255, 2);
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        int n = 0;
        for (int y = 5; y + 5 < a.height; ++y)
            for (int x = 5; x + 5 < a.width; ++x) {
                double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
                for (int i = 0; i < 11; ++i)
                    for (int j = 0; j < 11; ++j) {
                        const double p = a.pixel(y + i - 5, x + j - 5)[c], q = b.pixel(y + i - 5, x + j - 5)[c];
                        const double wt = w[i][j] / wsum;
                        mx += wt * p;
                        my += wt * q;
                        sxx += wt * p * p;
                        syy += wt * q * q;
                        sxy += wt * p * q;
                    }
                sxx -= mx * mx;
                syy -= my * my;
                sxy -= mx * my;
                acc += ((2 * mx * my + c1) * (2 * sxy + c2)) / ((mx * mx + my * my + c1) * (sxx + syy + c2));
                ++n;
            }
        total += acc / n;
    }
    return total / 3.0;
}

double oracle_quantile(std::vector<double> v, double q)
{
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(pos));
    const size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

} // namespace

TEST_CASE("psnr")
{
    ImageU8 a(16, 16, 100), b(16, 16, 101);
    CHECK(psnr(a, b) == doctest::Approx(20 * std::log10(255.0)).epsilon(1e-12));
    CHECK(psnr(a, b) == doctest::Approx(48.1308).epsilon(1e-5));
    CHECK(std::isinf(psnr(a, a)));
    CHECK(psnr(ImageU8(4, 4, 0), ImageU8(4, 4, 255)) == doctest::Approx(0.0));
    try {
        psnr(a, ImageU8(16, 15));
        FAIL("expected DimMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DimMismatch);
    }
}

TEST_CASE("psnr is symmetric")
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto [a, b] = noisy_pair(s, 40);
        CHECK(psnr(a, b) == psnr(b, a));
    }
}

TEST_CASE("ssim matches scikit-image")
{
    for (int i = 0; i < 20; ++i) {
        const auto [a, b] = noisy_pair(1000 + static_cast<std::uint64_t>(i), reference_amp(i));
        CAPTURE(i);
        CHECK(std::abs(ssim(a, b) - kSkimageSsim[static_cast<size_t>(i)]) <= 1e-6);
    }
}

TEST_CASE("ssim matches a direct window evaluation")
{
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto [a, b] = noisy_pair(s, 3 + 20 * static_cast<int>(s), 17, 23);
        CHECK(std::abs(ssim(a, b) - naive_ssim(a, b)) <= 1e-9);
    }
}

TEST_CASE("ssim properties")
{
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto [a, b] = noisy_pair(s, 60);
        CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(ssim(a, b) - ssim(b, a)) <= 1e-12);
    }
    ImageU8 checker(32, 32), inverted(32, 32);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
            for (int c = 0; c < 3; ++c) {
                checker.pixel(y, x)[c] = ((x / 2 + y / 2) % 2) ? 230 : 20;
                inverted.pixel(y, x)[c] = static_cast<std::uint8_t>(255 - checker.pixel(y, x)[c]);
            }
    CHECK(ssim(checker, inverted) < 0.0);
}

TEST_CASE("ssim errors")
{
    try {
        ssim(ImageU8(10, 20), ImageU8(10, 20));
        FAIL("expected TooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::TooSmall);
    }
    try {
        ssim(ImageU8(12, 12), ImageU8(12, 13));
        FAIL("expected DimMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DimMismatch);
    }
    CHECK(ssim(ImageU8(11, 11, 7), ImageU8(11, 11, 7)) == doctest::Approx(1.0));
}

TEST_CASE("field_fidelity")
{
    const std::vector<Complex> f{{1, 2}, {-0.5, 0.25}, {3, -1}};
    CHECK(field_fidelity(f, f) == doctest::Approx(1.0).epsilon(1e-15));
    std::vector<Complex> g;
    for (const auto& x : f)
        g.push_back(x * std::polar(2.5, 1.234));
    CHECK(field_fidelity(f, g) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(field_fidelity({{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}) == 0.0);
    try {
        field_fidelity(f, std::vector<Complex>(3));
        FAIL("expected ZeroField");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroField);
    }
    CHECK_THROWS_AS(field_fidelity(f, {{1, 0}}), Error);

    SplitMix64 rng(17);
    for (int t = 0; t < 500; ++t) {
        std::vector<Complex> a, b;
        for (int i = 0; i < 8; ++i) {
            a.emplace_back(rng.uniform() - 0.5, rng.uniform() - 0.5);
            b.emplace_back(rng.uniform() - 0.5, rng.uniform() - 0.5);
        }
        const double v = field_fidelity(a, b);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-15);
    }
}

TEST_CASE("latency budget")
{
    const auto base = latency_budget(LatencyBudget::motion_to_photon());
    CHECK(base.min_total_ms == 8.0);
    CHECK(base.max_total_ms == 39.0);
    CHECK(base.best_case_ok);
    CHECK_FALSE(base.guaranteed_ok);

    const auto net = latency_budget(LatencyBudget::motion_to_photon(true));
    CHECK(net.min_total_ms == 9.0);
    CHECK(net.max_total_ms == 59.0);

    const auto zero = latency_budget(LatencyBudget{{{"a", 0, 0}, {"b", 0, 0}}});
    CHECK(zero.min_total_ms == 0.0);
    CHECK(zero.max_total_ms == 0.0);
    CHECK(zero.best_case_ok);
    CHECK(zero.guaranteed_ok);
    CHECK_THROWS_AS(latency_budget(LatencyBudget{{{"bad", 5, 1}}}), Error);
}

TEST_CASE("summarize")
{
    const auto s = summarize({5, 1, 4, 2, 3});
    CHECK(s.min == 1);
    CHECK(s.q1 == 2);
    CHECK(s.median == 3);
    CHECK(s.q3 == 4);
    CHECK(s.max == 5);
    CHECK(s.count == 5);

    const auto one = summarize({2.5});
    CHECK((one.min == 2.5 && one.q1 == 2.5 && one.median == 2.5 && one.q3 == 2.5 && one.max == 2.5));

    const double inf = std::numeric_limits<double>::infinity();
    const auto with_inf = summarize({1, inf, 3});
    CHECK(with_inf.excluded_inf == 1);
    CHECK(with_inf.count == 2);
    CHECK(with_inf.median == 2);

    try {
        summarize({});
        FAIL("expected Empty");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Empty);
    }
}

TEST_CASE("summarize matches sorted interpolation and ignores order")
{
    SplitMix64 rng(23);
    for (int t = 0; t < 300; ++t) {
        std::vector<double> v(1 + rng.next() % 40);
        for (auto& x : v)
            x = 100 * rng.uniform() - 50;
        const auto s = summarize(v);
        CHECK(s.min == oracle_quantile(v, 0.0));
        CHECK(s.q1 == doctest::Approx(oracle_quantile(v, 0.25)).epsilon(1e-12));
        CHECK(s.median == doctest::Approx(oracle_quantile(v, 0.5)).epsilon(1e-12));
        CHECK(s.q3 == doctest::Approx(oracle_quantile(v, 0.75)).epsilon(1e-12));
        CHECK(s.max == oracle_quantile(v, 1.0));
        std::reverse(v.begin(), v.end());
        std::swap(v.front(), v[v.size() / 2]);
        const auto p = summarize(v);
        CHECK((p.min == s.min && p.q1 == s.q1 && p.median == s.median && p.q3 == s.q3 && p.max == s.max));
    }
}

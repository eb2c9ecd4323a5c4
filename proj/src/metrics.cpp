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

#include "wavecopy/metrics.hpp"

#include "wavecopy/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace wcopy {

namespace {

void require_same_dims(const ImageU8& a, const ImageU8& b)
{
    if (a.height != b.height || a.width != b.width || a.data.size() != b.data.size() ||
        a.data.size() != static_cast<size_t>(a.height) * a.width * 3)
        fail(Errc::DimMismatch, "images differ in size");
    if (a.height <= 0 || a.width <= 0)
        fail(Errc::DimMismatch, "empty image");
}

constexpr int kWin = 11;

std::array<double, kWin> gaussian_taps()
{
    std::array<double, kWin> w{};
    double s = 0.0;
    for (int i = 0; i < kWin; ++i) {
        const double x = i - kWin / 2;
        w[static_cast<size_t>(i)] = std::exp(-x * x / (2.0 * 1.5 * 1.5));
        s += w[static_cast<size_t>(i)];
    }
    for (auto& v : w)
        v /= s;
    return w;
}

// Separable weighted mean of `src` (h x w) over every full window; output (h-10) x (w-10).
std::vector<double> window_mean(const std::vector<double>& src, int h, int w, const std::array<double, kWin>& g)
{
    const int ow = w - kWin + 1, oh = h - kWin + 1;
    std::vector<double> tmp(static_cast<size_t>(h) * ow);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < ow; ++c) {
            double s = 0.0;
            for (int k = 0; k < kWin; ++k)
                s += g[static_cast<size_t>(k)] * src[static_cast<size_t>(r) * w + c + k];
            tmp[static_cast<size_t>(r) * ow + c] = s;
        }
    std::vector<double> out(static_cast<size_t>(oh) * ow);
    for (int r = 0; r < oh; ++r)
        for (int c = 0; c < ow; ++c) {
            double s = 0.0;
            for (int k = 0; k < kWin; ++k)
                s += g[static_cast<size_t>(k)] * tmp[static_cast<size_t>(r + k) * ow + c];
            out[static_cast<size_t>(r) * ow + c] = s;
        }
    return out;
}

} // namespace

double psnr(const ImageU8& a, const ImageU8& b)
{
    require_same_dims(a, b);
    double se = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
        se += d * d;
    }
    if (se == 0.0)
        return std::numeric_limits<double>::infinity();
    const double mse = se / static_cast<double>(a.data.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const ImageU8& a, const ImageU8& b)
{
    require_same_dims(a, b);
    if (a.height < kWin || a.width < kWin)
        fail(Errc::TooSmall, "SSIM needs images of at least 11x11 pixels");
    const auto g = gaussian_taps();
    const double c1 = (0.01 * 255.0) * (0.01 * 255.0), c2 = (0.03 * 255.0) * (0.03 * 255.0);
    const int h = a.height, w = a.width;
    const size_t n = static_cast<size_t>(h) * w;
    double total = 0.0;
    for (int ch = 0; ch < 3; ++ch) {
        std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
        for (size_t i = 0; i < n; ++i) {
            x[i] = a.data[i * 3 + static_cast<size_t>(ch)];
            y[i] = b.data[i * 3 + static_cast<size_t>(ch)];
            xx[i] = x[i] * x[i];
            yy[i] = y[i] * y[i];
            xy[i] = x[i] * y[i];
        }
        const auto mx = window_mean(x, h, w, g), my = window_mean(y, h, w, g);
        const auto mxx = window_mean(xx, h, w, g), myy = window_mean(yy, h, w, g), mxy = window_mean(xy, h, w, g);
        double acc = 0.0;
        for (size_t i = 0; i < mx.size(); ++i) {
            const double vx = mxx[i] - mx[i] * mx[i], vy = myy[i] - my[i] * my[i], cxy = mxy[i] - mx[i] * my[i];
            acc += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cxy + c2)) /
                   ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
        }
        total += acc / static_cast<double>(mx.size());
    }
    return total / 3.0;
}

double field_fidelity(const std::vector<Complex>& f, const std::vector<Complex>& g)
{
    if (f.size() != g.size() || f.empty())
        fail(Errc::DimMismatch, "field vectors must have equal, nonzero length");
    Complex inner{};
    double nf = 0.0, ng = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
        inner += std::conj(f[i]) * g[i];
        nf += std::norm(f[i]);
        ng += std::norm(g[i]);
    }
    if (nf == 0.0 || ng == 0.0)
        fail(Errc::ZeroField, "field fidelity of an all-zero field");
    return std::min(1.0, std::abs(inner) / (std::sqrt(nf) * std::sqrt(ng)));
}

LatencyBudget LatencyBudget::motion_to_photon(bool with_network)
{
    LatencyBudget b;
    b.components = {
        {"sensor", 1.0, 5.0},
        {"rendering", 4.0, 16.0},
        {"display", 2.0, 16.0},
        {"photon", 1.0, 2.0},
    };
    if (with_network)
        b.components.push_back({"network", 1.0, 20.0});
    return b;
}

LatencyVerdict latency_budget(const LatencyBudget& budget, double threshold_ms)
{
    LatencyVerdict v;
    for (const auto& c : budget.components) {
        if (!(c.min_ms >= 0.0) || !(c.min_ms <= c.max_ms))
            fail(Errc::Validation, "latency component '" + c.name + "' has an invalid range");
        v.min_total_ms += c.min_ms;
        v.max_total_ms += c.max_ms;
    }
    v.best_case_ok = v.min_total_ms <= threshold_ms;
    v.guaranteed_ok = v.max_total_ms <= threshold_ms;
    return v;
}

Summary summarize(const std::vector<double>& values)
{
    Summary s;
    std::vector<double> v;
    for (double x : values) {
        if (x == std::numeric_limits<double>::infinity())
            ++s.excluded_inf;
        else
            v.push_back(x);
    }
    if (v.empty())
        fail(Errc::Empty, "nothing to summarize");
    std::sort(v.begin(), v.end());
    auto q = [&](double p) {
        const double pos = p * static_cast<double>(v.size() - 1);
        const size_t lo = static_cast<size_t>(std::floor(pos));
        const size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    s.min = v.front();
    s.q1 = q(0.25);
    s.median = q(0.5);
    s.q3 = q(0.75);
    s.max = v.back();
    s.count = v.size();
    return s;
}

} // namespace wcopy

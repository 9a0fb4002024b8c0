// Copyright 2026 The glyphseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glyphseg/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace glyphseg {

void PreprocessConfig::validate() const {
    if (median_window < 1 || median_window % 2 == 0) {
        throw ConfigError("median_window must be odd and >= 1");
    }
    if (high_boost < 1.0) throw ConfigError("high_boost must be >= 1");
    if (normalized_width < 8 || normalized_height < 8) {
        throw ConfigError("normalized size must be at least 8x8");
    }
    if (deskew_step <= 0.0) throw ConfigError("deskew_step must be > 0");
    if (deskew_range < 0.0) throw ConfigError("deskew_range must be >= 0");
}

namespace {

int clamp_index(int v, int n) { return std::clamp(v, 0, n - 1); }

std::uint8_t clamp_u8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

} // namespace

GrayImage denoise(const GrayImage& img, int window) {
    if (window < 1 || window % 2 == 0) {
        throw ConfigError("median window must be odd and >= 1");
    }
    const int half = window / 2;
    GrayImage out(img.width(), img.height());
    std::vector<std::uint8_t> buf;
    buf.reserve(static_cast<std::size_t>(window) * window);
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            buf.clear();
            for (int dr = -half; dr <= half; ++dr) {
                for (int dc = -half; dc <= half; ++dc) {
                    buf.push_back(img.at(clamp_index(r + dr, img.height()),
                                         clamp_index(c + dc, img.width())));
                }
            }
            auto mid = buf.begin() + buf.size() / 2;
            std::nth_element(buf.begin(), mid, buf.end());
            out.set(r, c, *mid);
        }
    }
    return out;
}

GrayImage enhance(const GrayImage& img, double boost) {
    if (boost < 1.0) throw ConfigError("boost must be >= 1");

    // Histogram equalization. A single occupied level maps to itself.
    std::array<long, 256> hist{};
    for (auto p : img.pixels()) ++hist[p];
    std::array<long, 256> cdf{};
    long run = 0;
    long cdf_min = 0;
    for (int v = 0; v < 256; ++v) {
        run += hist[v];
        cdf[v] = run;
        if (cdf_min == 0 && hist[v] > 0) cdf_min = run;
    }
    const long total = static_cast<long>(img.pixels().size());
    GrayImage eq(img.width(), img.height());
    if (total == cdf_min) {
        eq = img;
    } else {
        std::array<std::uint8_t, 256> map{};
        for (int v = 0; v < 256; ++v) {
            map[v] = clamp_u8(255.0 * static_cast<double>(cdf[v] - cdf_min) /
                              static_cast<double>(total - cdf_min));
        }
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c) eq.set(r, c, map[img.at(r, c)]);
        }
    }

    // High-boost sharpening against a 3x3 box lowpass.
    GrayImage out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            int sum = 0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    sum += eq.at(clamp_index(r + dr, eq.height()),
                                 clamp_index(c + dc, eq.width()));
                }
            }
            const double lp = sum / 9.0;
            out.set(r, c, clamp_u8(lp + boost * (eq.at(r, c) - lp)));
        }
    }
    return out;
}

int otsu_threshold(const GrayImage& img) {
    std::array<long, 256> hist{};
    for (auto p : img.pixels()) ++hist[p];
    const long total = static_cast<long>(img.pixels().size());
    long sum_all = 0;
    for (int v = 0; v < 256; ++v) sum_all += static_cast<long>(v) * hist[v];

    int best_t = 0;
    double best_var = 0.0;
    long w0 = 0;
    long s0 = 0;
    for (int t = 1; t < 256; ++t) {
        w0 += hist[t - 1];
        s0 += static_cast<long>(t - 1) * hist[t - 1];
        const long w1 = total - w0;
        if (w0 == 0 || w1 == 0) continue;
        const double mu0 = static_cast<double>(s0) / static_cast<double>(w0);
        const double mu1 = static_cast<double>(sum_all - s0) / static_cast<double>(w1);
        const double var = static_cast<double>(w0) * static_cast<double>(w1) *
                           (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t; // 0 when no split improves on a single class
}

BinaryImage binarize(const GrayImage& img) {
    const int t = otsu_threshold(img);
    BinaryImage out(img.width(), img.height());
    if (t == 0) return out; // degenerate single-level image: all background
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            out.set(r, c, img.at(r, c) < t ? 1 : 0);
        }
    }
    return out;
}

namespace {

// Score an orientation by the population variance of the row projection
// over the rows spanned by ink. Text lines at the correct orientation
// concentrate ink into few rows, maximizing this.
double row_variance(const BinaryImage& img) {
    Projection rows = project(img, Axis::Row);
    int top = -1, bottom = -1;
    for (int r = 0; r < static_cast<int>(rows.sums.size()); ++r) {
        if (rows.sums[r] > 0) {
            if (top < 0) top = r;
            bottom = r + 1;
        }
    }
    if (top < 0) return 0.0;
    const int n = bottom - top;
    double mean = 0.0;
    for (int r = top; r < bottom; ++r) mean += rows.sums[r];
    mean /= n;
    double var = 0.0;
    for (int r = top; r < bottom; ++r) {
        const double d = rows.sums[r] - mean;
        var += d * d;
    }
    return var / n;
}

} // namespace

double deskew_angle(const BinaryImage& img, const PreprocessConfig& cfg) {
    if (cfg.deskew_range <= 0.0) return 0.0;
    if (!img.ink_box()) return 0.0;
    double best_angle = 0.0;
    double best_score = row_variance(img);
    // Sweep outward from zero so ties resolve toward the smaller rotation.
    for (double a = cfg.deskew_step; a <= cfg.deskew_range + 1e-9; a += cfg.deskew_step) {
        for (double sign : {-1.0, 1.0}) {
            const double angle = sign * a;
            const double score = row_variance(rotate_nn(img, angle));
            if (score > best_score) {
                best_score = score;
                best_angle = angle;
            }
        }
    }
    return best_angle;
}

BinaryImage normalize(const BinaryImage& img, const PreprocessConfig& cfg) {
    cfg.validate();
    if (!img.ink_box()) throw EmptyInputError("normalize: blank image");
    BinaryImage work = img;
    const double angle = deskew_angle(img, cfg);
    if (angle != 0.0) work = rotate_nn(img, angle);
    const auto box = work.ink_box();
    work = crop(work, *box);
    return scale_nn(work, cfg.normalized_width, cfg.normalized_height);
}

} // namespace glyphseg

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

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "glyphseg/preprocess.hpp"
#include "glyphseg/rng.hpp"

using namespace glyphseg;

namespace {

GrayImage random_gray(Rng& rng, int w, int h) {
    GrayImage img(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            img.set(r, c, static_cast<std::uint8_t>(rng.uniform_int(0, 255)));
        }
    }
    return img;
}

// Independent median oracle: collect the window, sort, pick the middle.
std::uint8_t median_oracle_pixel(const GrayImage& img, int r, int c, int window) {
    std::vector<std::uint8_t> vals;
    const int half = window / 2;
    for (int dr = -half; dr <= half; ++dr) {
        for (int dc = -half; dc <= half; ++dc) {
            const int rr = std::clamp(r + dr, 0, img.height() - 1);
            const int cc = std::clamp(c + dc, 0, img.width() - 1);
            vals.push_back(img.at(rr, cc));
        }
    }
    std::sort(vals.begin(), vals.end());
    return vals[vals.size() / 2];
}

// Independent Otsu oracle: try all 256 thresholds, recompute class sums
// from scratch each time, maximize between-class variance.
int otsu_oracle(const GrayImage& img) {
    int best_t = 0;
    double best_var = 0.0;
    for (int t = 1; t < 256; ++t) {
        long w0 = 0, w1 = 0, s0 = 0, s1 = 0;
        for (auto p : img.pixels()) {
            if (p < t) {
                ++w0;
                s0 += p;
            } else {
                ++w1;
                s1 += p;
            }
        }
        if (w0 == 0 || w1 == 0) continue;
        const double mu0 = static_cast<double>(s0) / static_cast<double>(w0);
        const double mu1 = static_cast<double>(s1) / static_cast<double>(w1);
        const double var = static_cast<double>(w0) * static_cast<double>(w1) *
                           (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t;
}

} // namespace

TEST_CASE("denoise: constant image is unchanged") {
    GrayImage img(5, 5, 100);
    CHECK(denoise(img, 3) == img);
    // Idempotent on constants.
    CHECK(denoise(denoise(img, 3), 3) == img);
}

TEST_CASE("denoise: lone bright pixel is erased") {
    GrayImage img(5, 5, 0);
    img.set(2, 2, 255);
    const GrayImage out = denoise(img, 3);
    CHECK(out.at(2, 2) == 0);
}

TEST_CASE("denoise: random image matches the sort-and-pick oracle") {
    Rng rng(31);
    const GrayImage img = random_gray(rng, 7, 7);
    const GrayImage out = denoise(img, 3);
    for (int r = 0; r < 7; ++r) {
        for (int c = 0; c < 7; ++c) {
            CHECK(out.at(r, c) == median_oracle_pixel(img, r, c, 3));
        }
    }
}

TEST_CASE("denoise: even window is rejected") {
    GrayImage img(3, 3);
    CHECK_THROWS_AS(denoise(img, 4), ConfigError);
}

TEST_CASE("enhance: constant image stays constant") {
    GrayImage img(6, 6, 77);
    CHECK(enhance(img, 1.5) == img);
}

TEST_CASE("enhance: balanced two-level image keeps its extremes") {
    GrayImage img(10, 10);
    for (int r = 0; r < 10; ++r) {
        for (int c = 0; c < 10; ++c) img.set(r, c, (c < 5) ? 0 : 255);
    }
    const GrayImage out = enhance(img, 1.5);
    for (int r = 0; r < 10; ++r) {
        for (int c = 0; c < 10; ++c) {
            CHECK(out.at(r, c) == img.at(r, c));
        }
    }
}

TEST_CASE("enhance: matches the composed cdf-map + kernel oracle") {
    Rng rng(32);
    const GrayImage img = random_gray(rng, 8, 8);
    const double boost = 1.5;

    // Oracle: equalize via the textbook CDF formula, then apply the
    // unsharp expression pixel by pixel.
    std::array<long, 256> hist{};
    for (auto p : img.pixels()) ++hist[p];
    std::array<long, 256> cdf{};
    long run = 0;
    for (int v = 0; v < 256; ++v) {
        run += hist[v];
        cdf[v] = run;
    }
    long cdf_min = 0;
    for (int v = 0; v < 256; ++v) {
        if (hist[v] > 0) {
            cdf_min = cdf[v];
            break;
        }
    }
    const long total = 64;
    GrayImage eq(8, 8);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            const double mapped = 255.0 * static_cast<double>(cdf[img.at(r, c)] - cdf_min) /
                                  static_cast<double>(total - cdf_min);
            eq.set(r, c, static_cast<std::uint8_t>(std::clamp(std::lround(mapped), 0L, 255L)));
        }
    }
    GrayImage expect(8, 8);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            int sum = 0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    sum += eq.at(std::clamp(r + dr, 0, 7), std::clamp(c + dc, 0, 7));
                }
            }
            const double lp = sum / 9.0;
            const double v = lp + boost * (eq.at(r, c) - lp);
            expect.set(r, c, static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)));
        }
    }
    CHECK(enhance(img, boost) == expect);
}

TEST_CASE("binarize: perfect bimodal split marks dark pixels as ink") {
    GrayImage img(10, 10);
    for (int r = 0; r < 10; ++r) {
        for (int c = 0; c < 10; ++c) img.set(r, c, (r < 5) ? 0 : 255);
    }
    const BinaryImage out = binarize(img);
    for (int r = 0; r < 10; ++r) {
        for (int c = 0; c < 10; ++c) CHECK(out.at(r, c) == (r < 5 ? 1 : 0));
    }
}

TEST_CASE("binarize: constant image becomes all background") {
    GrayImage img(4, 4, 128);
    CHECK(binarize(img).ink_count() == 0);
}

TEST_CASE("binarize: threshold equals the exhaustive-search oracle") {
    Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        const GrayImage img = random_gray(rng, 10, 10);
        CHECK(otsu_threshold(img) == otsu_oracle(img));
    }
}

TEST_CASE("binarize: dark text on a light page has ink fraction below half") {
    Rng rng(34);
    GrayImage img(40, 40, 230);
    // A few dark strokes.
    for (int k = 0; k < 60; ++k) {
        img.set(rng.uniform_int(5, 34), rng.uniform_int(5, 34),
                static_cast<std::uint8_t>(rng.uniform_int(0, 40)));
    }
    const BinaryImage out = binarize(img);
    CHECK(out.ink_count() < 40 * 40 / 2);
}

TEST_CASE("normalize: output always has the configured size") {
    PreprocessConfig cfg;
    cfg.deskew_range = 0.0;
    BinaryImage img(20, 10);
    img.set(3, 4, 1);
    img.set(7, 15, 1);
    const BinaryImage out = normalize(img, cfg);
    CHECK(out.width() == cfg.normalized_width);
    CHECK(out.height() == cfg.normalized_height);
}

TEST_CASE("normalize: single ink pixel fills the normalized canvas") {
    PreprocessConfig cfg;
    BinaryImage img(9, 9);
    img.set(4, 4, 1);
    const BinaryImage out = normalize(img, cfg);
    CHECK(out.ink_count() == cfg.normalized_width * cfg.normalized_height);
}

TEST_CASE("normalize: blank image throws") {
    PreprocessConfig cfg;
    CHECK_THROWS_AS(normalize(BinaryImage(8, 8), cfg), EmptyInputError);
}

TEST_CASE("normalize: ink filling the image is a rescale identity") {
    PreprocessConfig cfg;
    cfg.deskew_range = 0.0;
    // Bars already at the normalized size and axis-aligned.
    BinaryImage img(32, 32);
    for (int r = 0; r < 32; r += 4) {
        for (int c = 0; c < 32; ++c) img.set(r, c, 1);
    }
    for (int c = 0; c < 32; ++c) img.set(31, c, 1); // close the bounding box
    CHECK(normalize(img, cfg) == img);
}

namespace {

// Horizontal bar pattern: high row-projection variance when upright.
BinaryImage bar_pattern(int size, int period) {
    BinaryImage img(size, size);
    for (int r = 0; r < size; ++r) {
        if ((r / period) % 2 == 0) {
            for (int c = 0; c < size; ++c) img.set(r, c, 1);
        }
    }
    return img;
}

} // namespace

TEST_CASE("deskew: recovers the rotation of a bar pattern") {
    PreprocessConfig cfg;
    const BinaryImage bars = bar_pattern(48, 4);
    const BinaryImage rotated = rotate_nn(bars, 4.0);
    const double angle = deskew_angle(rotated, cfg);
    CHECK(std::abs(angle - (-4.0)) <= cfg.deskew_step + 1e-12);
}

TEST_CASE("deskew: an upright pattern stays within one step of zero") {
    PreprocessConfig cfg;
    const BinaryImage bars = bar_pattern(48, 4);
    CHECK(std::abs(deskew_angle(bars, cfg)) <= cfg.deskew_step);
}

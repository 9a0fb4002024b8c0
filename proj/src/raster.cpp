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

#include "glyphseg/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "glyphseg/kernels.hpp"

namespace glyphseg {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw ConfigError("image dimensions must be at least 1x1, got " +
                          std::to_string(width) + "x" + std::to_string(height));
    }
}

} // namespace

std::optional<Box> intersect(const Box& a, const Box& b) {
    Box r{std::max(a.top, b.top), std::max(a.left, b.left),
          std::min(a.bottom, b.bottom), std::min(a.right, b.right)};
    if (!r.valid()) return std::nullopt;
    return r;
}

double iou(const Box& a, const Box& b) {
    auto inter = intersect(a, b);
    if (!inter) return 0.0;
    double ia = static_cast<double>(inter->area());
    double ua = static_cast<double>(a.area()) + static_cast<double>(b.area()) - ia;
    return ia / ua;
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    px_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), px_(std::move(pixels)) {
    check_dims(width, height);
    if (px_.size() != static_cast<std::size_t>(width) * height) {
        throw ShapeError("pixel buffer size does not match image dimensions");
    }
}

BinaryImage::BinaryImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    px_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), px_(std::move(pixels)) {
    check_dims(width, height);
    if (px_.size() != static_cast<std::size_t>(width) * height) {
        throw ShapeError("pixel buffer size does not match image dimensions");
    }
    for (auto p : px_) {
        if (p > 1) throw ShapeError("binary image pixel outside {0, 1}");
    }
}

int BinaryImage::ink_count() const {
    return kernels::active().sum_u8(px_.data(), px_.size());
}

std::optional<Box> BinaryImage::ink_box() const {
    Projection rows = project(*this, Axis::Row);
    int top = -1, bottom = -1;
    for (int r = 0; r < height_; ++r) {
        if (rows.sums[r] > 0) {
            if (top < 0) top = r;
            bottom = r + 1;
        }
    }
    if (top < 0) return std::nullopt;
    Projection cols = project(*this, Axis::Column);
    int left = -1, right = -1;
    for (int c = 0; c < width_; ++c) {
        if (cols.sums[c] > 0) {
            if (left < 0) left = c;
            right = c + 1;
        }
    }
    return Box{top, left, bottom, right};
}

Projection project(const BinaryImage& img, Axis axis) {
    const auto& ops = kernels::active();
    Projection p;
    p.axis = axis;
    if (axis == Axis::Row) {
        p.sums.resize(img.height());
        for (int r = 0; r < img.height(); ++r) {
            p.sums[r] = ops.sum_u8(img.row(r), static_cast<std::size_t>(img.width()));
        }
    } else {
        p.sums.assign(img.width(), 0);
        for (int r = 0; r < img.height(); ++r) {
            ops.accum_u8_i32(img.row(r), p.sums.data(), static_cast<std::size_t>(img.width()));
        }
    }
    return p;
}

BinaryImage invert(const BinaryImage& img) {
    BinaryImage out(img.width(), img.height());
    kernels::active().xor1_u8(img.pixels().data(), out.row(0), img.pixels().size());
    return out;
}

BinaryImage crop(const BinaryImage& img, const Box& box) {
    if (!box.valid() || box.top < 0 || box.left < 0 || box.bottom > img.height() ||
        box.right > img.width()) {
        throw BoundsError("crop box outside image bounds");
    }
    BinaryImage out(box.width(), box.height());
    for (int r = 0; r < box.height(); ++r) {
        const std::uint8_t* src = img.row(box.top + r) + box.left;
        std::copy(src, src + box.width(), out.row(r));
    }
    return out;
}

BinaryImage rotate_nn(const BinaryImage& img, double degrees) {
    if (degrees == 0.0) return img;
    const double rad = degrees * std::numbers::pi_v<double> / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    const int w = img.width();
    const int h = img.height();
    const int out_w = static_cast<int>(std::ceil(std::abs(w * c) + std::abs(h * s)));
    const int out_h = static_cast<int>(std::ceil(std::abs(w * s) + std::abs(h * c)));
    BinaryImage out(std::max(out_w, 1), std::max(out_h, 1));
    const double cx = (w - 1) / 2.0;
    const double cy = (h - 1) / 2.0;
    const double ox = (out.width() - 1) / 2.0;
    const double oy = (out.height() - 1) / 2.0;
    for (int r = 0; r < out.height(); ++r) {
        for (int col = 0; col < out.width(); ++col) {
            // Inverse mapping: rotate the output coordinate back by -degrees.
            const double dx = col - ox;
            const double dy = r - oy;
            const int sx = static_cast<int>(std::lround(c * dx + s * dy + cx));
            const int sy = static_cast<int>(std::lround(-s * dx + c * dy + cy));
            if (sx >= 0 && sx < w && sy >= 0 && sy < h && img.at(sy, sx)) {
                out.set(r, col, 1);
            }
        }
    }
    return out;
}

BinaryImage scale_nn(const BinaryImage& img, int new_width, int new_height) {
    check_dims(new_width, new_height);
    BinaryImage out(new_width, new_height);
    // Center-aligned sampling: pixel centers map to pixel centers, so the
    // first and last source rows/columns stay reachable when downscaling.
    for (int r = 0; r < new_height; ++r) {
        const int sr = std::min(img.height() - 1,
                                static_cast<int>((2 * r + 1) * static_cast<long long>(img.height()) /
                                                 (2 * new_height)));
        for (int c = 0; c < new_width; ++c) {
            const int sc = std::min(img.width() - 1,
                                    static_cast<int>((2 * c + 1) * static_cast<long long>(img.width()) /
                                                     (2 * new_width)));
            out.set(r, c, img.at(sr, sc));
        }
    }
    return out;
}

} // namespace glyphseg

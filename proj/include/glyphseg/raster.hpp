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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "glyphseg/error.hpp"

namespace glyphseg {

/// Half-open pixel rectangle: rows [top, bottom), columns [left, right).
/// Adjacent boxes tile without overlapping.
struct Box {
    int top = 0;
    int left = 0;
    int bottom = 0;
    int right = 0;

    int width() const { return right - left; }
    int height() const { return bottom - top; }
    long long area() const { return static_cast<long long>(width()) * height(); }
    bool valid() const { return top < bottom && left < right; }

    bool operator==(const Box&) const = default;
};

/// Intersection of two boxes, or nullopt when they do not overlap.
std::optional<Box> intersect(const Box& a, const Box& b);

/// Intersection-over-union in [0, 1]; 0 for disjoint boxes.
double iou(const Box& a, const Box& b);

enum class Axis { Row, Column };

/// Per-row or per-column ink counts of a binary image.
struct Projection {
    Axis axis = Axis::Row;
    std::vector<int> sums;
};

/// 8-bit grayscale raster, row-major, intensities in [0, 255].
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t at(int row, int col) const { return px_[idx(row, col)]; }
    void set(int row, int col, std::uint8_t v) { px_[idx(row, col)] = v; }

    const std::uint8_t* row(int r) const { return px_.data() + static_cast<std::size_t>(r) * width_; }
    std::uint8_t* row(int r) { return px_.data() + static_cast<std::size_t>(r) * width_; }

    const std::vector<std::uint8_t>& pixels() const { return px_; }

    bool operator==(const GrayImage&) const = default;

private:
    std::size_t idx(int row, int col) const {
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> px_;
};

/// Binary raster, row-major, 1 = ink (foreground), 0 = background.
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height, std::uint8_t fill = 0);
    BinaryImage(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t at(int row, int col) const { return px_[idx(row, col)]; }
    void set(int row, int col, std::uint8_t v) { px_[idx(row, col)] = v ? 1 : 0; }

    const std::uint8_t* row(int r) const { return px_.data() + static_cast<std::size_t>(r) * width_; }
    std::uint8_t* row(int r) { return px_.data() + static_cast<std::size_t>(r) * width_; }

    const std::vector<std::uint8_t>& pixels() const { return px_; }

    int ink_count() const;

    /// Tight bounding box of ink, or nullopt for a blank image.
    std::optional<Box> ink_box() const;

    bool operator==(const BinaryImage&) const = default;

private:
    std::size_t idx(int row, int col) const {
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> px_;
};

/// sums[i] = ink pixels in row/column i.
Projection project(const BinaryImage& img, Axis axis);

/// Flip every pixel. Involution.
BinaryImage invert(const BinaryImage& img);

/// Copy the pixels inside box. Throws BoundsError when box leaves the image.
BinaryImage crop(const BinaryImage& img, const Box& box);

/// Rotate by `degrees` (counterclockwise, about the image center) with
/// nearest-neighbor sampling. The output canvas is expanded to hold the
/// rotated bounding box, so no ink is clipped.
BinaryImage rotate_nn(const BinaryImage& img, double degrees);

/// Nearest-neighbor rescale to the exact target dimensions.
BinaryImage scale_nn(const BinaryImage& img, int new_width, int new_height);

} // namespace glyphseg

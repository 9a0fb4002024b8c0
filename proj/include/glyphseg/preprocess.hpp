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

#include "glyphseg/raster.hpp"

namespace glyphseg {

struct PreprocessConfig {
    int median_window = 3;        // odd
    double high_boost = 1.5;      // >= 1; 1 disables sharpening
    int normalized_width = 32;    // >= 8
    int normalized_height = 32;   // >= 8
    double deskew_range = 10.0;   // degrees swept each side of zero; 0 disables
    double deskew_step = 0.5;     // degrees, > 0

    void validate() const;
};

/// Median filter with edge-replicated borders. Window must be odd.
GrayImage denoise(const GrayImage& img, int window);

/// Histogram equalization followed by high-boost sharpening:
/// out = clamp(lowpass + boost * (equalized - lowpass)) with a 3x3 box
/// lowpass (edge-replicated). boost = 1 reproduces the equalized image.
GrayImage enhance(const GrayImage& img, double boost);

/// Otsu global threshold; pixels below the threshold become ink (dark text
/// on a light background). A single-level image becomes all background.
BinaryImage binarize(const GrayImage& img);

/// Exhaustive Otsu threshold search (exposed so callers can inspect the
/// chosen cut). Returns t in [0, 256): ink = pixel < t.
int otsu_threshold(const GrayImage& img);

/// Deskew by sweeping the angle that maximizes row-projection variance,
/// tight-crop to the ink bounding box, then rescale to the configured
/// normalized size. Throws EmptyInputError on a blank image.
BinaryImage normalize(const BinaryImage& img, const PreprocessConfig& cfg);

/// The angle (degrees) the deskew sweep selects; 0 when the sweep is
/// disabled or the image is blank.
double deskew_angle(const BinaryImage& img, const PreprocessConfig& cfg);

} // namespace glyphseg

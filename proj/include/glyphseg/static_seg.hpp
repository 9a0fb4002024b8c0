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

#include <optional>
#include <utility>
#include <vector>

#include "glyphseg/raster.hpp"

namespace glyphseg {

struct StaticSegConfig {
    int min_gap = 1;                     // zero-projection run length that separates
    double modifier_factor = 1.5;        // band-height multiple triggering modifier search
    bool dilate_for_word_spacing = false;
    int dilate_radius = 1;

    void validate() const;
};

/// One text line: its page-coordinate box, the detected headline row (page
/// coordinates, topmost row of the removed bar), and zone boundaries
/// relative to the band top (upper_end <= middle_end <= height).
struct LineBand {
    Box box;
    std::optional<int> headline_row;
    int upper_end = 0;
    int middle_end = 0;
};

/// A line split into its character core and an optional lower-zone
/// modifier hanging below it. Boxes are in page coordinates.
struct ModifierSplit {
    Box core;
    std::optional<Box> lower_modifier;
};

/// Full static dissection of a page.
struct Dissection {
    std::vector<LineBand> lines;
    std::vector<std::vector<Box>> characters_per_line; // page coordinates
    std::vector<std::pair<int, std::pair<int, int>>> spaces; // (line, [col0, col1))
};

/// Maximal runs of rows with nonzero projection, separated by at least
/// min_gap blank rows, become line bands ordered top to bottom. A blank
/// page yields an empty sequence.
std::vector<LineBand> dissect_rows(const BinaryImage& page, const StaticSegConfig& cfg);

/// Column dissection of one line crop: maximal nonzero-projection column
/// runs become character boxes (tight rows, line-local coordinates); blank
/// runs at least twice the median inter-character gap are word spaces.
std::pair<std::vector<Box>, std::vector<std::pair<int, int>>>
dissect_columns(const BinaryImage& line, const StaticSegConfig& cfg);

/// Zero the headline band when the row-projection maximum exceeds 0.7x the
/// line width and sits in the upper third. Returns the stripped image and
/// the topmost removed row (line-local), if any.
std::pair<BinaryImage, std::optional<int>> remove_headline(const BinaryImage& line);

/// Split bands taller than modifier_factor x (mean band height) at the
/// deepest nonzero row-projection valley, separating the character core
/// from a lower-zone modifier. Bands without a valley stay whole.
std::vector<ModifierSplit> separate_modifiers(const std::vector<LineBand>& lines,
                                              const BinaryImage& page,
                                              const StaticSegConfig& cfg);

/// Zone boundaries for a band, relative to its top row. upper_end comes
/// from the headline (or the first row reaching half the projection peak);
/// middle_end from the modifier valley when one was found.
std::pair<int, int> estimate_zones(const LineBand& line, const BinaryImage& page,
                                   std::optional<int> modifier_split_row = std::nullopt);

/// Binary dilation with a square structuring element of side 2*radius+1.
BinaryImage dilate(const BinaryImage& img, int radius);

/// dissect_rows + per-line headline removal + dissect_columns, assembled
/// with page-coordinate boxes and zone estimates.
Dissection dissect_page(const BinaryImage& page, const StaticSegConfig& cfg,
                        bool strip_headlines = true);

} // namespace glyphseg

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
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glyphseg/raster.hpp"

namespace glyphseg {

/// Labeled glyph exemplars, ordered by label name.
struct GlyphSet {
    std::vector<std::string> labels;
    std::vector<std::vector<BinaryImage>> exemplars; // [label ordinal][n]

    int num_classes() const { return static_cast<int>(labels.size()); }
    void validate() const;
};

/// Procedurally drawn 10-class shape set. Exemplars within a class vary in
/// size, stroke width and endpoint jitter, standing in for writer
/// variation.
GlyphSet builtin_glyphset(int exemplars_per_class, std::uint64_t seed);

/// Directory layout: <label>/<n>.pbm
GlyphSet load_glyphset(const std::filesystem::path& dir);
void save_glyphset(const GlyphSet& glyphs, const std::filesystem::path& dir);

struct IntRange {
    int lo = 0;
    int hi = 0;
};

struct RealRange {
    double lo = 0.0;
    double hi = 0.0;
};

struct CorpusSpec {
    std::uint64_t seed = 7;
    int pages = 1;
    int lines_per_page = 4;
    int glyphs_per_line = 8;
    IntRange inter_glyph_gap{12, 18};
    IntRange inter_word_gap{30, 40};
    IntRange word_len{3, 5};
    IntRange inter_line_gap{10, 16};
    RealRange scale_jitter{0.8, 1.2};
    RealRange rotation_jitter{0.0, 0.0}; // degrees
    double salt_pepper_rate = 0.0;       // [0, 0.1]
    bool headline_bar = false;
    double lower_modifier_rate = 0.0;    // per line
    double touching_pair_rate = 0.0;     // per line; forces one merged pair
    int margin = 8;
    int page_width = 0;  // 0 = size to content
    int page_height = 0;

    void validate() const;
};

struct PlacedGlyph {
    int label = 0;
    int exemplar = 0;
    Box box;                 // page coordinates
    bool touching = false;   // part of a forced touching pair
};

struct LineTruth {
    Box band; // rows spanned by the line's ink, full page width
    std::optional<int> headline_row; // topmost bar row, page coordinates
    std::vector<PlacedGlyph> glyphs;
    std::vector<std::pair<int, int>> spaces; // word gaps, page columns
    std::vector<Box> modifiers;
};

struct PageTruth {
    std::vector<LineTruth> lines;
};

struct GroundTruth {
    std::vector<PageTruth> pages;
};

/// Deterministic page rendering. At zero noise, page crops at the truth
/// boxes equal the placed exemplars exactly.
std::pair<std::vector<BinaryImage>, GroundTruth> generate(const GlyphSet& glyphs,
                                                          const CorpusSpec& spec);

} // namespace glyphseg

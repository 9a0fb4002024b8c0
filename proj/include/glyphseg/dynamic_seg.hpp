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

#include "glyphseg/mlp.hpp"
#include "glyphseg/preprocess.hpp"
#include "glyphseg/raster.hpp"
#include "glyphseg/similarity.hpp"
#include "glyphseg/static_seg.hpp"

namespace glyphseg {

struct DynamicSegConfig {
    double interval_fraction = 0.025;  // cut spacing as a fraction of line width
    double confidence_threshold = 0.8; // classifier gate
    double similarity_floor = 80.0;    // template-match gate, percent
    int max_segments_per_char = 12;    // widths tried before fallback
    bool strip_headline = false;       // run remove_headline per line in segment_page

    void validate() const;
};

/// One accepted character: box edges land on cut positions; rows are the
/// tight ink extent.
struct RecognizedChar {
    Box box; // line-local columns unless produced by segment_page
    int label = 0;
    double confidence = 0.0;
    SimilarityScore similarity;
};

struct DynamicResult {
    std::vector<RecognizedChar> characters;
    /// Trailing interval the scan could not consume (line-local columns).
    std::optional<std::pair<int, int>> residue;
};

/// Cut positions at round(k * fraction * width): strictly increasing,
/// first 0, last width. A line narrower than 1/fraction columns gets the
/// single segment {0, width}.
std::vector<int> over_segment(const BinaryImage& line, const DynamicSegConfig& cfg);

/// Greedy left-to-right scan: grow a candidate cut by cut, normalize and
/// classify each accumulation, and fix a boundary once the classifier is
/// confident and the best template match confirms it.
DynamicResult segment_line(const BinaryImage& line, const Mlp& net, const TemplateSet& templates,
                           const DynamicSegConfig& cfg, const PreprocessConfig& pre);

/// Static row dissection, then per-line dynamic segmentation. Boxes are
/// translated to page coordinates.
std::vector<DynamicResult> segment_page(const BinaryImage& page, const Mlp& net,
                                        const TemplateSet& templates,
                                        const StaticSegConfig& static_cfg,
                                        const DynamicSegConfig& cfg,
                                        const PreprocessConfig& pre);

} // namespace glyphseg

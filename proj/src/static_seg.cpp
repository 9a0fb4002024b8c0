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

#include "glyphseg/static_seg.hpp"

#include <algorithm>
#include <cmath>

#include "glyphseg/kernels.hpp"

namespace glyphseg {

void StaticSegConfig::validate() const {
    if (min_gap < 1) throw ConfigError("min_gap must be >= 1");
    if (modifier_factor <= 0.0) throw ConfigError("modifier_factor must be > 0");
    if (dilate_radius < 1) throw ConfigError("dilate_radius must be >= 1");
}

namespace {

// Maximal [start, end) runs of nonzero values, where blank runs shorter
// than min_gap do not separate. Runs are trimmed to their nonzero ends.
std::vector<std::pair<int, int>> nonzero_runs(const std::vector<int>& sums, int min_gap) {
    std::vector<std::pair<int, int>> runs;
    const int n = static_cast<int>(sums.size());
    int i = 0;
    while (i < n) {
        while (i < n && sums[i] == 0) ++i;
        if (i >= n) break;
        const int start = i;
        int last_ink = i;
        while (i < n) {
            if (sums[i] > 0) {
                last_ink = i;
                ++i;
                continue;
            }
            int j = i;
            while (j < n && sums[j] == 0) ++j;
            if (j - i >= min_gap) break; // real separation
            i = j; // blank run too short; swallow it
        }
        runs.emplace_back(start, last_ink + 1);
        i = last_ink + 1;
    }
    return runs;
}

} // namespace

std::vector<LineBand> dissect_rows(const BinaryImage& page, const StaticSegConfig& cfg) {
    cfg.validate();
    Projection rows = project(page, Axis::Row);
    std::vector<LineBand> bands;
    for (auto [top, bottom] : nonzero_runs(rows.sums, cfg.min_gap)) {
        LineBand band;
        band.box = Box{top, 0, bottom, page.width()};
        band.middle_end = band.box.height();
        bands.push_back(band);
    }
    return bands;
}

std::pair<std::vector<Box>, std::vector<std::pair<int, int>>>
dissect_columns(const BinaryImage& line, const StaticSegConfig& cfg) {
    cfg.validate();
    const BinaryImage* src = &line;
    BinaryImage dilated;
    if (cfg.dilate_for_word_spacing) {
        // Re-space after headline removal: dilation closes intra-character
        // gaps so only true word gaps survive as blank runs.
        dilated = dilate(line, cfg.dilate_radius);
        src = &dilated;
    }
    Projection cols = project(*src, Axis::Column);
    auto runs = nonzero_runs(cols.sums, 1);

    std::vector<Box> boxes;
    boxes.reserve(runs.size());
    for (auto [left, right] : runs) {
        // Tight row extent of ink within the column run.
        int top = line.height(), bottom = 0;
        for (int r = 0; r < line.height(); ++r) {
            const std::uint8_t* row = line.row(r);
            for (int c = left; c < right; ++c) {
                if (row[c]) {
                    top = std::min(top, r);
                    bottom = std::max(bottom, r + 1);
                    break;
                }
            }
        }
        if (top >= bottom) { top = 0; bottom = line.height(); } // dilation-only run
        boxes.push_back(Box{top, left, bottom, right});
    }

    // Word spaces: interior blank runs at least twice the median gap.
    std::vector<std::pair<int, int>> spaces;
    if (runs.size() >= 2) {
        std::vector<int> gaps;
        gaps.reserve(runs.size() - 1);
        for (std::size_t i = 1; i < runs.size(); ++i) {
            gaps.push_back(runs[i].first - runs[i - 1].second);
        }
        std::vector<int> sorted = gaps;
        std::sort(sorted.begin(), sorted.end());
        const int median = sorted[(sorted.size() - 1) / 2];
        const int threshold = 2 * median;
        for (std::size_t i = 1; i < runs.size(); ++i) {
            if (gaps[i - 1] >= threshold && gaps[i - 1] > median) {
                spaces.emplace_back(runs[i - 1].second, runs[i].first);
            }
        }
    }
    return {std::move(boxes), std::move(spaces)};
}

std::pair<BinaryImage, std::optional<int>> remove_headline(const BinaryImage& line) {
    Projection rows = project(line, Axis::Row);
    const int h = line.height();
    int peak_row = 0;
    for (int r = 1; r < h; ++r) {
        if (rows.sums[r] > rows.sums[peak_row]) peak_row = r;
    }
    const double cutoff = 0.7 * line.width();
    if (rows.sums[peak_row] <= cutoff || peak_row >= (h + 2) / 3) {
        return {line, std::nullopt};
    }
    // The headline band: contiguous rows around the peak that also clear
    // the cutoff.
    int band_top = peak_row;
    while (band_top > 0 && rows.sums[band_top - 1] > cutoff) --band_top;
    int band_bottom = peak_row + 1;
    while (band_bottom < h && rows.sums[band_bottom] > cutoff) ++band_bottom;
    BinaryImage stripped = line;
    for (int r = band_top; r < band_bottom; ++r) {
        std::fill(stripped.row(r), stripped.row(r) + stripped.width(), std::uint8_t{0});
    }
    return {std::move(stripped), band_top};
}

std::vector<ModifierSplit> separate_modifiers(const std::vector<LineBand>& lines,
                                              const BinaryImage& page,
                                              const StaticSegConfig& cfg) {
    cfg.validate();
    if (lines.empty()) throw ConfigError("separate_modifiers requires at least one line band");

    double mean_height = 0.0;
    for (const auto& band : lines) mean_height += band.box.height();
    mean_height /= static_cast<double>(lines.size());
    const double trigger = cfg.modifier_factor * mean_height;

    std::vector<ModifierSplit> result;
    result.reserve(lines.size());
    for (const auto& band : lines) {
        ModifierSplit split{band.box, std::nullopt};
        if (static_cast<double>(band.box.height()) > trigger) {
            Projection rows = project(crop(page, band.box), Axis::Row);
            const auto& s = rows.sums;
            const int h = band.box.height();
            // Deepest nonzero interior valley; a valley is a plateau of
            // equal values with strictly larger neighbors on both sides.
            // Equal-depth ties go to the lower row, keeping the core
            // maximal.
            int best_row = -1;
            int best_depth = 0;
            int i = 1;
            while (i < h - 1) {
                int j = i;
                while (j + 1 < h && s[j + 1] == s[i]) ++j;
                const bool interior = j < h - 1;
                if (s[i] > 0 && interior && s[i - 1] > s[i] && s[j + 1] > s[i]) {
                    if (best_row < 0 || s[i] <= best_depth) {
                        best_depth = s[i];
                        best_row = j; // low edge of the plateau
                    }
                }
                i = j + 1;
            }
            if (best_row > 0) {
                split.core = Box{band.box.top, band.box.left, band.box.top + best_row, band.box.right};
                split.lower_modifier =
                    Box{band.box.top + best_row, band.box.left, band.box.bottom, band.box.right};
            }
        }
        result.push_back(split);
    }
    return result;
}

std::pair<int, int> estimate_zones(const LineBand& line, const BinaryImage& page,
                                   std::optional<int> modifier_split_row) {
    const BinaryImage band = crop(page, line.box);
    Projection rows = project(band, Axis::Row);
    const int h = band.height();

    int upper_end = 0;
    if (line.headline_row) {
        // Rows below the headline band; rediscover its thickness from the
        // unstripped projection.
        const double cutoff = 0.7 * band.width();
        int r = *line.headline_row - line.box.top;
        while (r < h && rows.sums[r] > cutoff) ++r;
        upper_end = std::min(r, h);
    } else {
        int peak = 0;
        for (int r = 0; r < h; ++r) peak = std::max(peak, rows.sums[r]);
        int r = 0;
        while (r < h && rows.sums[r] < 0.5 * peak) ++r;
        upper_end = (r >= h) ? 0 : r;
    }

    int middle_end = h;
    if (modifier_split_row) {
        middle_end = std::clamp(*modifier_split_row - line.box.top, 0, h);
    }
    upper_end = std::min(upper_end, middle_end);
    return {upper_end, middle_end};
}

BinaryImage dilate(const BinaryImage& img, int radius) {
    if (radius < 1) throw ConfigError("dilate radius must be >= 1");
    const auto& ops = kernels::active();
    const int w = img.width();
    const int h = img.height();

    // Separable: horizontal running-OR, then vertical row OR.
    BinaryImage horiz(w, h);
    for (int r = 0; r < h; ++r) {
        const std::uint8_t* src = img.row(r);
        std::uint8_t* dst = horiz.row(r);
        int count = 0; // ink pixels inside the sliding window
        for (int c = -radius; c < w; ++c) {
            const int add = c + radius;
            if (add < w && src[add]) ++count;
            const int del = c - radius - 1;
            if (del >= 0 && src[del]) --count;
            if (c >= 0) dst[c] = count > 0 ? 1 : 0;
        }
    }
    BinaryImage out(w, h);
    for (int r = 0; r < h; ++r) {
        std::uint8_t* dst = out.row(r);
        std::copy(horiz.row(r), horiz.row(r) + w, dst);
        for (int dr = -radius; dr <= radius; ++dr) {
            const int rr = r + dr;
            if (rr < 0 || rr >= h || dr == 0) continue;
            ops.or_u8(dst, horiz.row(rr), dst, static_cast<std::size_t>(w));
        }
    }
    return out;
}

Dissection dissect_page(const BinaryImage& page, const StaticSegConfig& cfg,
                        bool strip_headlines) {
    Dissection d;
    d.lines = dissect_rows(page, cfg);
    if (d.lines.empty()) return d;

    auto splits = separate_modifiers(d.lines, page, cfg);
    for (std::size_t i = 0; i < d.lines.size(); ++i) {
        LineBand& band = d.lines[i];
        BinaryImage line_img = crop(page, band.box);
        std::optional<int> headline;
        if (strip_headlines) {
            auto [stripped, row] = remove_headline(line_img);
            line_img = std::move(stripped);
            headline = row;
        }
        if (headline) band.headline_row = band.box.top + *headline;

        std::optional<int> split_row;
        if (splits[i].lower_modifier) split_row = splits[i].lower_modifier->top;
        auto [upper, middle] = estimate_zones(band, page, split_row);
        band.upper_end = upper;
        band.middle_end = middle;

        auto [boxes, spaces] = dissect_columns(line_img, cfg);
        std::vector<Box> page_boxes;
        page_boxes.reserve(boxes.size());
        for (const auto& b : boxes) {
            page_boxes.push_back(Box{b.top + band.box.top, b.left + band.box.left,
                                     b.bottom + band.box.top, b.right + band.box.left});
        }
        d.characters_per_line.push_back(std::move(page_boxes));
        for (auto [c0, c1] : spaces) {
            d.spaces.emplace_back(static_cast<int>(i),
                                  std::make_pair(c0 + band.box.left, c1 + band.box.left));
        }
    }
    return d;
}

} // namespace glyphseg

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

#include "glyphseg/dynamic_seg.hpp"

#include <algorithm>
#include <cmath>

namespace glyphseg {

void DynamicSegConfig::validate() const {
    if (interval_fraction <= 0.0 || interval_fraction >= 1.0) {
        throw ConfigError("interval_fraction must be in (0, 1)");
    }
    if (confidence_threshold <= 0.0 || confidence_threshold >= 1.0) {
        throw ConfigError("confidence_threshold must be in (0, 1)");
    }
    if (similarity_floor > 100.0) throw ConfigError("similarity_floor cannot exceed 100");
    if (max_segments_per_char < 1) throw ConfigError("max_segments_per_char must be >= 1");
}

std::vector<int> over_segment(const BinaryImage& line, const DynamicSegConfig& cfg) {
    cfg.validate();
    const int width = line.width();
    const double f = cfg.interval_fraction;
    if (static_cast<double>(width) < 1.0 / f) {
        return {0, width}; // too narrow for the grid: one segment
    }
    const int k_max = static_cast<int>(std::floor(1.0 / f + 1e-9));
    std::vector<int> cuts;
    cuts.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        const int cut = static_cast<int>(std::lround(k * f * width));
        if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
    }
    if (cuts.back() != width) cuts.push_back(width);
    return cuts;
}

namespace {

std::vector<double> to_input(const BinaryImage& img) {
    std::vector<double> v;
    v.reserve(img.pixels().size());
    for (auto p : img.pixels()) v.push_back(p ? 1.0 : 0.0);
    return v;
}

// Ink this small is boundary debris (a cut rarely lands exactly on a
// glyph edge), not a character fragment worth classifying.
constexpr int kMinCandidateSide = 4;

// Columns [c0, c1) trimmed of blank margins; nullopt when blank or debris.
// Narrow leading column-runs are sliver leftovers of the previous
// boundary and are stripped before the candidate is judged; trailing
// runs stay, because ink entering from the right means the window grew
// into the next character.
std::optional<BinaryImage> trimmed_candidate(const BinaryImage& line, int c0, int c1) {
    BinaryImage cand = crop(line, Box{0, c0, line.height(), c1});
    const Projection cols = project(cand, Axis::Column);
    int begin = 0;
    const int w = cand.width();
    for (;;) {
        while (begin < w && cols.sums[begin] == 0) ++begin;
        if (begin >= w) return std::nullopt;
        int run_end = begin;
        while (run_end < w && cols.sums[run_end] > 0) ++run_end;
        if (run_end - begin < kMinCandidateSide) {
            begin = run_end;
            continue;
        }
        break;
    }
    cand = crop(cand, Box{0, begin, cand.height(), w});
    const auto box = cand.ink_box();
    if (!box) return std::nullopt;
    if (box->width() < kMinCandidateSide || box->height() < kMinCandidateSide) {
        return std::nullopt;
    }
    return crop(cand, *box);
}

} // namespace

DynamicResult segment_line(const BinaryImage& line, const Mlp& net, const TemplateSet& templates,
                           const DynamicSegConfig& cfg, const PreprocessConfig& pre) {
    cfg.validate();
    if (templates.empty()) throw ConfigError("segment_line: empty template set");
    if (net.config().output_len != templates.num_classes()) {
        throw ConfigError("segment_line: network classes do not match template classes");
    }
    const int expect_input = pre.normalized_width * pre.normalized_height;
    if (net.config().input_len != expect_input) {
        throw ConfigError("segment_line: network input does not match normalized size");
    }

    const std::vector<int> cuts = over_segment(line, cfg);
    const int n_cuts = static_cast<int>(cuts.size());

    DynamicResult result;
    int first_unconsumed_after_last_box = -1; // start of trailing residue, -1 = none

    int current = 0;
    while (current < n_cuts - 1) {
        struct Best {
            int end_cut = -1;
            int label = 0;
            double confidence = 0.0;
            SimilarityScore sim;
            Box tight;
        };
        Best best;
        bool accepted = false;
        bool saw_ink = false;

        const int last_try = std::min(current + cfg.max_segments_per_char, n_cuts - 1);
        for (int j = current + 1; j <= last_try; ++j) {
            auto cand = trimmed_candidate(line, cuts[current], cuts[j]);
            if (!cand) continue; // blank accumulation: skip without classifying
            saw_ink = true;
            const BinaryImage norm = normalize(*cand, pre);
            const auto [label, confidence] = net.classify(to_input(norm));
            if (confidence > best.confidence ||
                (best.end_cut < 0 && confidence == best.confidence)) {
                const auto [mlabel, sim] = best_match(norm, templates);
                best = {j, label, confidence, sim, {}};
                (void)mlabel;
            }
            if (confidence >= cfg.confidence_threshold) {
                // Boundary confirmation: the best available match must
                // agree with the recognizer and clear the floor.
                const auto [mlabel, sim] = best_match(norm, templates);
                if (mlabel == label && sim.value >= cfg.similarity_floor) {
                    best = {j, label, confidence, sim, {}};
                    // The first passing width may clip the character by a
                    // cut's worth of columns; climb while the next width
                    // still passes at least as well. Ties ride through the
                    // trailing gap, so the boundary clears any sliver the
                    // cut grid would otherwise leave behind.
                    for (int j2 = j + 1; j2 <= last_try; ++j2) {
                        auto grown = trimmed_candidate(line, cuts[current], cuts[j2]);
                        if (!grown) break;
                        const BinaryImage norm2 = normalize(*grown, pre);
                        const auto [label2, confidence2] = net.classify(to_input(norm2));
                        if (confidence2 < cfg.confidence_threshold) break;
                        const auto [mlabel2, sim2] = best_match(norm2, templates);
                        if (mlabel2 != label2 || sim2.value < best.sim.value ||
                            sim2.value < cfg.similarity_floor) {
                            break;
                        }
                        best = {j2, label2, confidence2, sim2, {}};
                    }
                    accepted = true;
                    break;
                }
            }
        }

        if (!saw_ink) {
            // Nothing but background in reach; move on quietly.
            ++current;
            continue;
        }

        const bool fallback = !accepted && best.end_cut > 0 &&
                              best.confidence > cfg.confidence_threshold / 2.0;
        if (accepted || fallback) {
            // Tight rows inside the accepted column interval.
            const Box cols{0, cuts[current], line.height(), cuts[best.end_cut]};
            const auto tight = crop(line, cols).ink_box();
            Box box = cols;
            if (tight) {
                box.top = tight->top;
                box.bottom = tight->bottom;
            }
            result.characters.push_back({box, best.label, best.confidence, best.sim});
            current = best.end_cut;
            first_unconsumed_after_last_box = -1;
        } else {
            // Skip-one recovery: give up on this cut and resume from the
            // next; the skipped stretch becomes residue unless a later
            // character supersedes it.
            if (first_unconsumed_after_last_box < 0) {
                first_unconsumed_after_last_box = cuts[current];
            }
            ++current;
        }
    }

    if (first_unconsumed_after_last_box >= 0) {
        result.residue = std::make_pair(first_unconsumed_after_last_box, line.width());
    }
    return result;
}

std::vector<DynamicResult> segment_page(const BinaryImage& page, const Mlp& net,
                                        const TemplateSet& templates,
                                        const StaticSegConfig& static_cfg,
                                        const DynamicSegConfig& cfg,
                                        const PreprocessConfig& pre) {
    std::vector<DynamicResult> results;
    for (const LineBand& band : dissect_rows(page, static_cfg)) {
        BinaryImage line_img = crop(page, band.box);
        if (cfg.strip_headline) {
            line_img = remove_headline(line_img).first;
        }
        DynamicResult line_result = segment_line(line_img, net, templates, cfg, pre);
        for (auto& ch : line_result.characters) {
            ch.box.top += band.box.top;
            ch.box.bottom += band.box.top;
            ch.box.left += band.box.left;
            ch.box.right += band.box.left;
        }
        if (line_result.residue) {
            line_result.residue->first += band.box.left;
            line_result.residue->second += band.box.left;
        }
        results.push_back(std::move(line_result));
    }
    return results;
}

} // namespace glyphseg

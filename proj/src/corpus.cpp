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

#include "glyphseg/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "glyphseg/pnm.hpp"
#include "glyphseg/rng.hpp"

namespace glyphseg {

void GlyphSet::validate() const {
    if (num_classes() < 2) throw ConfigError("glyph set needs at least 2 classes");
    if (exemplars.size() != labels.size()) throw ConfigError("glyph set labels/exemplars mismatch");
    for (std::size_t i = 0; i < exemplars.size(); ++i) {
        if (exemplars[i].empty()) throw ConfigError("class " + labels[i] + " has no exemplars");
        for (const auto& img : exemplars[i]) {
            if (img.ink_count() < 1) throw ConfigError("blank exemplar in class " + labels[i]);
        }
    }
}

void CorpusSpec::validate() const {
    if (pages < 1 || lines_per_page < 1 || glyphs_per_line < 1) {
        throw ConfigError("pages, lines_per_page and glyphs_per_line must be >= 1");
    }
    if (inter_glyph_gap.lo < 1 || inter_glyph_gap.hi < inter_glyph_gap.lo) {
        throw ConfigError("inter_glyph_gap range must be nonempty with lo >= 1");
    }
    if (inter_word_gap.lo < 1 || inter_word_gap.hi < inter_word_gap.lo) {
        throw ConfigError("inter_word_gap range must be nonempty with lo >= 1");
    }
    if (word_len.lo < 1 || word_len.hi < word_len.lo) {
        throw ConfigError("word_len range must be nonempty");
    }
    if (inter_line_gap.lo < 1 || inter_line_gap.hi < inter_line_gap.lo) {
        throw ConfigError("inter_line_gap range must be nonempty with lo >= 1");
    }
    if (scale_jitter.lo <= 0.0 || scale_jitter.hi < scale_jitter.lo) {
        throw ConfigError("scale_jitter range must be nonempty and positive");
    }
    if (rotation_jitter.hi < rotation_jitter.lo) {
        throw ConfigError("rotation_jitter range must be nonempty");
    }
    if (salt_pepper_rate < 0.0 || salt_pepper_rate > 0.1) {
        throw ConfigError("salt_pepper_rate must be in [0, 0.1]");
    }
    if (lower_modifier_rate < 0.0 || lower_modifier_rate > 1.0 ||
        touching_pair_rate < 0.0 || touching_pair_rate > 1.0) {
        throw ConfigError("rates must be in [0, 1]");
    }
    if (margin < 1) throw ConfigError("margin must be >= 1");
}

namespace {

void brush(BinaryImage& img, int r, int c, int stroke) {
    const int lo = -(stroke - 1) / 2;
    const int hi = stroke / 2;
    for (int dr = lo; dr <= hi; ++dr) {
        for (int dc = lo; dc <= hi; ++dc) {
            const int rr = r + dr;
            const int cc = c + dc;
            if (rr >= 0 && rr < img.height() && cc >= 0 && cc < img.width()) {
                img.set(rr, cc, 1);
            }
        }
    }
}

void thick_line(BinaryImage& img, double r0, double c0, double r1, double c1, int stroke) {
    const int steps =
        2 * static_cast<int>(std::max(std::abs(r1 - r0), std::abs(c1 - c0))) + 1;
    for (int k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) / steps;
        brush(img, static_cast<int>(std::lround(r0 + t * (r1 - r0))),
              static_cast<int>(std::lround(c0 + t * (c1 - c0))), stroke);
    }
}

void ring(BinaryImage& img, double cr, double cc, double radius, int stroke) {
    const int steps = std::max(16, static_cast<int>(radius * 8));
    for (int k = 0; k < steps; ++k) {
        const double a = 2.0 * std::numbers::pi_v<double> * k / steps;
        brush(img, static_cast<int>(std::lround(cr + radius * std::sin(a))),
              static_cast<int>(std::lround(cc + radius * std::cos(a))), stroke);
    }
}

// Shape ordinals follow the sorted label order below.
const char* kShapeLabels[] = {"aitch", "cup", "em", "en", "ex",
                              "plus",  "ring", "tee", "theta", "vee"};

// Italic-style slant: shift each row right by k * (rows below it).
BinaryImage shear_columns(const BinaryImage& img, double k) {
    const int extra = static_cast<int>(std::ceil(std::abs(k) * img.height())) + 1;
    BinaryImage out(img.width() + extra, img.height());
    for (int r = 0; r < img.height(); ++r) {
        const double shift = k * (img.height() - 1 - r);
        const int offset = static_cast<int>(std::lround(k >= 0 ? shift : shift - k * (img.height() - 1)));
        for (int c = 0; c < img.width(); ++c) {
            if (img.at(r, c)) out.set(r, c + offset, 1);
        }
    }
    const auto box = out.ink_box();
    return box ? crop(out, *box) : img;
}

BinaryImage draw_shape(int shape, int size, int stroke, int jit, Rng& rng) {
    BinaryImage img(size, size);
    const double lo = 0;
    const double hi = size - 1;
    const double mid = (size - 1) / 2.0;
    // Jittered anchors stay inside the canvas so no stroke vanishes.
    auto j = [&]() { return static_cast<double>(rng.uniform_int(-jit, jit)); };
    auto jc = [&](double base) { return std::clamp(base + j(), lo, hi); };
    switch (shape) {
        case 0: // aitch: two verticals and a middle bar
            thick_line(img, jc(lo), jc(lo), jc(hi), jc(lo), stroke);
            thick_line(img, jc(lo), jc(hi), jc(hi), jc(hi), stroke);
            thick_line(img, jc(mid), lo, jc(mid), hi, stroke);
            break;
        case 1: // cup: verticals and a bottom bar
            thick_line(img, jc(lo), jc(lo), jc(hi), jc(lo), stroke);
            thick_line(img, jc(lo), jc(hi), jc(hi), jc(hi), stroke);
            thick_line(img, jc(hi), lo, jc(hi), hi, stroke);
            break;
        case 2: // em: verticals and a center vee from the top
            thick_line(img, jc(lo), jc(lo), jc(hi), jc(lo), stroke);
            thick_line(img, jc(lo), jc(hi), jc(hi), jc(hi), stroke);
            thick_line(img, lo, lo, jc(mid), jc(mid), stroke);
            thick_line(img, lo, hi, jc(mid), jc(mid), stroke);
            break;
        case 3: // en: verticals and a full diagonal
            thick_line(img, jc(lo), jc(lo), jc(hi), jc(lo), stroke);
            thick_line(img, jc(lo), jc(hi), jc(hi), jc(hi), stroke);
            thick_line(img, lo, lo, hi, hi, stroke);
            break;
        case 4: // ex
            thick_line(img, jc(lo), jc(lo), jc(hi), jc(hi), stroke);
            thick_line(img, jc(lo), jc(hi), jc(hi), jc(lo), stroke);
            break;
        case 5: // plus
            thick_line(img, jc(mid), jc(lo), jc(mid), jc(hi), stroke);
            thick_line(img, jc(lo), jc(mid), jc(hi), jc(mid), stroke);
            break;
        case 6: // ring
            ring(img, jc(mid), jc(mid), mid - stroke / 2.0 - jit, stroke);
            break;
        case 7: // tee
            thick_line(img, jc(lo), jc(lo), jc(lo), jc(hi), stroke);
            thick_line(img, lo, jc(mid), jc(hi), jc(mid), stroke);
            break;
        case 8: // theta: ring with a middle bar
            ring(img, jc(mid), jc(mid), mid - stroke / 2.0 - jit, stroke);
            thick_line(img, jc(mid), lo + stroke, jc(mid), hi - stroke, stroke);
            break;
        case 9: // vee
            thick_line(img, jc(lo), jc(lo), jc(hi), jc(mid), stroke);
            thick_line(img, jc(lo), jc(hi), jc(hi), jc(mid), stroke);
            break;
        default:
            throw ConfigError("unknown shape ordinal");
    }
    const auto box = img.ink_box();
    return crop(img, *box);
}

} // namespace

GlyphSet builtin_glyphset(int exemplars_per_class, std::uint64_t seed) {
    if (exemplars_per_class < 1) throw ConfigError("exemplars_per_class must be >= 1");
    GlyphSet set;
    Rng rng(seed);
    for (int shape = 0; shape < 10; ++shape) {
        set.labels.emplace_back(kShapeLabels[shape]);
        std::vector<BinaryImage> variants;
        variants.reserve(static_cast<std::size_t>(exemplars_per_class));
        static const int kStrokes[] = {3, 4, 3};
        for (int n = 0; n < exemplars_per_class; ++n) {
            const int size = 24 + 3 * (n % 4); // 24, 27, 30, 33
            const int jit = 1 + std::min(n, 4) / 2;
            BinaryImage img = draw_shape(shape, size, kStrokes[n % 3], jit, rng);
            // Writer-style variation beyond the canonical first exemplar:
            // slant, rotation, and pixel speckle, ramping up over the
            // first few exemplars and capped at levels that keep the
            // class recognizable.
            if (n > 0) {
                const double k = rng.uniform_real(-1.0, 1.0) * std::min(0.015 * n, 0.4);
                if (k != 0.0) img = shear_columns(img, k);
                const double rot = std::min(0.7 * n, 16.0);
                const double angle = rng.uniform_real(-rot, rot);
                BinaryImage rotated = rotate_nn(img, angle);
                if (const auto rbox = rotated.ink_box()) rotated = crop(rotated, *rbox);
                // Nearest-neighbor rotation can open a blank column inside
                // a thin stroke, which would split the glyph under column
                // dissection; keep the sheared original in that case.
                bool contiguous = true;
                for (int s : project(rotated, Axis::Column).sums) {
                    if (s == 0) contiguous = false;
                }
                if (contiguous) img = rotated;
                const auto box = img.ink_box();
                if (box) img = crop(img, *box);
            }
            variants.push_back(std::move(img));
        }
        set.exemplars.push_back(std::move(variants));
    }
    set.validate();
    return set;
}

GlyphSet load_glyphset(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw ConfigError("glyph directory not found: " + dir.string());
    }
    GlyphSet set;
    std::vector<std::filesystem::path> class_dirs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    }
    std::sort(class_dirs.begin(), class_dirs.end());
    for (const auto& cd : class_dirs) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(cd)) {
            if (entry.path().extension() == ".pbm") files.push_back(entry.path());
        }
        if (files.empty()) continue;
        std::sort(files.begin(), files.end());
        std::vector<BinaryImage> imgs;
        imgs.reserve(files.size());
        for (const auto& f : files) imgs.push_back(read_pbm(f));
        set.labels.push_back(cd.filename().string());
        set.exemplars.push_back(std::move(imgs));
    }
    set.validate();
    return set;
}

void save_glyphset(const GlyphSet& glyphs, const std::filesystem::path& dir) {
    for (int cls = 0; cls < glyphs.num_classes(); ++cls) {
        const auto class_dir = dir / glyphs.labels[static_cast<std::size_t>(cls)];
        std::filesystem::create_directories(class_dir);
        for (std::size_t n = 0; n < glyphs.exemplars[static_cast<std::size_t>(cls)].size(); ++n) {
            write_pbm(glyphs.exemplars[static_cast<std::size_t>(cls)][n],
                      class_dir / (std::to_string(n) + ".pbm"));
        }
    }
}

namespace {

struct PendingGlyph {
    int label = 0;
    int exemplar = 0;
    BinaryImage image;
    int x = 0; // page column of the left edge
};

void paint(BinaryImage& page, const BinaryImage& img, int top, int left) {
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            if (img.at(r, c)) page.set(top + r, left + c, 1);
        }
    }
}

} // namespace

std::pair<std::vector<BinaryImage>, GroundTruth> generate(const GlyphSet& glyphs,
                                                          const CorpusSpec& spec) {
    glyphs.validate();
    spec.validate();
    Rng rng(spec.seed);

    std::vector<BinaryImage> pages;
    GroundTruth truth;
    pages.reserve(static_cast<std::size_t>(spec.pages));
    truth.pages.resize(static_cast<std::size_t>(spec.pages));

    constexpr int kBarThickness = 2;
    constexpr int kStemHeight = 4;
    constexpr int kTouchOverlap = 2;

    for (int pg = 0; pg < spec.pages; ++pg) {
        PageTruth& page_truth = truth.pages[static_cast<std::size_t>(pg)];

        struct LinePlan {
            std::vector<PendingGlyph> glyphs;
            std::vector<std::pair<int, int>> spaces; // relative columns
            int width = 0;
            int glyph_height = 0; // tallest glyph
            int touch_index = -1;
            int modifier_index = -1;
            int modifier_width = 0, modifier_height = 0;
        };
        std::vector<LinePlan> plans;
        plans.reserve(static_cast<std::size_t>(spec.lines_per_page));

        for (int li = 0; li < spec.lines_per_page; ++li) {
            LinePlan plan;
            if (spec.touching_pair_rate > 0.0 && spec.glyphs_per_line >= 2 &&
                rng.bernoulli(spec.touching_pair_rate)) {
                plan.touch_index = rng.uniform_int(0, spec.glyphs_per_line - 2);
            }
            if (spec.lower_modifier_rate > 0.0 && rng.bernoulli(spec.lower_modifier_rate)) {
                plan.modifier_index = rng.uniform_int(0, spec.glyphs_per_line - 1);
            }

            int x = 0;
            int until_word_break = rng.uniform_int(spec.word_len.lo, spec.word_len.hi);
            for (int gi = 0; gi < spec.glyphs_per_line; ++gi) {
                PendingGlyph pg_entry;
                pg_entry.label = rng.uniform_int(0, glyphs.num_classes() - 1);
                pg_entry.exemplar = rng.uniform_int(
                    0, static_cast<int>(glyphs.exemplars[pg_entry.label].size()) - 1);
                BinaryImage img = glyphs.exemplars[pg_entry.label][pg_entry.exemplar];
                const double s = rng.uniform_real(spec.scale_jitter.lo, spec.scale_jitter.hi);
                if (s != 1.0) {
                    img = scale_nn(img, std::max(1, static_cast<int>(std::lround(img.width() * s))),
                                   std::max(1, static_cast<int>(std::lround(img.height() * s))));
                }
                if (spec.rotation_jitter.lo != 0.0 || spec.rotation_jitter.hi != 0.0) {
                    const double a =
                        rng.uniform_real(spec.rotation_jitter.lo, spec.rotation_jitter.hi);
                    if (a != 0.0) {
                        img = rotate_nn(img, a);
                        img = crop(img, *img.ink_box());
                    }
                }

                if (gi > 0) {
                    if (gi - 1 == plan.touch_index) {
                        x = std::max(0, x - kTouchOverlap);
                    } else if (--until_word_break == 0) {
                        const int gap = rng.uniform_int(spec.inter_word_gap.lo, spec.inter_word_gap.hi);
                        plan.spaces.emplace_back(x, x + gap);
                        x += gap;
                        until_word_break = rng.uniform_int(spec.word_len.lo, spec.word_len.hi);
                    } else {
                        x += rng.uniform_int(spec.inter_glyph_gap.lo, spec.inter_glyph_gap.hi);
                    }
                }
                pg_entry.x = x;
                x += img.width();
                plan.glyph_height = std::max(plan.glyph_height, img.height());
                pg_entry.image = std::move(img);
                plan.glyphs.push_back(std::move(pg_entry));
            }
            plan.width = x;
            if (plan.modifier_index >= 0) {
                const auto& host = plan.glyphs[static_cast<std::size_t>(plan.modifier_index)];
                plan.modifier_width = std::max(3, host.image.width() * 7 / 10);
                plan.modifier_height = plan.glyph_height;
            }
            plans.push_back(std::move(plan));
        }

        int content_width = 0;
        for (const auto& plan : plans) content_width = std::max(content_width, plan.width);
        const int page_w = spec.page_width > 0 ? spec.page_width : content_width + 2 * spec.margin;

        int y = spec.margin;
        struct LineLayout {
            int top = 0;
            int height = 0;
        };
        std::vector<LineLayout> layouts;
        for (std::size_t li = 0; li < plans.size(); ++li) {
            if (li > 0) y += rng.uniform_int(spec.inter_line_gap.lo, spec.inter_line_gap.hi);
            LineLayout lay;
            lay.top = y;
            lay.height = plans[li].glyph_height;
            if (spec.headline_bar) lay.height += kBarThickness;
            if (plans[li].modifier_index >= 0) lay.height += kStemHeight + plans[li].modifier_height;
            layouts.push_back(lay);
            y += lay.height;
        }
        const int page_h = spec.page_height > 0 ? spec.page_height : y + spec.margin;

        if (spec.page_width > 0 || spec.page_height > 0) {
            for (std::size_t li = 0; li < plans.size(); ++li) {
                if (plans[li].width + 2 * spec.margin > page_w ||
                    layouts[li].top + layouts[li].height + spec.margin > page_h) {
                    throw ConfigError("glyph layout does not fit the fixed page size");
                }
            }
        }

        BinaryImage page(page_w, page_h);
        for (std::size_t li = 0; li < plans.size(); ++li) {
            const auto& plan = plans[li];
            const auto& lay = layouts[li];
            LineTruth line_truth;

            int glyph_top = lay.top;
            if (spec.headline_bar) {
                // Bar sits directly above the glyph tops; rows stay
                // contiguous so the band does not split.
                const int bar_left = spec.margin + plan.glyphs.front().x;
                const int bar_right = spec.margin + plan.width;
                for (int r = lay.top; r < lay.top + kBarThickness; ++r) {
                    for (int c = bar_left; c < bar_right; ++c) page.set(r, c, 1);
                }
                line_truth.headline_row = lay.top;
                glyph_top += kBarThickness;
            }

            for (std::size_t gi = 0; gi < plan.glyphs.size(); ++gi) {
                const auto& pending = plan.glyphs[gi];
                const int left = spec.margin + pending.x;
                paint(page, pending.image, glyph_top, left);
                PlacedGlyph placed;
                placed.label = pending.label;
                placed.exemplar = pending.exemplar;
                placed.box = Box{glyph_top, left, glyph_top + pending.image.height(),
                                 left + pending.image.width()};
                placed.touching = plan.touch_index >= 0 &&
                                  (static_cast<int>(gi) == plan.touch_index ||
                                   static_cast<int>(gi) == plan.touch_index + 1);
                line_truth.glyphs.push_back(placed);
            }
            for (auto [c0, c1] : plan.spaces) {
                line_truth.spaces.emplace_back(spec.margin + c0, spec.margin + c1);
            }

            if (plan.touch_index >= 0) {
                // The pair must share a contiguous column run; bridge any
                // blank column the overlap left behind.
                const Box& a = line_truth.glyphs[static_cast<std::size_t>(plan.touch_index)].box;
                const Box& b =
                    line_truth.glyphs[static_cast<std::size_t>(plan.touch_index) + 1].box;
                const int row_top = std::max(a.top, b.top);
                const int row_bottom = std::min(a.bottom, b.bottom);
                const int mid = std::clamp((row_top + row_bottom) / 2, a.top, a.bottom - 1);
                for (int c = a.left; c < b.right; ++c) {
                    bool has_ink = false;
                    for (int r = std::min(a.top, b.top); r < std::max(a.bottom, b.bottom); ++r) {
                        if (page.at(r, c)) {
                            has_ink = true;
                            break;
                        }
                    }
                    if (!has_ink) {
                        page.set(mid, c, 1);
                        page.set(std::min(mid + 1, a.bottom - 1), c, 1);
                    }
                }
            }

            if (plan.modifier_index >= 0) {
                const auto& host = line_truth.glyphs[static_cast<std::size_t>(plan.modifier_index)];
                const int stem_col = (host.box.left + host.box.right) / 2 - 1;
                const int stem_top = glyph_top + plan.glyph_height;
                for (int r = stem_top; r < stem_top + kStemHeight; ++r) {
                    page.set(r, stem_col, 1);
                    page.set(r, stem_col + 1, 1);
                }
                const int blob_top = stem_top + kStemHeight;
                const int blob_left =
                    std::max(0, (host.box.left + host.box.right) / 2 - plan.modifier_width / 2);
                for (int r = blob_top; r < blob_top + plan.modifier_height; ++r) {
                    for (int c = blob_left; c < blob_left + plan.modifier_width; ++c) {
                        page.set(r, c, 1);
                    }
                }
                line_truth.modifiers.push_back(
                    Box{stem_top, blob_left, blob_top + plan.modifier_height,
                        blob_left + plan.modifier_width});
            }

            line_truth.band = Box{lay.top, 0, lay.top + lay.height, page_w};
            page_truth.lines.push_back(std::move(line_truth));
        }

        if (spec.salt_pepper_rate > 0.0) {
            for (int r = 0; r < page.height(); ++r) {
                for (int c = 0; c < page.width(); ++c) {
                    if (rng.bernoulli(spec.salt_pepper_rate)) {
                        page.set(r, c, page.at(r, c) ^ 1);
                    }
                }
            }
        }
        pages.push_back(std::move(page));
    }
    return {std::move(pages), std::move(truth)};
}

} // namespace glyphseg

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
#include <cmath>

#include "glyphseg/corpus.hpp"
#include "glyphseg/dynamic_seg.hpp"
#include "glyphseg/eval.hpp"
#include "glyphseg/rng.hpp"

using namespace glyphseg;

namespace {

// Small, fast setup shared by the scan tests: builtin glyphs at a compact
// normalized size, trained until they classify crisply.
struct Recognizer {
    GlyphSet glyphs;
    PreprocessConfig pre;
    TemplateSet templates;
    Mlp net;

    Recognizer() {
        glyphs = builtin_glyphset(3, 1001);
        pre.normalized_width = 12;
        pre.normalized_height = 12;
        pre.deskew_range = 0.0;
        templates = templates_from_glyphset(glyphs, pre);

        TrainData data;
        data.num_classes = glyphs.num_classes();
        for (int cls = 0; cls < glyphs.num_classes(); ++cls) {
            for (const auto& img : glyphs.exemplars[static_cast<std::size_t>(cls)]) {
                const BinaryImage norm = normalize(img, pre);
                std::vector<double> input;
                for (auto p : norm.pixels()) input.push_back(p ? 1.0 : 0.0);
                data.inputs.push_back(std::move(input));
                data.labels.push_back(cls);
            }
        }
        TrainSpec spec;
        spec.method = TrainMethod::GDMALRBP;
        spec.epochs = 700;
        spec.seed = 5;
        const MlpConfig cfg = MlpConfig::with_default_hidden(12 * 12, glyphs.num_classes());
        net = train(Mlp::init(cfg, 5), data, spec).first;
    }
};

const Recognizer& recognizer() {
    static const Recognizer r;
    return r;
}

// A line image with the given glyphs pasted at fixed gaps.
BinaryImage make_line(const std::vector<BinaryImage>& imgs, int gap, int width_pad = 0) {
    int width = width_pad;
    int height = 0;
    for (const auto& img : imgs) {
        width += img.width() + gap;
        height = std::max(height, img.height());
    }
    BinaryImage line(width + gap, height);
    int x = gap;
    for (const auto& img : imgs) {
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c) {
                if (img.at(r, c)) line.set(r, x + c, 1);
            }
        }
        x += img.width() + gap;
    }
    return line;
}

} // namespace

TEST_CASE("over_segment: width 400 at 2.5% gives 41 cuts every 10 columns") {
    const BinaryImage line(400, 10);
    const auto cuts = over_segment(line, {});
    REQUIRE(cuts.size() == 41);
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        CHECK(cuts[k] == static_cast<int>(k) * 10);
    }
}

TEST_CASE("over_segment: a narrow line degenerates to one segment") {
    const BinaryImage line(10, 4);
    const auto cuts = over_segment(line, {});
    CHECK(cuts == std::vector<int>{0, 10});
}

TEST_CASE("over_segment: random widths match the rounding oracle") {
    Rng rng(61);
    DynamicSegConfig cfg;
    for (int trial = 0; trial < 50; ++trial) {
        const int width = rng.uniform_int(40, 2000);
        const BinaryImage line(width, 3);
        const auto cuts = over_segment(line, cfg);
        CHECK(cuts.front() == 0);
        CHECK(cuts.back() == width);
        for (std::size_t k = 1; k < cuts.size(); ++k) CHECK(cuts[k] > cuts[k - 1]);
        // Oracle: dedup of round(k * f * width) for k = 0..floor(1/f).
        std::vector<int> expect;
        const int k_max = static_cast<int>(std::floor(1.0 / cfg.interval_fraction + 1e-9));
        for (int k = 0; k <= k_max; ++k) {
            const int cut =
                static_cast<int>(std::lround(k * cfg.interval_fraction * width));
            if (expect.empty() || cut > expect.back()) expect.push_back(cut);
        }
        if (expect.back() != width) expect.push_back(width);
        CHECK(cuts == expect);
    }
}

TEST_CASE("segment_line: a single trained glyph is found and labeled") {
    const auto& r = recognizer();
    const int label = 4; // "ex"
    const BinaryImage& glyph = r.glyphs.exemplars[label][0];
    const BinaryImage line = make_line({glyph}, 30, 300);
    const DynamicResult res = segment_line(line, r.net, r.templates, {}, r.pre);
    REQUIRE(res.characters.size() == 1);
    CHECK(res.characters[0].label == label);
    CHECK_FALSE(res.residue.has_value());
    // The box covers the glyph's ink columns to cut granularity.
    const auto ink = line.ink_box();
    CHECK(res.characters[0].box.left <= ink->left);
    CHECK(res.characters[0].box.right >= ink->right);
}

TEST_CASE("segment_line: pure noise yields no characters and full residue") {
    Rng rng(62);
    BinaryImage line(200, 24);
    for (int r = 0; r < 24; ++r) {
        for (int c = 0; c < 200; ++c) line.set(r, c, rng.bernoulli(0.5) ? 1 : 0);
    }
    const auto& r = recognizer();
    // A net that rejects everything: zero weights, strongly negative
    // output biases, so no acceptance (and no fallback) ever fires.
    Mlp rejector = Mlp::init(r.net.config(), 1);
    for (auto& layer : rejector.weights()) std::fill(layer.begin(), layer.end(), 0.0);
    for (auto& layer : rejector.biases()) std::fill(layer.begin(), layer.end(), -6.0);
    const DynamicResult res = segment_line(line, rejector, r.templates, {}, r.pre);
    CHECK(res.characters.empty());
    REQUIRE(res.residue.has_value());
    CHECK(res.residue->first == 0);
    CHECK(res.residue->second == line.width());
}

TEST_CASE("segment_line: two glyphs come out in order with cut-aligned boxes") {
    const auto& r = recognizer();
    const BinaryImage line =
        make_line({r.glyphs.exemplars[6][0], r.glyphs.exemplars[9][0]}, 26, 250);
    const DynamicResult res = segment_line(line, r.net, r.templates, {}, r.pre);
    REQUIRE(res.characters.size() == 2);
    CHECK(res.characters[0].label == 6);
    CHECK(res.characters[1].label == 9);
    CHECK(res.characters[0].box.right <= res.characters[1].box.left);

    const auto cuts = over_segment(line, {});
    for (const auto& ch : res.characters) {
        CHECK(std::find(cuts.begin(), cuts.end(), ch.box.left) != cuts.end());
        CHECK(std::find(cuts.begin(), cuts.end(), ch.box.right) != cuts.end());
    }
}

TEST_CASE("segment_line: truncating at an accepted boundary reproduces the prefix") {
    const auto& r = recognizer();
    const BinaryImage line = make_line(
        {r.glyphs.exemplars[1][0], r.glyphs.exemplars[4][1], r.glyphs.exemplars[7][0]}, 24, 200);
    const DynamicResult full = segment_line(line, r.net, r.templates, {}, r.pre);
    REQUIRE(full.characters.size() >= 2);
    const int boundary = full.characters[0].box.right;
    const BinaryImage prefix = crop(line, Box{0, 0, line.height(), boundary});
    // The scan never looked right of an accepted boundary, so the prefix
    // reproduces the first character exactly.
    DynamicSegConfig cfg;
    cfg.interval_fraction = 0.025 * line.width() / prefix.width(); // keep cut pitch
    const DynamicResult part = segment_line(prefix, r.net, r.templates, cfg, r.pre);
    REQUIRE(!part.characters.empty());
    CHECK(part.characters[0].box.left == full.characters[0].box.left);
    CHECK(part.characters[0].box.right == full.characters[0].box.right);
    CHECK(part.characters[0].label == full.characters[0].label);
}

TEST_CASE("segment_page: blank page gives no lines") {
    const auto& r = recognizer();
    const auto results = segment_page(BinaryImage(100, 40), r.net, r.templates, {}, {}, r.pre);
    CHECK(results.empty());
}

TEST_CASE("segment_page: per-line results are independent of other lines") {
    const auto& r = recognizer();
    CorpusSpec spec;
    spec.seed = 77;
    spec.pages = 1;
    spec.lines_per_page = 3;
    spec.glyphs_per_line = 4;
    spec.scale_jitter = {1.0, 1.0};
    const auto [pages, truth] = generate(r.glyphs, spec);
    const auto results = segment_page(pages[0], r.net, r.templates, {}, {}, r.pre);
    REQUIRE(results.size() == 3);

    // Re-run one line in isolation: same labels.
    const LineTruth& line1 = truth.pages[0].lines[1];
    const BinaryImage line_img = crop(pages[0], line1.band);
    const DynamicResult solo = segment_line(line_img, r.net, r.templates, {}, r.pre);
    REQUIRE(solo.characters.size() == results[1].characters.size());
    for (std::size_t i = 0; i < solo.characters.size(); ++i) {
        CHECK(solo.characters[i].label == results[1].characters[i].label);
    }
}

TEST_CASE("dynamic config validation") {
    DynamicSegConfig cfg;
    cfg.interval_fraction = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.max_segments_per_char = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

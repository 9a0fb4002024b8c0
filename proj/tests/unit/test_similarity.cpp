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

#include <filesystem>

#include "glyphseg/pnm.hpp"
#include "glyphseg/rng.hpp"
#include "glyphseg/similarity.hpp"

using namespace glyphseg;

namespace {

BinaryImage random_binary(Rng& rng, int w, int h, double p = 0.5) {
    BinaryImage img(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) img.set(r, c, rng.bernoulli(p) ? 1 : 0);
    }
    return img;
}

// Independent oracle with explicit pixel loops.
double similarity_oracle(const BinaryImage& seg, const BinaryImage& ref, SimilarityMode mode) {
    double num = 0.0;
    int ref_ink = 0;
    for (int r = 0; r < seg.height(); ++r) {
        for (int c = 0; c < seg.width(); ++c) {
            if (mode == SimilarityMode::Literal) {
                num += seg.at(r, c);
            } else {
                num += (seg.at(r, c) != ref.at(r, c)) ? 1 : 0;
            }
            ref_ink += ref.at(r, c);
        }
    }
    return (1.0 - num / ref_ink) * 100.0;
}

} // namespace

TEST_CASE("literal mode reproduces the printed formula") {
    // 14 ink pixels against a 100-ink reference: (1 - 14/100) * 100 = 86.
    BinaryImage seg(20, 10), ref(20, 10);
    int placed = 0;
    for (int r = 0; r < 10 && placed < 14; ++r) {
        for (int c = 0; c < 20 && placed < 14; c += 2) {
            seg.set(r, c, 1);
            ++placed;
        }
    }
    int ref_placed = 0;
    for (int r = 0; r < 10; ++r) {
        for (int c = 0; c < 20 && ref_placed < 100; ++c) {
            ref.set(r, c, 1);
            ++ref_placed;
        }
    }
    CHECK(similarity(seg, ref, SimilarityMode::Literal).value == doctest::Approx(86.0));
}

TEST_CASE("mismatch mode: identical images score 100") {
    Rng rng(51);
    const BinaryImage img = random_binary(rng, 8, 8);
    if (img.ink_count() == 0) return;
    CHECK(similarity(img, img, SimilarityMode::Mismatch).value == doctest::Approx(100.0));
    // Literal mode scores 0 for a perfect match: the printed formula's
    // quirk the mismatch mode exists to fix.
    CHECK(similarity(img, img, SimilarityMode::Literal).value == doctest::Approx(0.0));
}

TEST_CASE("mismatch mode: inverting a half-ink image scores -100") {
    BinaryImage ref(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) ref.set(r, c, (r < 2) ? 1 : 0);
    }
    const BinaryImage seg = invert(ref);
    CHECK(similarity(seg, ref, SimilarityMode::Mismatch).value == doctest::Approx(-100.0));
}

TEST_CASE("similarity matches the pixel-loop oracle exactly") {
    Rng rng(52);
    for (int trial = 0; trial < 25; ++trial) {
        const BinaryImage ref = random_binary(rng, 9, 7);
        const BinaryImage seg = random_binary(rng, 9, 7);
        if (ref.ink_count() == 0) continue;
        for (SimilarityMode mode : {SimilarityMode::Literal, SimilarityMode::Mismatch}) {
            CHECK(similarity(seg, ref, mode).value == similarity_oracle(seg, ref, mode));
        }
    }
}

TEST_CASE("similarity errors: shape mismatch and blank reference") {
    BinaryImage a(4, 4, 1), b(5, 4, 1), blank(4, 4);
    CHECK_THROWS_AS(similarity(a, b, SimilarityMode::Mismatch), ShapeError);
    CHECK_THROWS_AS(similarity(a, blank, SimilarityMode::Mismatch), Error);
}

namespace {

TemplateSet toy_templates(Rng& rng, int classes, int per_class, int size = 8) {
    std::vector<std::string> names;
    std::vector<CharacterTemplate> templates;
    for (int cls = 0; cls < classes; ++cls) {
        names.push_back("t" + std::to_string(cls));
        for (int n = 0; n < per_class; ++n) {
            BinaryImage img = random_binary(rng, size, size, 0.5);
            img.set(0, 0, 1); // at least one ink pixel
            templates.push_back({cls, std::move(img)});
        }
    }
    return TemplateSet(std::move(names), std::move(templates));
}

} // namespace

TEST_CASE("best_match: a template matches itself at 100") {
    Rng rng(53);
    const TemplateSet set = toy_templates(rng, 5, 2);
    const auto& t = set.templates()[4];
    const auto [label, score] = best_match(t.image, set);
    CHECK(label == t.label);
    CHECK(score.value == doctest::Approx(100.0));
}

TEST_CASE("best_match: equidistant templates resolve to the lower ordinal") {
    // Two templates differing from the probe by the same mismatch count
    // and with equal ink.
    BinaryImage probe(4, 1);
    probe.set(0, 0, 1);
    probe.set(0, 1, 1);
    BinaryImage t0 = probe, t1 = probe;
    t0.set(0, 2, 1); // one extra pixel each
    t1.set(0, 3, 1);
    TemplateSet set({"a", "b"}, {{0, t0}, {1, t1}});
    const auto [label, score] = best_match(probe, set);
    CHECK(label == 0);
}

TEST_CASE("best_match agrees with exhaustive scoring") {
    Rng rng(54);
    const TemplateSet set = toy_templates(rng, 10, 1);
    const BinaryImage probe = random_binary(rng, 8, 8);
    const auto [label, score] = best_match(probe, set);
    double best = -1e9;
    int best_label = -1;
    for (const auto& t : set.templates()) {
        const double s = similarity(probe, t.image, SimilarityMode::Mismatch).value;
        if (s > best) {
            best = s;
            best_label = t.label;
        }
    }
    CHECK(label == best_label);
    CHECK(score.value == doctest::Approx(best));
}

TEST_CASE("best_match on an empty set is a configuration error") {
    TemplateSet empty;
    BinaryImage probe(4, 4, 1);
    CHECK_THROWS_AS(best_match(probe, empty), ConfigError);
}

TEST_CASE("template directory loader: <label>_<writer>_<n>.pbm naming") {
    const auto dir = std::filesystem::temp_directory_path() / "glyphseg_templates";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    Rng rng(55);
    // Two labels, two writers each; files deliberately written unsorted.
    for (const char* name : {"beta_w1_0.pbm", "alpha_w2_0.pbm", "alpha_w1_0.pbm"}) {
        BinaryImage img = random_binary(rng, 10, 10, 0.5);
        img.set(5, 5, 1);
        write_pbm(img, dir / name);
    }
    PreprocessConfig pre;
    pre.normalized_width = 8;
    pre.normalized_height = 8;
    pre.deskew_range = 0.0;
    const TemplateSet set = TemplateSet::load_dir(dir, pre);
    CHECK(set.label_names() == std::vector<std::string>{"alpha", "beta"});
    REQUIRE(set.templates().size() == 3);
    CHECK(set.templates()[0].label == 0);
    CHECK(set.templates()[2].label == 1);
    for (const auto& t : set.templates()) {
        CHECK(t.image.width() == 8);
        CHECK(t.image.height() == 8);
    }
    CHECK_THROWS_AS(TemplateSet::load_dir(dir / "missing", pre), ConfigError);
}

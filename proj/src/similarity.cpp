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

#include "glyphseg/similarity.hpp"

#include <algorithm>
#include <map>

#include "glyphseg/kernels.hpp"
#include "glyphseg/pnm.hpp"

namespace glyphseg {

TemplateSet::TemplateSet(std::vector<std::string> label_names,
                         std::vector<CharacterTemplate> templates)
    : label_names_(std::move(label_names)), templates_(std::move(templates)) {
    for (const auto& t : templates_) {
        if (t.label < 0 || t.label >= num_classes()) {
            throw ConfigError("template label ordinal out of range");
        }
        if (t.image.ink_count() < 1) throw ConfigError("blank character template");
    }
    std::stable_sort(templates_.begin(), templates_.end(),
                     [](const CharacterTemplate& a, const CharacterTemplate& b) {
                         return a.label < b.label;
                     });
}

TemplateSet TemplateSet::load_dir(const std::filesystem::path& dir, const PreprocessConfig& pre) {
    if (!std::filesystem::is_directory(dir)) {
        throw ConfigError("template directory not found: " + dir.string());
    }
    // <label>_<writer>_<n>.pbm
    std::map<std::string, std::vector<std::filesystem::path>> by_label;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".pbm") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        const std::string stem = f.stem().string();
        const auto underscore = stem.find('_');
        if (underscore == std::string::npos || underscore == 0) {
            throw ConfigError("template file name must be <label>_<writer>_<n>.pbm: " + f.string());
        }
        by_label[stem.substr(0, underscore)].push_back(f);
    }
    if (by_label.empty()) throw ConfigError("no templates in " + dir.string());

    std::vector<std::string> names;
    names.reserve(by_label.size());
    for (const auto& [label, _] : by_label) names.push_back(label);

    std::vector<CharacterTemplate> templates;
    for (int ordinal = 0; ordinal < static_cast<int>(names.size()); ++ordinal) {
        for (const auto& f : by_label[names[ordinal]]) {
            templates.push_back({ordinal, normalize(read_pbm(f), pre)});
        }
    }
    return TemplateSet(std::move(names), std::move(templates));
}

SimilarityScore similarity(const BinaryImage& seg, const BinaryImage& ref, SimilarityMode mode) {
    if (seg.width() != ref.width() || seg.height() != ref.height()) {
        throw ShapeError("similarity: image dimensions differ");
    }
    const int ref_ink = ref.ink_count();
    if (ref_ink < 1) throw Error("similarity: blank reference image");
    const auto& ops = kernels::active();
    double numerator;
    if (mode == SimilarityMode::Literal) {
        numerator = ops.sum_u8(seg.pixels().data(), seg.pixels().size());
    } else {
        numerator = ops.mismatch_u8(seg.pixels().data(), ref.pixels().data(), seg.pixels().size());
    }
    return {(1.0 - numerator / static_cast<double>(ref_ink)) * 100.0, mode};
}

std::pair<int, SimilarityScore> best_match(const BinaryImage& seg, const TemplateSet& templates) {
    if (templates.empty()) throw ConfigError("best_match: empty template set");
    int best_label = -1;
    SimilarityScore best{};
    for (const auto& t : templates.templates()) {
        const SimilarityScore s = similarity(seg, t.image, SimilarityMode::Mismatch);
        if (best_label < 0 || s.value > best.value) {
            best_label = t.label;
            best = s;
        }
    }
    return {best_label, best};
}

} // namespace glyphseg

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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "glyphseg/preprocess.hpp"
#include "glyphseg/raster.hpp"

namespace glyphseg {

enum class SimilarityMode {
    Literal,  // S = (1 - sum(seg) / sum(ref)) * 100; 0 for a perfect match
    Mismatch, // S = (1 - sum|seg - ref| / sum(ref)) * 100; 100 for a perfect match
};

struct SimilarityScore {
    double value = 0.0; // percentage, at most 100
    SimilarityMode mode = SimilarityMode::Mismatch;
};

/// Labeled reference glyph at the normalized size.
struct CharacterTemplate {
    int label = 0; // ordinal into the owning set's label list
    BinaryImage image;
};

/// Immutable, label-ordered template collection. Label ordinals follow the
/// lexicographic order of the label names.
class TemplateSet {
public:
    TemplateSet() = default;
    TemplateSet(std::vector<std::string> label_names, std::vector<CharacterTemplate> templates);

    /// Load `<label>_<writer>_<n>.pbm` files from a directory, normalizing
    /// each to the configured size.
    static TemplateSet load_dir(const std::filesystem::path& dir, const PreprocessConfig& pre);

    const std::vector<CharacterTemplate>& templates() const { return templates_; }
    const std::vector<std::string>& label_names() const { return label_names_; }
    int num_classes() const { return static_cast<int>(label_names_.size()); }
    bool empty() const { return templates_.empty(); }

private:
    std::vector<std::string> label_names_;
    std::vector<CharacterTemplate> templates_; // sorted by label ordinal
};

/// Pixel-count similarity between two same-sized binary images. Throws
/// ShapeError on a dimension mismatch and Error when ref is blank.
SimilarityScore similarity(const BinaryImage& seg, const BinaryImage& ref, SimilarityMode mode);

/// The template with the highest mismatch-mode score. Ties break toward
/// the lowest label ordinal. Throws ConfigError on an empty set.
std::pair<int, SimilarityScore> best_match(const BinaryImage& seg, const TemplateSet& templates);

} // namespace glyphseg

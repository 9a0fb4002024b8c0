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
#include <vector>

#include "glyphseg/corpus.hpp"
#include "glyphseg/dynamic_seg.hpp"
#include "glyphseg/mlp.hpp"
#include "glyphseg/similarity.hpp"
#include "glyphseg/static_seg.hpp"

namespace glyphseg {

/// Mismatch similarity of a raw segmented crop against its source
/// exemplar, both centered on a shared canvas without rescaling. Size
/// variation between the crop and the reference shows up directly, which
/// is the static method's documented weakness.
double raw_frame_similarity(const BinaryImage& seg_crop, const BinaryImage& ref);

/// Scale steps covering the default corpus size jitter; used to expand
/// templates and recognizer training data so size-jittered candidates
/// meet references produced by the same resampling chain.
std::vector<double> default_scale_variants();

/// Half-density grid over the same range; enough for the recognizer,
/// which generalizes between steps, at half the training cost.
std::vector<double> coarse_scale_variants();

/// Every exemplar normalized into a reference template, plus rescaled
/// variants of each; best_match then has a genuine "best available match"
/// to confirm against.
TemplateSet templates_from_glyphset(const GlyphSet& glyphs, const PreprocessConfig& pre,
                                    const std::vector<double>& scale_variants = default_scale_variants());

/// Labeled training data for the recognizer: every exemplar normalized,
/// augmented with rescaled variants like the template set.
TrainData train_data_from_glyphset(const GlyphSet& glyphs, const PreprocessConfig& pre,
                                   const std::vector<double>& scale_variants = coarse_scale_variants());

struct ClassRow {
    std::string label;
    double mean_similarity = 0.0;
    int matched = 0;
};

/// A detection whose extent covers several ground-truth boxes (the merged
/// output the static method produces on touching characters).
struct MergedDetection {
    int page = 0;
    int line = 0;
    Box box;
    int covered_truth = 0;
};

struct StaticReport {
    std::vector<ClassRow> per_class; // Table 1 analog
    double mean_similarity = 0.0;
    double box_count_accuracy = 0.0;   // % lines whose box count equals truth
    double detection_match_rate = 0.0; // % detections matching truth at IoU >= 0.3
    int truth_count = 0;
    int detected_count = 0;
    std::vector<MergedDetection> merged;
};

/// Static dissection scored against the generator's ground truth.
StaticReport evaluate_static(const std::vector<BinaryImage>& pages, const GroundTruth& truth,
                             const GlyphSet& glyphs, const StaticSegConfig& cfg);

struct TrainingCell {
    std::vector<double> final_mse;  // per seed
    std::vector<double> class_rate; // per seed, percent on the held-out split
    double median_mse = 0.0;
    double median_rate = 0.0;
};

struct TrainingReport {
    std::vector<TrainMethod> methods;
    std::vector<int> epochs_grid;
    std::vector<std::vector<TrainingCell>> cells; // [method][grid point]
    /// Final networks per method at the largest grid point, first seed.
    std::vector<Mlp> nets_first_seed;
    /// Snapshots for the first seed of the last method (GDMALRBP),
    /// one per grid point, for the comparison-table columns.
    std::vector<Mlp> selected_snapshots;
    std::vector<std::string> labels;
};

/// Train every method over the seed list, reading the MSE curve and the
/// held-out classification rate at each grid point from one run per
/// (method, seed). Requires at least 2 exemplars per class.
TrainingReport evaluate_training(const GlyphSet& glyphs, const PreprocessConfig& pre,
                                 const TrainSpec& base, const std::vector<int>& epochs_grid,
                                 const std::vector<std::uint64_t>& seeds);

struct DynamicColumn {
    int sessions = 0;
    std::vector<ClassRow> per_class;
    double mean_similarity = 0.0;
    double count_accuracy = 0.0; // % lines whose emitted count equals truth
    int emitted = 0;
    int matched = 0;
    int residue_lines = 0;
};

/// Comparison table: the static column next to one dynamic column per
/// supplied (sessions, net) pair.
struct ComparisonReport {
    StaticReport static_side;
    std::vector<DynamicColumn> dynamic;
};

ComparisonReport evaluate_dynamic(const std::vector<BinaryImage>& pages, const GroundTruth& truth,
                                  const GlyphSet& glyphs,
                                  const std::vector<std::pair<int, const Mlp*>>& nets,
                                  const TemplateSet& templates, const StaticSegConfig& static_cfg,
                                  const DynamicSegConfig& dyn_cfg, const PreprocessConfig& pre);

// Report emission: aligned text and CSV with a fixed, documented column
// order. Identical inputs produce identical bytes.
void write_table1(const StaticReport& report, const std::filesystem::path& csv,
                  const std::filesystem::path& txt);
void write_table2(const TrainingReport& report, const std::filesystem::path& csv,
                  const std::filesystem::path& txt);
void write_table3(const TrainingReport& report, const std::filesystem::path& csv,
                  const std::filesystem::path& txt);
void write_table4(const ComparisonReport& report, const std::filesystem::path& csv,
                  const std::filesystem::path& txt);
void write_summary(const ComparisonReport& report, const std::filesystem::path& csv,
                   const std::filesystem::path& txt);

/// Trend checks over the report tables; returns human-readable
/// violations, empty when all trends hold.
std::vector<std::string> check_trends(const TrainingReport& training,
                                      const ComparisonReport& comparison);

} // namespace glyphseg

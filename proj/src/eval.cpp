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

#include "glyphseg/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace glyphseg {

double raw_frame_similarity(const BinaryImage& seg_crop, const BinaryImage& ref) {
    const int w = std::max(seg_crop.width(), ref.width());
    const int h = std::max(seg_crop.height(), ref.height());
    auto embed = [&](const BinaryImage& img) {
        BinaryImage canvas(w, h);
        const int top = (h - img.height()) / 2;
        const int left = (w - img.width()) / 2;
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c) {
                if (img.at(r, c)) canvas.set(top + r, left + c, 1);
            }
        }
        return canvas;
    };
    return similarity(embed(seg_crop), embed(ref), SimilarityMode::Mismatch).value;
}

std::vector<double> default_scale_variants() {
    std::vector<double> scales;
    for (int k = 0; k <= 16; ++k) scales.push_back(0.8 + 0.025 * k);
    return scales;
}

std::vector<double> coarse_scale_variants() {
    std::vector<double> scales;
    for (int k = 0; k <= 8; ++k) scales.push_back(0.8 + 0.05 * k);
    return scales;
}

namespace {

BinaryImage scaled_exemplar(const BinaryImage& img, double s) {
    if (s == 1.0) return img;
    const int w = std::max(1, static_cast<int>(std::lround(img.width() * s)));
    const int h = std::max(1, static_cast<int>(std::lround(img.height() * s)));
    return scale_nn(img, w, h);
}

} // namespace

TemplateSet templates_from_glyphset(const GlyphSet& glyphs, const PreprocessConfig& pre,
                                    const std::vector<double>& scale_variants) {
    glyphs.validate();
    if (scale_variants.empty()) throw ConfigError("at least one template scale required");
    std::vector<CharacterTemplate> templates;
    for (int cls = 0; cls < glyphs.num_classes(); ++cls) {
        for (const auto& img : glyphs.exemplars[static_cast<std::size_t>(cls)]) {
            for (double s : scale_variants) {
                templates.push_back({cls, normalize(scaled_exemplar(img, s), pre)});
            }
        }
    }
    return TemplateSet(glyphs.labels, std::move(templates));
}

TrainData train_data_from_glyphset(const GlyphSet& glyphs, const PreprocessConfig& pre,
                                   const std::vector<double>& scale_variants) {
    glyphs.validate();
    if (scale_variants.empty()) throw ConfigError("at least one training scale required");
    TrainData data;
    data.num_classes = glyphs.num_classes();
    for (int cls = 0; cls < glyphs.num_classes(); ++cls) {
        for (const auto& img : glyphs.exemplars[static_cast<std::size_t>(cls)]) {
            for (double s : scale_variants) {
                const BinaryImage norm = normalize(scaled_exemplar(img, s), pre);
                std::vector<double> input;
                input.reserve(norm.pixels().size());
                for (auto p : norm.pixels()) input.push_back(p ? 1.0 : 0.0);
                data.inputs.push_back(std::move(input));
                data.labels.push_back(cls);
            }
        }
    }
    return data;
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct ClassAccumulator {
    std::vector<double> sums;
    std::vector<int> counts;

    explicit ClassAccumulator(int classes) : sums(classes, 0.0), counts(classes, 0) {}

    void add(int cls, double value) {
        sums[static_cast<std::size_t>(cls)] += value;
        ++counts[static_cast<std::size_t>(cls)];
    }

    std::vector<ClassRow> rows(const GlyphSet& glyphs) const {
        std::vector<ClassRow> out;
        for (int cls = 0; cls < glyphs.num_classes(); ++cls) {
            ClassRow row;
            row.label = glyphs.labels[static_cast<std::size_t>(cls)];
            row.matched = counts[static_cast<std::size_t>(cls)];
            row.mean_similarity =
                row.matched ? sums[static_cast<std::size_t>(cls)] / row.matched : 0.0;
            out.push_back(std::move(row));
        }
        return out;
    }

    double overall() const {
        double s = 0.0;
        int n = 0;
        for (std::size_t i = 0; i < sums.size(); ++i) {
            s += sums[i];
            n += counts[i];
        }
        return n ? s / n : 0.0;
    }
};

// Index of the truth glyph whose box overlaps `box` the most (by
// intersection area), or -1.
int match_by_overlap(const Box& box, const std::vector<PlacedGlyph>& truth_glyphs) {
    int best = -1;
    long long best_area = 0;
    for (std::size_t i = 0; i < truth_glyphs.size(); ++i) {
        if (auto inter = intersect(box, truth_glyphs[i].box)) {
            if (inter->area() > best_area) {
                best_area = inter->area();
                best = static_cast<int>(i);
            }
        }
    }
    return best;
}

} // namespace

StaticReport evaluate_static(const std::vector<BinaryImage>& pages, const GroundTruth& truth,
                             const GlyphSet& glyphs, const StaticSegConfig& cfg) {
    if (pages.size() != truth.pages.size()) {
        throw ConfigError("evaluate_static: pages and truth are not aligned");
    }
    StaticReport report;
    ClassAccumulator acc(glyphs.num_classes());
    int lines_total = 0, lines_exact = 0;
    int detections_matched = 0;

    for (std::size_t pg = 0; pg < pages.size(); ++pg) {
        const Dissection d = dissect_page(pages[pg], cfg);
        const auto& truth_lines = truth.pages[pg].lines;

        // Pair detected lines with truth lines by band overlap.
        for (std::size_t li = 0; li < d.lines.size(); ++li) {
            const LineTruth* tline = nullptr;
            long long best_rows = 0;
            for (const auto& cand : truth_lines) {
                const int top = std::max(d.lines[li].box.top, cand.band.top);
                const int bottom = std::min(d.lines[li].box.bottom, cand.band.bottom);
                if (bottom - top > best_rows) {
                    best_rows = bottom - top;
                    tline = &cand;
                }
            }
            if (!tline) continue;
            ++lines_total;
            const auto& boxes = d.characters_per_line[li];
            report.detected_count += static_cast<int>(boxes.size());
            report.truth_count += static_cast<int>(tline->glyphs.size());
            if (boxes.size() == tline->glyphs.size()) ++lines_exact;

            for (const Box& box : boxes) {
                const int match = match_by_overlap(box, tline->glyphs);
                if (match < 0) continue;
                const PlacedGlyph& placed = tline->glyphs[static_cast<std::size_t>(match)];
                if (iou(box, placed.box) >= 0.3) ++detections_matched;

                int covered = 0;
                for (const auto& g : tline->glyphs) {
                    if (auto inter = intersect(box, g.box)) {
                        if (2 * inter->area() >= g.box.area()) ++covered;
                    }
                }
                if (covered >= 2) {
                    report.merged.push_back({static_cast<int>(pg), static_cast<int>(li), box, covered});
                }

                const BinaryImage crop_img = crop(pages[pg], box);
                const BinaryImage& ref =
                    glyphs.exemplars[static_cast<std::size_t>(placed.label)]
                                    [static_cast<std::size_t>(placed.exemplar)];
                acc.add(placed.label, raw_frame_similarity(crop_img, ref));
            }
        }
        // Truth lines the dissection missed entirely still count.
        lines_total += static_cast<int>(truth_lines.size()) - static_cast<int>(d.lines.size());
        for (std::size_t li = d.lines.size(); li < truth_lines.size(); ++li) {
            report.truth_count += static_cast<int>(truth_lines[li].glyphs.size());
        }
    }

    report.per_class = acc.rows(glyphs);
    report.mean_similarity = acc.overall();
    report.box_count_accuracy = lines_total ? 100.0 * lines_exact / lines_total : 0.0;
    report.detection_match_rate =
        report.detected_count ? 100.0 * detections_matched / report.detected_count : 0.0;
    return report;
}

namespace {

struct Split {
    TrainData train;
    std::vector<std::vector<double>> holdout_inputs;
    std::vector<int> holdout_labels;
};

Split make_split(const GlyphSet& glyphs, const PreprocessConfig& pre) {
    Split split;
    split.train.num_classes = glyphs.num_classes();
    for (int cls = 0; cls < glyphs.num_classes(); ++cls) {
        const auto& exemplars = glyphs.exemplars[static_cast<std::size_t>(cls)];
        if (exemplars.size() < 2) {
            throw ConfigError("evaluate_training needs >= 2 exemplars per class (class " +
                              glyphs.labels[static_cast<std::size_t>(cls)] + ")");
        }
        // Strided split over the harder (higher-variation) band: held-out
        // exemplars are unseen draws of writer styles the training side
        // also contains, mirroring a new-writer test set.
        const std::size_t band_start = exemplars.size() / 3;
        for (std::size_t i = 0; i < exemplars.size(); ++i) {
            const BinaryImage norm = normalize(exemplars[i], pre);
            std::vector<double> input;
            input.reserve(norm.pixels().size());
            for (auto p : norm.pixels()) input.push_back(p ? 1.0 : 0.0);
            const bool hold = exemplars.size() >= 3
                                  ? (i % 3 == 2 && i >= band_start)
                                  : (i == exemplars.size() - 1);
            if (!hold) {
                split.train.inputs.push_back(std::move(input));
                split.train.labels.push_back(cls);
            } else {
                split.holdout_inputs.push_back(std::move(input));
                split.holdout_labels.push_back(cls);
            }
        }
    }
    return split;
}

double holdout_rate(const Mlp& net, const Split& split) {
    int correct = 0;
    for (std::size_t i = 0; i < split.holdout_inputs.size(); ++i) {
        if (net.classify(split.holdout_inputs[i]).first == split.holdout_labels[i]) ++correct;
    }
    return split.holdout_inputs.empty()
               ? 0.0
               : 100.0 * correct / static_cast<double>(split.holdout_inputs.size());
}

} // namespace

TrainingReport evaluate_training(const GlyphSet& glyphs, const PreprocessConfig& pre,
                                 const TrainSpec& base, const std::vector<int>& epochs_grid,
                                 const std::vector<std::uint64_t>& seeds) {
    glyphs.validate();
    if (epochs_grid.empty()) throw ConfigError("epochs_grid must not be empty");
    if (seeds.empty()) throw ConfigError("at least one seed required");
    for (std::size_t i = 1; i < epochs_grid.size(); ++i) {
        if (epochs_grid[i] <= epochs_grid[i - 1]) {
            throw ConfigError("epochs_grid must be strictly increasing");
        }
    }

    const Split split = make_split(glyphs, pre);
    const MlpConfig config = MlpConfig::with_default_hidden(
        pre.normalized_width * pre.normalized_height, glyphs.num_classes());

    TrainingReport report;
    report.methods = {TrainMethod::GDBP, TrainMethod::GDMBP, TrainMethod::GDALBP,
                      TrainMethod::GDMALRBP};
    report.epochs_grid = epochs_grid;
    report.labels = glyphs.labels;
    report.cells.assign(report.methods.size(),
                        std::vector<TrainingCell>(epochs_grid.size()));
    report.nets_first_seed.resize(report.methods.size());
    report.selected_snapshots.resize(epochs_grid.size());

    const int max_epochs = epochs_grid.back();

    for (std::size_t mi = 0; mi < report.methods.size(); ++mi) {
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            TrainSpec spec = base;
            spec.method = report.methods[mi];
            spec.seed = seeds[si];
            spec.epochs = max_epochs;

            std::vector<Mlp> snapshots(epochs_grid.size());
            auto hook = [&](int epoch, const Mlp& net) {
                for (std::size_t g = 0; g < epochs_grid.size(); ++g) {
                    if (epoch == epochs_grid[g]) snapshots[g] = net;
                }
            };

            const Mlp start = Mlp::init(config, seeds[si]);
            auto [net, run] = train(start, split.train, spec, hook);

            for (std::size_t g = 0; g < epochs_grid.size(); ++g) {
                TrainingCell& cell = report.cells[mi][g];
                cell.final_mse.push_back(
                    run.mse_per_epoch[static_cast<std::size_t>(epochs_grid[g]) - 1]);
                cell.class_rate.push_back(holdout_rate(snapshots[g], split));
            }
            if (si == 0) {
                report.nets_first_seed[mi] = net;
                if (report.methods[mi] == TrainMethod::GDMALRBP) {
                    report.selected_snapshots = snapshots;
                }
            }
        }
    }
    for (auto& row : report.cells) {
        for (auto& cell : row) {
            cell.median_mse = median_of(cell.final_mse);
            cell.median_rate = median_of(cell.class_rate);
        }
    }
    return report;
}

ComparisonReport evaluate_dynamic(const std::vector<BinaryImage>& pages, const GroundTruth& truth,
                                  const GlyphSet& glyphs,
                                  const std::vector<std::pair<int, const Mlp*>>& nets,
                                  const TemplateSet& templates, const StaticSegConfig& static_cfg,
                                  const DynamicSegConfig& dyn_cfg, const PreprocessConfig& pre) {
    if (pages.size() != truth.pages.size()) {
        throw ConfigError("evaluate_dynamic: pages and truth are not aligned");
    }
    ComparisonReport report;
    report.static_side = evaluate_static(pages, truth, glyphs, static_cfg);

    for (const auto& [sessions, net] : nets) {
        DynamicColumn col;
        col.sessions = sessions;
        ClassAccumulator acc(glyphs.num_classes());
        int lines_total = 0, lines_exact = 0;

        for (std::size_t pg = 0; pg < pages.size(); ++pg) {
            const auto results = segment_page(pages[pg], *net, templates, static_cfg, dyn_cfg, pre);
            const auto& truth_lines = truth.pages[pg].lines;
            const std::size_t n = std::min(results.size(), truth_lines.size());
            lines_total += static_cast<int>(std::max(results.size(), truth_lines.size()));
            for (std::size_t li = 0; li < n; ++li) {
                const auto& chars = results[li].characters;
                col.emitted += static_cast<int>(chars.size());
                if (chars.size() == truth_lines[li].glyphs.size()) ++lines_exact;
                if (results[li].residue) ++col.residue_lines;
                for (const auto& ch : chars) {
                    const int match = match_by_overlap(ch.box, truth_lines[li].glyphs);
                    if (match < 0) continue;
                    ++col.matched;
                    acc.add(truth_lines[li].glyphs[static_cast<std::size_t>(match)].label,
                            ch.similarity.value);
                }
            }
        }
        col.per_class = acc.rows(glyphs);
        col.mean_similarity = acc.overall();
        col.count_accuracy = lines_total ? 100.0 * lines_exact / lines_total : 0.0;
        report.dynamic.push_back(std::move(col));
    }
    return report;
}

namespace {

class TableWriter {
public:
    explicit TableWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
        if (!out_) throw Error("cannot write " + path.string());
    }

    void line(const std::string& s) { out_ << s << "\n"; }

    std::ofstream& stream() { return out_; }

private:
    std::ofstream out_;
};

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

void write_table1(const StaticReport& report, const std::filesystem::path& csv,
                  const std::filesystem::path& txt) {
    {
        TableWriter w(csv);
        w.line("label,similarity_pct,matched");
        for (const auto& row : report.per_class) {
            w.line(row.label + "," + fmt("%.1f", row.mean_similarity) + "," +
                   std::to_string(row.matched));
        }
    }
    TableWriter w(txt);
    w.line("Similarity measure by class, static segmentation");
    w.line("");
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-10s %10s %8s", "label", "S in %", "matched");
    w.line(buf);
    for (const auto& row : report.per_class) {
        std::snprintf(buf, sizeof buf, "%-10s %10.1f %8d", row.label.c_str(),
                      row.mean_similarity, row.matched);
        w.line(buf);
    }
    w.line("");
    w.line("mean S = " + fmt("%.1f", report.mean_similarity) +
           "  box-count accuracy = " + fmt("%.1f", report.box_count_accuracy) + "%");
}

namespace {

void write_training_table(const TrainingReport& report, const std::filesystem::path& csv,
                          const std::filesystem::path& txt, bool mse, const char* title) {
    {
        TableWriter w(csv);
        std::string header = "sessions";
        for (TrainMethod m : report.methods) header += std::string(",") + to_string(m);
        w.line(header);
        for (std::size_t g = 0; g < report.epochs_grid.size(); ++g) {
            std::string row = std::to_string(report.epochs_grid[g]);
            for (std::size_t mi = 0; mi < report.methods.size(); ++mi) {
                const auto& cell = report.cells[mi][g];
                row += "," + (mse ? fmt("%.6g", cell.median_mse) : fmt("%.1f", cell.median_rate));
            }
            w.line(row);
        }
    }
    TableWriter w(txt);
    w.line(title);
    w.line("");
    char buf[192];
    std::snprintf(buf, sizeof buf, "%-10s %12s %12s %12s %12s", "sessions", "GDBP", "GDMBP",
                  "GDALBP", "GDMALRBP");
    w.line(buf);
    for (std::size_t g = 0; g < report.epochs_grid.size(); ++g) {
        std::string row = fmt("%-10.0f", static_cast<double>(report.epochs_grid[g]));
        for (std::size_t mi = 0; mi < report.methods.size(); ++mi) {
            const auto& cell = report.cells[mi][g];
            row += " " + (mse ? fmt("%12.3e", cell.median_mse) : fmt("%12.1f", cell.median_rate));
        }
        w.line(row);
    }
}

} // namespace

void write_table2(const TrainingReport& report, const std::filesystem::path& csv,
                  const std::filesystem::path& txt) {
    write_training_table(report, csv, txt, true,
                         "Median MSE attained during training, by method and sessions");
}

void write_table3(const TrainingReport& report, const std::filesystem::path& csv,
                  const std::filesystem::path& txt) {
    write_training_table(report, csv, txt, false,
                         "Median held-out classification rate in %, by method and sessions");
}

void write_table4(const ComparisonReport& report, const std::filesystem::path& csv,
                  const std::filesystem::path& txt) {
    {
        TableWriter w(csv);
        std::string header = "case,label,static_s";
        for (const auto& col : report.dynamic) {
            header += ",s_" + std::to_string(col.sessions);
        }
        w.line(header);
        for (std::size_t cls = 0; cls < report.static_side.per_class.size(); ++cls) {
            std::string row = std::to_string(cls + 1) + "," +
                              report.static_side.per_class[cls].label + "," +
                              fmt("%.1f", report.static_side.per_class[cls].mean_similarity);
            for (const auto& col : report.dynamic) {
                row += "," + fmt("%.1f", col.per_class[cls].mean_similarity);
            }
            w.line(row);
        }
    }
    TableWriter w(txt);
    w.line("Similarity measure in %: static segmentation vs the trained network");
    w.line("");
    char hbuf[64];
    std::snprintf(hbuf, sizeof hbuf, "%-6s %-10s %7s", "case", "label", "static");
    std::string header = hbuf;
    for (const auto& col : report.dynamic) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %9d", col.sessions);
        header += buf;
    }
    w.line(header);
    for (std::size_t cls = 0; cls < report.static_side.per_class.size(); ++cls) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-6zu %-10s %7.1f", cls + 1,
                      report.static_side.per_class[cls].label.c_str(),
                      report.static_side.per_class[cls].mean_similarity);
        std::string row = buf;
        for (const auto& col : report.dynamic) {
            std::snprintf(buf, sizeof buf, " %9.1f", col.per_class[cls].mean_similarity);
            row += buf;
        }
        w.line(row);
    }
}

void write_summary(const ComparisonReport& report, const std::filesystem::path& csv,
                   const std::filesystem::path& txt) {
    {
        TableWriter w(csv);
        w.line("metric,value");
        w.line("static_mean_similarity," + fmt("%.1f", report.static_side.mean_similarity));
        w.line("static_count_accuracy," + fmt("%.1f", report.static_side.box_count_accuracy));
        w.line("static_detection_match_rate," +
               fmt("%.1f", report.static_side.detection_match_rate));
        for (const auto& col : report.dynamic) {
            const std::string tag = "dynamic_" + std::to_string(col.sessions);
            w.line(tag + "_mean_similarity," + fmt("%.1f", col.mean_similarity));
            w.line(tag + "_count_accuracy," + fmt("%.1f", col.count_accuracy));
            w.line(tag + "_residue_lines," + std::to_string(col.residue_lines));
        }
    }
    TableWriter w(txt);
    w.line("Corpus summary");
    w.line("");
    w.line("static : mean S " + fmt("%.1f", report.static_side.mean_similarity) +
           ", count accuracy " + fmt("%.1f", report.static_side.box_count_accuracy) + "%");
    for (const auto& col : report.dynamic) {
        w.line("dynamic@" + std::to_string(col.sessions) + ": mean S " +
               fmt("%.1f", col.mean_similarity) + ", count accuracy " +
               fmt("%.1f", col.count_accuracy) + "%, residue lines " +
               std::to_string(col.residue_lines));
    }
}

std::vector<std::string> check_trends(const TrainingReport& training,
                                      const ComparisonReport& comparison) {
    std::vector<std::string> violations;

    // Method ordering of median MSE at the grid point closest to 2000.
    std::size_t anchor = 0;
    for (std::size_t g = 0; g < training.epochs_grid.size(); ++g) {
        if (std::abs(training.epochs_grid[g] - 2000) <
            std::abs(training.epochs_grid[anchor] - 2000)) {
            anchor = g;
        }
    }
    const auto mse_at = [&](TrainMethod m, std::size_t g) {
        for (std::size_t mi = 0; mi < training.methods.size(); ++mi) {
            if (training.methods[mi] == m) return training.cells[mi][g].median_mse;
        }
        return 0.0;
    };
    const auto rate_at = [&](TrainMethod m, std::size_t g) {
        for (std::size_t mi = 0; mi < training.methods.size(); ++mi) {
            if (training.methods[mi] == m) return training.cells[mi][g].median_rate;
        }
        return 0.0;
    };
    const double gdbp = mse_at(TrainMethod::GDBP, anchor);
    const double gdmbp = mse_at(TrainMethod::GDMBP, anchor);
    const double gdalbp = mse_at(TrainMethod::GDALBP, anchor);
    const double gdmalrbp = mse_at(TrainMethod::GDMALRBP, anchor);
    if (!(gdmalrbp < gdalbp && gdalbp < gdmbp && gdmbp < gdbp)) {
        violations.push_back("median MSE ordering GDMALRBP < GDALBP < GDMBP < GDBP violated at " +
                             std::to_string(training.epochs_grid[anchor]) + " sessions");
    }
    for (std::size_t mi = 0; mi < training.methods.size(); ++mi) {
        for (std::size_t g = 1; g < training.epochs_grid.size(); ++g) {
            if (!(training.cells[mi][g].median_mse < training.cells[mi][g - 1].median_mse)) {
                violations.push_back(std::string("median MSE of ") +
                                     to_string(training.methods[mi]) +
                                     " does not strictly decrease from " +
                                     std::to_string(training.epochs_grid[g - 1]) + " to " +
                                     std::to_string(training.epochs_grid[g]) + " sessions");
            }
        }
    }

    // Classification: GDMALRBP improves over the grid, never below GDBP.
    const std::size_t last = training.epochs_grid.size() - 1;
    if (!(rate_at(TrainMethod::GDMALRBP, last) > rate_at(TrainMethod::GDMALRBP, 0))) {
        violations.push_back("GDMALRBP classification rate does not improve from " +
                             std::to_string(training.epochs_grid[0]) + " to " +
                             std::to_string(training.epochs_grid[last]) + " sessions");
    }
    for (std::size_t g = 0; g < training.epochs_grid.size(); ++g) {
        if (rate_at(TrainMethod::GDMALRBP, g) < rate_at(TrainMethod::GDBP, g)) {
            violations.push_back("GDMALRBP classification rate below GDBP at " +
                                 std::to_string(training.epochs_grid[g]) + " sessions");
        }
    }

    // Comparison table: the last dynamic column beats static per class and in count
    // accuracy.
    if (!comparison.dynamic.empty()) {
        const auto& col = comparison.dynamic.back();
        for (std::size_t cls = 0; cls < col.per_class.size(); ++cls) {
            if (comparison.static_side.per_class[cls].matched == 0 &&
                col.per_class[cls].matched == 0) {
                continue;
            }
            if (!(col.per_class[cls].mean_similarity >
                  comparison.static_side.per_class[cls].mean_similarity)) {
                violations.push_back("dynamic similarity does not beat static for class " +
                                     col.per_class[cls].label);
            }
        }
        if (col.count_accuracy < comparison.static_side.box_count_accuracy) {
            violations.push_back("dynamic count accuracy below static");
        }
    }
    return violations;
}

} // namespace glyphseg

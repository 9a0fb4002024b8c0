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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "glyphseg/config.hpp"
#include "glyphseg/eval.hpp"
#include "glyphseg/pnm.hpp"

using json = nlohmann::ordered_json;
using namespace glyphseg;

namespace {

struct CommonArgs {
    std::string config_path;
    long long seed = -1;
    std::string out_dir;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "INI config file");
    cmd->add_option("--seed", args.seed, "master seed (overrides config and GLYPHSEG_SEED)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--jobs", args.jobs, "worker cap (0 = hardware concurrency)");
}

RunConfig resolve_config(const CommonArgs& args) {
    IniFile ini;
    if (!args.config_path.empty()) ini = IniFile::parse_file(args.config_path);
    RunConfig cfg = RunConfig::from_ini(ini);

    long long seed = args.seed;
    if (seed < 0) {
        if (const char* env = std::getenv("GLYPHSEG_SEED")) {
            seed = std::atoll(env);
        }
    }
    if (seed >= 0) {
        cfg.corpus.seed = static_cast<std::uint64_t>(seed);
        cfg.train.seed = static_cast<std::uint64_t>(seed);
    }
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    cfg.jobs = args.jobs;
    if (cfg.jobs <= 0) {
        cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    cfg.train.jobs = cfg.jobs;
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

GlyphSet resolve_glyphs(const RunConfig& cfg, const std::string& override_dir = "") {
    if (!override_dir.empty()) return load_glyphset(override_dir);
    if (!cfg.glyph_dir.empty()) return load_glyphset(cfg.glyph_dir);
    return builtin_glyphset(cfg.exemplars_per_class, cfg.corpus.seed);
}

MlpConfig resolve_mlp_config(const RunConfig& cfg, int classes) {
    const int input = cfg.preprocess.normalized_width * cfg.preprocess.normalized_height;
    if (!cfg.hidden_lens.empty()) {
        MlpConfig out{input, cfg.hidden_lens, classes};
        out.validate();
        return out;
    }
    return MlpConfig::with_default_hidden(input, classes, cfg.hidden_layers);
}

TrainData build_train_data(const GlyphSet& glyphs, const PreprocessConfig& pre) {
    return train_data_from_glyphset(glyphs, pre);
}

json box_json(const Box& b) { return json::array({b.top, b.left, b.bottom, b.right}); }

GrayImage render_overlay(const BinaryImage& page, const std::vector<Box>& boxes) {
    GrayImage out(page.width(), page.height(), 255);
    for (int r = 0; r < page.height(); ++r) {
        for (int c = 0; c < page.width(); ++c) {
            if (page.at(r, c)) out.set(r, c, 0);
        }
    }
    for (const Box& b : boxes) {
        for (int c = b.left; c < b.right; ++c) {
            out.set(b.top, c, 128);
            out.set(b.bottom - 1, c, 128);
        }
        for (int r = b.top; r < b.bottom; ++r) {
            out.set(r, b.left, 128);
            out.set(r, b.right - 1, 128);
        }
    }
    return out;
}

int cmd_preprocess(const CommonArgs& common, const std::string& input) {
    const RunConfig cfg = resolve_config(common);
    const GrayImage raw = read_pgm(input);
    write_pgm(raw, cfg.out_dir / "00_input.pgm");
    const GrayImage den = denoise(raw, cfg.preprocess.median_window);
    write_pgm(den, cfg.out_dir / "01_denoised.pgm");
    const GrayImage enh = enhance(den, cfg.preprocess.high_boost);
    write_pgm(enh, cfg.out_dir / "02_enhanced.pgm");
    const BinaryImage bin = binarize(enh);
    write_pbm(bin, cfg.out_dir / "03_binarized.pbm");
    const BinaryImage norm = normalize(bin, cfg.preprocess);
    write_pbm(norm, cfg.out_dir / "04_normalized.pbm");
    std::cout << "wrote 5 stage files to " << cfg.out_dir.string() << "\n";
    return 0;
}

int cmd_train(const CommonArgs& common, const std::string& glyph_dir) {
    const RunConfig cfg = resolve_config(common);
    const GlyphSet glyphs = resolve_glyphs(cfg, glyph_dir);
    const TrainData data = build_train_data(glyphs, cfg.preprocess);
    const MlpConfig mlp_cfg = resolve_mlp_config(cfg, glyphs.num_classes());
    const Mlp start = Mlp::init(mlp_cfg, cfg.train.seed);
    const auto [net, report] = train(start, data, cfg.train);

    const auto model_path =
        cfg.model_path.empty() ? cfg.out_dir / "model.txt" : cfg.model_path;
    net.save(model_path, glyphs.labels);

    std::ofstream csv(cfg.out_dir / "train_report.csv", std::ios::binary);
    csv << "epoch,mse\n";
    char buf[64];
    for (std::size_t e = 0; e < report.mse_per_epoch.size(); ++e) {
        std::snprintf(buf, sizeof buf, "%zu,%.10g\n", e + 1, report.mse_per_epoch[e]);
        csv << buf;
    }
    std::cout << "trained " << to_string(cfg.train.method) << " for " << report.epochs_run
              << " epochs, final mse " << report.final_mse << "\n"
              << "model: " << model_path.string() << "\n";
    return 0;
}

int cmd_segment_static(const CommonArgs& common, const std::string& page_path) {
    const RunConfig cfg = resolve_config(common);
    const BinaryImage page = read_pbm(page_path);
    const Dissection d = dissect_page(page, cfg.static_seg);

    std::ofstream manifest(cfg.out_dir / "manifest_static.jsonl", std::ios::binary);
    std::vector<Box> all_boxes;
    for (std::size_t li = 0; li < d.lines.size(); ++li) {
        const LineBand& band = d.lines[li];
        json line_entry = {{"type", "line"},
                           {"line", li},
                           {"box", box_json(band.box)},
                           {"headline_row", band.headline_row ? json(*band.headline_row) : json()},
                           {"zones", json::array({band.upper_end, band.middle_end})}};
        manifest << line_entry.dump() << "\n";
        for (std::size_t ci = 0; ci < d.characters_per_line[li].size(); ++ci) {
            const Box& b = d.characters_per_line[li][ci];
            manifest << json{{"type", "char"}, {"line", li}, {"box", box_json(b)}}.dump() << "\n";
            write_pbm(crop(page, b), cfg.out_dir / ("char_" + std::to_string(li) + "_" +
                                                    std::to_string(ci) + ".pbm"));
            all_boxes.push_back(b);
        }
    }
    for (const auto& [li, cols] : d.spaces) {
        manifest << json{{"type", "space"},
                         {"line", li},
                         {"cols", json::array({cols.first, cols.second})}}
                        .dump()
                 << "\n";
    }
    write_pgm(render_overlay(page, all_boxes), cfg.out_dir / "overlay_static.pgm");
    std::cout << "lines: " << d.lines.size() << ", characters: " << all_boxes.size() << "\n";
    return 0;
}

int cmd_segment_dynamic(const CommonArgs& common, const std::string& page_path,
                        const std::string& model_path) {
    const RunConfig cfg = resolve_config(common);
    const BinaryImage page = read_pbm(page_path);
    const auto [net, labels] = Mlp::load(model_path);

    const GlyphSet glyphs = resolve_glyphs(cfg);
    if (static_cast<int>(labels.size()) != glyphs.num_classes()) {
        throw ConfigError("model classes do not match the glyph set");
    }
    const TemplateSet templates = templates_from_glyphset(glyphs, cfg.preprocess);

    const auto results =
        segment_page(page, net, templates, cfg.static_seg, cfg.dynamic_seg, cfg.preprocess);

    std::ofstream manifest(cfg.out_dir / "manifest_dynamic.jsonl", std::ios::binary);
    std::vector<Box> all_boxes;
    char buf[32];
    for (std::size_t li = 0; li < results.size(); ++li) {
        for (std::size_t ci = 0; ci < results[li].characters.size(); ++ci) {
            const RecognizedChar& ch = results[li].characters[ci];
            std::snprintf(buf, sizeof buf, "%.4f", ch.confidence);
            json entry = {{"type", "char"},
                          {"line", li},
                          {"box", box_json(ch.box)},
                          {"label", labels[static_cast<std::size_t>(ch.label)]},
                          {"confidence", std::stod(buf)},
                          {"similarity", ch.similarity.value}};
            manifest << entry.dump() << "\n";
            write_pbm(crop(page, ch.box), cfg.out_dir / ("char_" + std::to_string(li) + "_" +
                                                         std::to_string(ci) + ".pbm"));
            all_boxes.push_back(ch.box);
        }
        if (results[li].residue) {
            manifest << json{{"type", "residue"},
                             {"line", li},
                             {"cols", json::array({results[li].residue->first,
                                                   results[li].residue->second})}}
                            .dump()
                     << "\n";
        }
    }
    write_pgm(render_overlay(page, all_boxes), cfg.out_dir / "overlay_dynamic.pgm");
    std::cout << "lines: " << results.size() << ", characters: " << all_boxes.size() << "\n";
    return 0;
}

int cmd_generate_corpus(const CommonArgs& common) {
    const RunConfig cfg = resolve_config(common);
    const GlyphSet glyphs = resolve_glyphs(cfg);
    const auto [pages, truth] = generate(glyphs, cfg.corpus);

    save_glyphset(glyphs, cfg.out_dir / "glyphs");
    std::ofstream manifest(cfg.out_dir / "truth.jsonl", std::ios::binary);
    for (std::size_t pg = 0; pg < pages.size(); ++pg) {
        char name[32];
        std::snprintf(name, sizeof name, "page_%03zu.pbm", pg);
        write_pbm(pages[pg], cfg.out_dir / name);
        for (std::size_t li = 0; li < truth.pages[pg].lines.size(); ++li) {
            const LineTruth& line = truth.pages[pg].lines[li];
            json glyph_list = json::array();
            for (const auto& g : line.glyphs) {
                glyph_list.push_back({{"label", glyphs.labels[static_cast<std::size_t>(g.label)]},
                                      {"exemplar", g.exemplar},
                                      {"box", box_json(g.box)},
                                      {"touching", g.touching}});
            }
            json spaces = json::array();
            for (auto [a, b] : line.spaces) spaces.push_back(json::array({a, b}));
            json modifiers = json::array();
            for (const auto& m : line.modifiers) modifiers.push_back(box_json(m));
            manifest << json{{"page", pg},
                             {"line", li},
                             {"band", box_json(line.band)},
                             {"headline_row",
                              line.headline_row ? json(*line.headline_row) : json()},
                             {"glyphs", glyph_list},
                             {"spaces", spaces},
                             {"modifiers", modifiers}}
                            .dump()
                     << "\n";
        }
    }
    std::cout << "wrote " << pages.size() << " pages + truth.jsonl + glyphs/ to "
              << cfg.out_dir.string() << "\n";
    return 0;
}

int cmd_evaluate(const CommonArgs& common, bool assert_trends) {
    const RunConfig cfg = resolve_config(common);
    const GlyphSet glyphs = resolve_glyphs(cfg);

    std::vector<std::uint64_t> seeds;
    for (int s = 0; s < cfg.eval_seeds; ++s) {
        seeds.push_back(cfg.train.seed + static_cast<std::uint64_t>(s));
    }
    std::cout << "training " << cfg.eval_seeds << " seeds x 4 methods to "
              << cfg.epochs_grid.back() << " epochs...\n";
    const TrainingReport training =
        evaluate_training(glyphs, cfg.preprocess, cfg.train, cfg.epochs_grid, seeds);

    // The segmentation network trains on every exemplar (scale-augmented);
    // the held-out split above exists only for the classification table.
    std::cout << "training the segmentation network...\n";
    const TrainData seg_data = build_train_data(glyphs, cfg.preprocess);
    TrainSpec seg_spec = cfg.train;
    seg_spec.method = TrainMethod::GDMALRBP;
    seg_spec.epochs = cfg.epochs_grid.back();
    std::vector<Mlp> snapshots(cfg.epochs_grid.size());
    auto hook = [&](int epoch, const Mlp& net) {
        for (std::size_t g = 0; g < cfg.epochs_grid.size(); ++g) {
            if (epoch == cfg.epochs_grid[g]) snapshots[g] = net;
        }
    };
    const MlpConfig seg_cfg = resolve_mlp_config(cfg, glyphs.num_classes());
    train(Mlp::init(seg_cfg, seg_spec.seed), seg_data, seg_spec, hook);

    const auto [pages, truth] = generate(glyphs, cfg.corpus);
    const TemplateSet templates = templates_from_glyphset(glyphs, cfg.preprocess);
    std::vector<std::pair<int, const Mlp*>> nets;
    for (std::size_t g = 0; g < cfg.epochs_grid.size(); ++g) {
        nets.emplace_back(cfg.epochs_grid[g], &snapshots[g]);
    }
    const ComparisonReport comparison =
        evaluate_dynamic(pages, truth, glyphs, nets, templates, cfg.static_seg, cfg.dynamic_seg,
                         cfg.preprocess);

    write_table1(comparison.static_side, cfg.out_dir / "table1_static_similarity.csv",
                 cfg.out_dir / "table1_static_similarity.txt");
    write_table2(training, cfg.out_dir / "table2_mse.csv", cfg.out_dir / "table2_mse.txt");
    write_table3(training, cfg.out_dir / "table3_classification.csv",
                 cfg.out_dir / "table3_classification.txt");
    write_table4(comparison, cfg.out_dir / "table4_comparison.csv",
                 cfg.out_dir / "table4_comparison.txt");
    write_summary(comparison, cfg.out_dir / "summary.csv", cfg.out_dir / "summary.txt");
    std::cout << "reports written to " << cfg.out_dir.string() << "\n";

    if (assert_trends) {
        const auto violations = check_trends(training, comparison);
        if (!violations.empty()) {
            for (const auto& v : violations) std::cerr << "trend violation: " << v << "\n";
            return 3;
        }
        std::cout << "all trend assertions hold\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"glyphseg: projection- and recognition-based text segmentation toolkit"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string input_path, glyph_dir, model_path;
    bool assert_trends = false;

    auto* pre = app.add_subcommand("preprocess", "run the five preprocessing stages on a PGM scan");
    pre->add_option("input", input_path, "input PGM")->required();
    add_common(pre, common);

    auto* tr = app.add_subcommand("train", "train the recognizer on a glyph directory");
    tr->add_option("glyphs", glyph_dir, "glyph directory <label>/<n>.pbm (default: builtin set)");
    add_common(tr, common);

    auto* st = app.add_subcommand("segment-static", "projection-only dissection of a PBM page");
    st->add_option("page", input_path, "input PBM page")->required();
    add_common(st, common);

    auto* dy = app.add_subcommand("segment-dynamic", "recognition-driven segmentation of a page");
    dy->add_option("page", input_path, "input PBM page")->required();
    dy->add_option("--model", model_path, "trained model file")->required();
    add_common(dy, common);

    auto* gen = app.add_subcommand("generate-corpus", "render synthetic pages with ground truth");
    add_common(gen, common);

    auto* ev = app.add_subcommand("evaluate", "train all methods and reproduce the report tables");
    ev->add_flag("--assert-trends", assert_trends, "exit 3 when a table trend fails");
    add_common(ev, common);

    try {
        app.parse(argc, argv);
        if (pre->parsed()) return cmd_preprocess(common, input_path);
        if (tr->parsed()) return cmd_train(common, glyph_dir);
        if (st->parsed()) return cmd_segment_static(common, input_path);
        if (dy->parsed()) return cmd_segment_dynamic(common, input_path, model_path);
        if (gen->parsed()) return cmd_generate_corpus(common);
        if (ev->parsed()) return cmd_evaluate(common, assert_trends);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

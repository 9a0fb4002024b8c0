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

#include "glyphseg/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace glyphseg {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

IniFile IniFile::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path.string());
}

IniFile IniFile::parse_string(const std::string& text, const std::string& origin) {
    IniFile ini;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
        }
        ini.sections_[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return ini;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string IniFile::get(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

int IniFile::get_int(const std::string& section, const std::string& key, int fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    try {
        std::size_t used = 0;
        const int out = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + section + "." + key + ": " + v);
    }
}

double IniFile::get_real(const std::string& section, const std::string& key,
                         double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("bad real for " + section + "." + key + ": " + v);
    }
}

bool IniFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = get(section, key, "");
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("bad boolean for " + section + "." + key + ": " + v);
}

namespace {

std::pair<std::string, std::string> split_range(const std::string& v, const std::string& what) {
    const auto colon = v.find(':');
    if (colon == std::string::npos) return {v, v}; // single value = degenerate range
    const std::string lo = v.substr(0, colon);
    const std::string hi = v.substr(colon + 1);
    if (lo.empty() || hi.empty()) throw ConfigError("bad range for " + what + ": " + v);
    return {lo, hi};
}

} // namespace

IntRange IniFile::get_int_range(const std::string& section, const std::string& key,
                                IntRange fallback) const {
    if (!has(section, key)) return fallback;
    const auto [lo, hi] = split_range(get(section, key, ""), section + "." + key);
    try {
        return {std::stoi(lo), std::stoi(hi)};
    } catch (const std::exception&) {
        throw ConfigError("bad integer range for " + section + "." + key);
    }
}

RealRange IniFile::get_real_range(const std::string& section, const std::string& key,
                                  RealRange fallback) const {
    if (!has(section, key)) return fallback;
    const auto [lo, hi] = split_range(get(section, key, ""), section + "." + key);
    try {
        return {std::stod(lo), std::stod(hi)};
    } catch (const std::exception&) {
        throw ConfigError("bad real range for " + section + "." + key);
    }
}

std::vector<int> IniFile::get_int_list(const std::string& section, const std::string& key,
                                       std::vector<int> fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    std::vector<int> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("bad integer list for " + section + "." + key + ": " + v);
        }
    }
    if (out.empty()) throw ConfigError("empty list for " + section + "." + key);
    return out;
}

void IniFile::set(const std::string& section, const std::string& key, const std::string& value) {
    sections_[section][key] = value;
}

RunConfig RunConfig::from_ini(const IniFile& ini) {
    RunConfig cfg;

    cfg.preprocess.median_window = ini.get_int("preprocess", "median_window", cfg.preprocess.median_window);
    cfg.preprocess.high_boost = ini.get_real("preprocess", "high_boost", cfg.preprocess.high_boost);
    cfg.preprocess.normalized_width =
        ini.get_int("preprocess", "normalized_width", cfg.preprocess.normalized_width);
    cfg.preprocess.normalized_height =
        ini.get_int("preprocess", "normalized_height", cfg.preprocess.normalized_height);
    cfg.preprocess.deskew_range = ini.get_real("preprocess", "deskew_range", cfg.preprocess.deskew_range);
    cfg.preprocess.deskew_step = ini.get_real("preprocess", "deskew_step", cfg.preprocess.deskew_step);

    cfg.static_seg.min_gap = ini.get_int("static", "min_gap", cfg.static_seg.min_gap);
    cfg.static_seg.modifier_factor =
        ini.get_real("static", "modifier_factor", cfg.static_seg.modifier_factor);
    cfg.static_seg.dilate_for_word_spacing =
        ini.get_bool("static", "dilate_word_spacing", cfg.static_seg.dilate_for_word_spacing);
    cfg.static_seg.dilate_radius = ini.get_int("static", "dilate_radius", cfg.static_seg.dilate_radius);

    cfg.dynamic_seg.interval_fraction =
        ini.get_real("dynamic", "interval_fraction", cfg.dynamic_seg.interval_fraction);
    cfg.dynamic_seg.confidence_threshold =
        ini.get_real("dynamic", "confidence_threshold", cfg.dynamic_seg.confidence_threshold);
    cfg.dynamic_seg.similarity_floor =
        ini.get_real("dynamic", "similarity_floor", cfg.dynamic_seg.similarity_floor);
    cfg.dynamic_seg.max_segments_per_char =
        ini.get_int("dynamic", "max_segments_per_char", cfg.dynamic_seg.max_segments_per_char);
    cfg.dynamic_seg.strip_headline =
        ini.get_bool("dynamic", "strip_headline", cfg.dynamic_seg.strip_headline);

    cfg.train.method = parse_train_method(ini.get("mlp", "method", to_string(cfg.train.method)));
    cfg.train.learning_rate = ini.get_real("mlp", "learning_rate", cfg.train.learning_rate);
    cfg.train.momentum = ini.get_real("mlp", "momentum", cfg.train.momentum);
    cfg.train.lr_increase = ini.get_real("mlp", "lr_increase", cfg.train.lr_increase);
    cfg.train.lr_decrease = ini.get_real("mlp", "lr_decrease", cfg.train.lr_decrease);
    cfg.train.err_ratio_cap = ini.get_real("mlp", "err_ratio_cap", cfg.train.err_ratio_cap);
    cfg.train.epochs = ini.get_int("mlp", "epochs", cfg.train.epochs);
    cfg.train.seed = static_cast<std::uint64_t>(
        ini.get_int("mlp", "seed", static_cast<int>(cfg.train.seed)));
    cfg.hidden_layers = ini.get_int("mlp", "hidden_layers", cfg.hidden_layers);
    cfg.hidden_lens = ini.get_int_list("mlp", "hidden", cfg.hidden_lens);

    cfg.corpus.seed =
        static_cast<std::uint64_t>(ini.get_int("corpus", "seed", static_cast<int>(cfg.corpus.seed)));
    cfg.corpus.pages = ini.get_int("corpus", "pages", cfg.corpus.pages);
    cfg.corpus.lines_per_page = ini.get_int("corpus", "lines_per_page", cfg.corpus.lines_per_page);
    cfg.corpus.glyphs_per_line = ini.get_int("corpus", "glyphs_per_line", cfg.corpus.glyphs_per_line);
    cfg.corpus.inter_glyph_gap =
        ini.get_int_range("corpus", "inter_glyph_gap", cfg.corpus.inter_glyph_gap);
    cfg.corpus.inter_word_gap =
        ini.get_int_range("corpus", "inter_word_gap", cfg.corpus.inter_word_gap);
    cfg.corpus.word_len = ini.get_int_range("corpus", "word_len", cfg.corpus.word_len);
    cfg.corpus.inter_line_gap =
        ini.get_int_range("corpus", "inter_line_gap", cfg.corpus.inter_line_gap);
    cfg.corpus.scale_jitter = ini.get_real_range("corpus", "scale_jitter", cfg.corpus.scale_jitter);
    cfg.corpus.rotation_jitter =
        ini.get_real_range("corpus", "rotation_jitter", cfg.corpus.rotation_jitter);
    cfg.corpus.salt_pepper_rate =
        ini.get_real("corpus", "salt_pepper_rate", cfg.corpus.salt_pepper_rate);
    cfg.corpus.headline_bar = ini.get_bool("corpus", "headline_bar", cfg.corpus.headline_bar);
    cfg.corpus.lower_modifier_rate =
        ini.get_real("corpus", "lower_modifier_rate", cfg.corpus.lower_modifier_rate);
    cfg.corpus.touching_pair_rate =
        ini.get_real("corpus", "touching_pair_rate", cfg.corpus.touching_pair_rate);
    cfg.corpus.margin = ini.get_int("corpus", "margin", cfg.corpus.margin);
    cfg.corpus.page_width = ini.get_int("corpus", "page_width", cfg.corpus.page_width);
    cfg.corpus.page_height = ini.get_int("corpus", "page_height", cfg.corpus.page_height);

    cfg.epochs_grid = ini.get_int_list("eval", "epochs_grid", cfg.epochs_grid);
    cfg.eval_seeds = ini.get_int("eval", "seeds", cfg.eval_seeds);
    cfg.exemplars_per_class = ini.get_int("eval", "exemplars_per_class", cfg.exemplars_per_class);

    cfg.glyph_dir = ini.get("paths", "glyph_dir", cfg.glyph_dir.string());
    cfg.model_path = ini.get("paths", "model", cfg.model_path.string());
    cfg.out_dir = ini.get("paths", "out", cfg.out_dir.string());
    return cfg;
}

void RunConfig::validate() const {
    preprocess.validate();
    static_seg.validate();
    dynamic_seg.validate();
    train.validate();
    corpus.validate();
    if (eval_seeds < 1) throw ConfigError("eval seeds must be >= 1");
    if (exemplars_per_class < 2) throw ConfigError("exemplars_per_class must be >= 2");
    if (hidden_layers < 1 || hidden_layers > 4) throw ConfigError("hidden_layers must be 1..4");
}

} // namespace glyphseg

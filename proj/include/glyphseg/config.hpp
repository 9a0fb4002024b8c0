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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "glyphseg/corpus.hpp"
#include "glyphseg/dynamic_seg.hpp"
#include "glyphseg/mlp.hpp"
#include "glyphseg/preprocess.hpp"
#include "glyphseg/static_seg.hpp"

namespace glyphseg {

/// Flat INI-style key=value sections parsed from a config file. `#` and
/// `;` start comments.
class IniFile {
public:
    IniFile() = default;
    static IniFile parse_file(const std::filesystem::path& path);
    static IniFile parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    double get_real(const std::string& section, const std::string& key, double fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    IntRange get_int_range(const std::string& section, const std::string& key,
                           IntRange fallback) const;
    RealRange get_real_range(const std::string& section, const std::string& key,
                             RealRange fallback) const;
    std::vector<int> get_int_list(const std::string& section, const std::string& key,
                                  std::vector<int> fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Everything a run needs, assembled from built-in defaults, an optional
/// config file, and command-line overrides (in that order).
struct RunConfig {
    PreprocessConfig preprocess;
    StaticSegConfig static_seg;
    DynamicSegConfig dynamic_seg;
    TrainSpec train;
    int hidden_layers = 1;
    std::vector<int> hidden_lens; // empty = the 1.5x default sizing
    CorpusSpec corpus;
    std::vector<int> epochs_grid{1000, 2000, 3000, 4000};
    int eval_seeds = 5;
    int exemplars_per_class = 6;
    std::filesystem::path glyph_dir; // empty = builtin glyph set
    std::filesystem::path model_path;
    std::filesystem::path out_dir = "out";
    int jobs = 0; // 0 = hardware concurrency

    static RunConfig from_ini(const IniFile& ini);
    void validate() const;
};

} // namespace glyphseg

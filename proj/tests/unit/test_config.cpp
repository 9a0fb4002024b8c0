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

#include "glyphseg/config.hpp"

using namespace glyphseg;

TEST_CASE("ini parsing: sections, comments, ranges, lists") {
    const IniFile ini = IniFile::parse_string(R"(
# comment
[preprocess]
median_window = 5
normalized_width = 16 ; trailing comment

[corpus]
scale_jitter = 0.9:1.1
inter_glyph_gap = 3:7
headline_bar = true

[eval]
epochs_grid = 100,200,300
)");
    CHECK(ini.get_int("preprocess", "median_window", 3) == 5);
    CHECK(ini.get_int("preprocess", "normalized_width", 32) == 16);
    CHECK(ini.get_int("preprocess", "missing", 9) == 9);
    const RealRange sj = ini.get_real_range("corpus", "scale_jitter", {1, 1});
    CHECK(sj.lo == doctest::Approx(0.9));
    CHECK(sj.hi == doctest::Approx(1.1));
    const IntRange gap = ini.get_int_range("corpus", "inter_glyph_gap", {1, 1});
    CHECK(gap.lo == 3);
    CHECK(gap.hi == 7);
    CHECK(ini.get_bool("corpus", "headline_bar", false));
    CHECK(ini.get_int_list("eval", "epochs_grid", {}) == std::vector<int>{100, 200, 300});
}

TEST_CASE("ini parsing: malformed input throws ConfigError") {
    CHECK_THROWS_AS(IniFile::parse_string("[unterminated\n"), ConfigError);
    CHECK_THROWS_AS(IniFile::parse_string("novalue\n"), ConfigError);
    const IniFile ini = IniFile::parse_string("[a]\nx = notanumber\n");
    CHECK_THROWS_AS(ini.get_int("a", "x", 0), ConfigError);
    CHECK_THROWS_AS(ini.get_bool("a", "x", false), ConfigError);
}

TEST_CASE("run config assembles from ini with defaults elsewhere") {
    const IniFile ini = IniFile::parse_string(R"(
[mlp]
method = gdalbp
learning_rate = 0.25
epochs = 123

[dynamic]
similarity_floor = 75
)");
    const RunConfig cfg = RunConfig::from_ini(ini);
    CHECK(cfg.train.method == TrainMethod::GDALBP);
    CHECK(cfg.train.learning_rate == doctest::Approx(0.25));
    CHECK(cfg.train.epochs == 123);
    CHECK(cfg.dynamic_seg.similarity_floor == doctest::Approx(75.0));
    // Untouched fields keep their defaults.
    CHECK(cfg.preprocess.median_window == 3);
    CHECK(cfg.dynamic_seg.interval_fraction == doctest::Approx(0.025));
    CHECK(cfg.epochs_grid == std::vector<int>{1000, 2000, 3000, 4000});
    cfg.validate();
}

TEST_CASE("run config validation rejects bad values") {
    const IniFile ini = IniFile::parse_string("[mlp]\nlearning_rate = -1\n");
    const RunConfig cfg = RunConfig::from_ini(ini);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

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
#include <fstream>

#include "glyphseg/pnm.hpp"
#include "glyphseg/rng.hpp"

using namespace glyphseg;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("pgm round trip is bit-exact") {
    Rng rng(21);
    GrayImage img(13, 7);
    for (int r = 0; r < 7; ++r) {
        for (int c = 0; c < 13; ++c) {
            img.set(r, c, static_cast<std::uint8_t>(rng.uniform_int(0, 255)));
        }
    }
    const auto path = temp_file("glyphseg_test.pgm");
    write_pgm(img, path);
    CHECK(read_pgm(path) == img);
    // Rewriting produces identical bytes.
    const auto second = temp_file("glyphseg_test2.pgm");
    write_pgm(img, second);
    std::ifstream a(path, std::ios::binary), b(second, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
}

TEST_CASE("pbm round trip with odd widths exercises bit packing") {
    Rng rng(22);
    for (int w : {1, 7, 8, 9, 17}) {
        BinaryImage img(w, 5);
        for (int r = 0; r < 5; ++r) {
            for (int c = 0; c < w; ++c) img.set(r, c, rng.bernoulli(0.5) ? 1 : 0);
        }
        const auto path = temp_file("glyphseg_test.pbm");
        write_pbm(img, path);
        CHECK(read_pbm(path) == img);
    }
}

TEST_CASE("pbm: 1 bits are ink") {
    const auto path = temp_file("glyphseg_bits.pbm");
    {
        std::ofstream out(path, std::ios::binary);
        out << "P4\n2 1\n";
        out.put(static_cast<char>(0x80)); // leftmost bit set
    }
    const BinaryImage img = read_pbm(path);
    CHECK(img.at(0, 0) == 1);
    CHECK(img.at(0, 1) == 0);
}

TEST_CASE("pgm reader accepts comments in the header") {
    const auto path = temp_file("glyphseg_comment.pgm");
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n# a comment\n2 1\n255\n";
        out.put(7);
        out.put(9);
    }
    const GrayImage img = read_pgm(path);
    CHECK(img.at(0, 0) == 7);
    CHECK(img.at(0, 1) == 9);
}

TEST_CASE("truncated pgm reports the byte offset") {
    const auto path = temp_file("glyphseg_trunc.pgm");
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n4 4\n255\n";
        out.put(1); // 15 raster bytes missing
    }
    try {
        read_pgm(path);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.offset() == std::filesystem::file_size(path)); // end of the short file
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
}

TEST_CASE("bad magic is rejected") {
    const auto path = temp_file("glyphseg_magic.pgm");
    {
        std::ofstream out(path, std::ios::binary);
        out << "P6\n1 1\n255\n";
        out.put(0);
    }
    CHECK_THROWS_AS(read_pgm(path), FormatError);
}

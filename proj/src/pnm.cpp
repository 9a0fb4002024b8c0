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

#include "glyphseg/pnm.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace glyphseg {

namespace {

// Whole-file slurp keeps offset bookkeeping trivial; page scans are small.
std::vector<char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path.string(), 0, "cannot open file");
    std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

class Cursor {
public:
    Cursor(const std::vector<char>& data, std::string path)
        : data_(data), path_(std::move(path)) {}

    std::size_t pos() const { return pos_; }
    bool eof() const { return pos_ >= data_.size(); }

    [[noreturn]] void fail(const std::string& what) const {
        throw FormatError(path_, pos_, what);
    }

    // PNM token separator: whitespace and '#' comments to end of line.
    void skip_space_and_comments() {
        while (!eof()) {
            char ch = data_[pos_];
            if (ch == '#') {
                while (!eof() && data_[pos_] != '\n') ++pos_;
            } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    int read_int(const char* what) {
        skip_space_and_comments();
        if (eof()) fail(std::string("unexpected end of file reading ") + what);
        if (data_[pos_] < '0' || data_[pos_] > '9') {
            fail(std::string("expected digit for ") + what);
        }
        long v = 0;
        while (!eof() && data_[pos_] >= '0' && data_[pos_] <= '9') {
            v = v * 10 + (data_[pos_] - '0');
            if (v > 1'000'000'000L) fail(std::string(what) + " out of range");
            ++pos_;
        }
        return static_cast<int>(v);
    }

    void expect_magic(const char* magic) {
        if (data_.size() < 2 || data_[0] != magic[0] || data_[1] != magic[1]) {
            fail(std::string("expected magic \"") + magic + "\"");
        }
        pos_ = 2;
    }

    // Single whitespace byte separates the header from the raster.
    void expect_raster_start() {
        if (eof()) fail("unexpected end of file before raster");
        char ch = data_[pos_];
        if (ch != ' ' && ch != '\t' && ch != '\r' && ch != '\n') {
            fail("expected whitespace before raster data");
        }
        ++pos_;
    }

    const char* raster(std::size_t need) {
        if (data_.size() - pos_ < need) {
            pos_ = data_.size();
            fail("truncated raster data");
        }
        const char* p = data_.data() + pos_;
        pos_ += need;
        return p;
    }

private:
    const std::vector<char>& data_;
    std::string path_;
    std::size_t pos_ = 0;
};

} // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
    auto data = slurp(path);
    Cursor cur(data, path.string());
    cur.expect_magic("P5");
    const int w = cur.read_int("width");
    const int h = cur.read_int("height");
    const int maxval = cur.read_int("maxval");
    if (w < 1 || h < 1) cur.fail("dimensions must be positive");
    if (maxval != 255) cur.fail("only maxval 255 is supported");
    cur.expect_raster_start();
    const std::size_t need = static_cast<std::size_t>(w) * h;
    const char* p = cur.raster(need);
    std::vector<std::uint8_t> px(reinterpret_cast<const std::uint8_t*>(p),
                                 reinterpret_cast<const std::uint8_t*>(p) + need);
    return GrayImage(w, h, std::move(px));
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()),
              static_cast<std::streamsize>(img.pixels().size()));
    if (!out) throw Error("write failed: " + path.string());
}

BinaryImage read_pbm(const std::filesystem::path& path) {
    auto data = slurp(path);
    Cursor cur(data, path.string());
    cur.expect_magic("P4");
    const int w = cur.read_int("width");
    const int h = cur.read_int("height");
    if (w < 1 || h < 1) cur.fail("dimensions must be positive");
    cur.expect_raster_start();
    const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
    const char* p = cur.raster(row_bytes * static_cast<std::size_t>(h));
    BinaryImage img(w, h);
    for (int r = 0; r < h; ++r) {
        const auto* rowp = reinterpret_cast<const std::uint8_t*>(p) + row_bytes * r;
        for (int c = 0; c < w; ++c) {
            // MSB-first packing, 1 = black = ink.
            img.set(r, c, (rowp[c / 8] >> (7 - c % 8)) & 1);
        }
    }
    return img;
}

void write_pbm(const BinaryImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "P4\n" << img.width() << " " << img.height() << "\n";
    const std::size_t row_bytes = (static_cast<std::size_t>(img.width()) + 7) / 8;
    std::vector<std::uint8_t> row(row_bytes);
    for (int r = 0; r < img.height(); ++r) {
        std::fill(row.begin(), row.end(), 0);
        for (int c = 0; c < img.width(); ++c) {
            if (img.at(r, c)) row[c / 8] |= static_cast<std::uint8_t>(1u << (7 - c % 8));
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row_bytes));
    }
    if (!out) throw Error("write failed: " + path.string());
}

} // namespace glyphseg

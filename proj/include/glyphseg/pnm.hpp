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

#include "glyphseg/raster.hpp"

namespace glyphseg {

// Binary PGM (P5, maxval 255) carries GrayImage; binary PBM (P4) carries
// BinaryImage with the PBM convention 1 = black = ink. Writers emit a fixed
// header layout so identical images produce identical bytes. Readers throw
// FormatError with the byte offset of the first problem.

GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const GrayImage& img, const std::filesystem::path& path);

BinaryImage read_pbm(const std::filesystem::path& path);
void write_pbm(const BinaryImage& img, const std::filesystem::path& path);

} // namespace glyphseg

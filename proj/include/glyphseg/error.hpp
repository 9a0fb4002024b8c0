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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glyphseg {

/// Base class for everything the toolkit throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad parameter values, unusable option combinations, missing inputs.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mismatched image or vector dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Box or index outside the addressed image.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Operation requires ink but the input is blank.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

/// Malformed file contents; carries the path and byte offset of the problem.
class FormatError : public Error {
public:
    FormatError(std::string path, std::size_t offset, const std::string& what)
        : Error(path + ": " + what + " (byte " + std::to_string(offset) + ")"),
          path_(std::move(path)),
          offset_(offset) {}

    const std::string& path() const { return path_; }
    std::size_t offset() const { return offset_; }

private:
    std::string path_;
    std::size_t offset_;
};

/// Training produced a non-finite error value.
class DivergenceError : public Error {
public:
    DivergenceError(int epoch, const std::string& what)
        : Error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}

    int epoch() const { return epoch_; }

private:
    int epoch_;
};

} // namespace glyphseg

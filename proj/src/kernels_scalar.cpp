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

#include "glyphseg/kernels.hpp"

namespace glyphseg::kernels {

namespace {

std::int32_t sum_u8_scalar(const std::uint8_t* p, std::size_t n) {
    std::int32_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
}

void accum_u8_i32_scalar(const std::uint8_t* p, std::int32_t* acc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += p[i];
}

std::int32_t mismatch_u8_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::int32_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += (a[i] != b[i]) ? 1 : 0;
    return s;
}

void xor1_u8_scalar(const std::uint8_t* in, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] ^ std::uint8_t{1};
}

void or_u8_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

double dot_f64_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_f64_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",
        sum_u8_scalar,
        accum_u8_i32_scalar,
        mismatch_u8_scalar,
        xor1_u8_scalar,
        or_u8_scalar,
        dot_f64_scalar,
        axpy_f64_scalar,
    };
    return ops;
}

} // namespace glyphseg::kernels

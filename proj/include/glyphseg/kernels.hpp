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
#include <cstdint>

namespace glyphseg::kernels {

// Hot inner loops behind the raster, similarity and trainer code paths.
//
// Byte kernels produce integer results and every variant must agree with
// the scalar reference bit-for-bit. The f64 kernels may reassociate their
// reductions, so variants agree only to a relative tolerance; within one
// process the selected variant is fixed, which keeps seeded runs
// reproducible on a given machine.
struct Ops {
    const char* name;

    /// Sum of n bytes (exact for any byte values).
    std::int32_t (*sum_u8)(const std::uint8_t* p, std::size_t n);

    /// acc[i] += p[i] for i in [0, n). Column-projection inner loop.
    void (*accum_u8_i32)(const std::uint8_t* p, std::int32_t* acc, std::size_t n);

    /// Count of positions where a[i] != b[i].
    std::int32_t (*mismatch_u8)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);

    /// out[i] = in[i] ^ 1. Binary-image inversion.
    void (*xor1_u8)(const std::uint8_t* in, std::uint8_t* out, std::size_t n);

    /// out[i] = a[i] | b[i]. Dilation row merge.
    void (*or_u8)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);

    double (*dot_f64)(const double* a, const double* b, std::size_t n);

    /// y[i] += a * x[i].
    void (*axpy_f64)(double a, const double* x, double* y, std::size_t n);
};

/// Portable reference implementation; always available.
const Ops& scalar_ops();

/// AVX2+FMA implementation, or nullptr when the build target or the
/// running CPU lacks support.
const Ops* avx2_ops();

/// The variant selected at startup: the widest supported one, unless the
/// GLYPHSEG_KERNELS environment variable ("scalar" or "avx2") says
/// otherwise.
const Ops& active();

/// Force a variant by name. Returns false (and changes nothing) when the
/// requested variant is unavailable. Test hook.
bool select(const char* name);

} // namespace glyphseg::kernels

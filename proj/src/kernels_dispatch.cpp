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

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace glyphseg::kernels {

namespace {

const Ops* pick_default() {
    if (const char* env = std::getenv("GLYPHSEG_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
        if (std::strcmp(env, "avx2") == 0 && avx2_ops()) return avx2_ops();
        // Unknown or unavailable request: fall through to autodetect.
    }
    if (const Ops* v = avx2_ops()) return v;
    return &scalar_ops();
}

std::atomic<const Ops*>& current() {
    static std::atomic<const Ops*> cur{pick_default()};
    return cur;
}

} // namespace

const Ops& active() { return *current().load(std::memory_order_relaxed); }

bool select(const char* name) {
    if (std::strcmp(name, "scalar") == 0) {
        current().store(&scalar_ops(), std::memory_order_relaxed);
        return true;
    }
    if (std::strcmp(name, "avx2") == 0) {
        if (const Ops* v = avx2_ops()) {
            current().store(v, std::memory_order_relaxed);
            return true;
        }
        return false;
    }
    return false;
}

} // namespace glyphseg::kernels

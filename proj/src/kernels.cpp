// Copyright 2026-present the qlga project
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

#include <cstdlib>
#include <cstring>

#include "qlga/kernels.hpp"

namespace qlga::kern {

namespace {

Backend pick_initial_backend() {
    const char* env = std::getenv("QLGA_KERNEL");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::avx2;
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = pick_initial_backend();

}  // namespace

const KernelOps& active_ops() {
    return g_backend == Backend::avx2 ? avx2_ops() : scalar_ops();
}

Backend active_backend() { return g_backend; }

bool set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported()) return false;
    g_backend = b;
    return true;
}

}  // namespace qlga::kern

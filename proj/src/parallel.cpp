// Copyright 2026 The Ontolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ontolab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ontolab {

std::size_t worker_count() {
    if (const char *env = std::getenv("ONTOLAB_THREADS"); env != nullptr && *env != '\0') {
        try {
            const long long n = std::stoll(env);
            if (n > 0) return static_cast<std::size_t>(n);
        } catch (const std::exception &) {
            // Fall through to the hardware default.
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace ontolab

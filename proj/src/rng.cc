/*
 * Copyright 2026 The MBQC Sampling Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mbqc/rng.h"

#include <cmath>
#include <numbers>

namespace mbqc {

uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

uint64_t derive_seed(uint64_t master, std::string_view purpose, uint64_t index) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : purpose) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return mix64(mix64(master ^ h) + 0x9E3779B97F4A7C15ULL * (index + 1));
}

uint64_t uniform_below(Rng &rng, uint64_t bound) {
    if (bound <= 1) {
        return 0;
    }
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    while (true) {
        uint64_t r = rng();
        if (r < limit) {
            return r % bound;
        }
    }
}

double standard_normal(Rng &rng) {
    double u1 = 1.0 - uniform01(rng);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

uint64_t binomial(Rng &rng, uint64_t trials, double p) {
    if (p <= 0 || trials == 0) {
        return 0;
    }
    if (p >= 1) {
        return trials;
    }
    if (trials < 64) {
        uint64_t k = 0;
        for (uint64_t i = 0; i < trials; i++) {
            k += uniform01(rng) < p;
        }
        return k;
    }
    // Skip over failures with geometric gaps.
    bool flip = p > 0.5;
    double q = flip ? 1 - p : p;
    double log_q = std::log1p(-q);
    uint64_t k = 0;
    uint64_t pos = 0;
    while (true) {
        double u = 1.0 - uniform01(rng);
        double gap = std::floor(std::log(u) / log_q);
        if (gap >= static_cast<double>(trials - pos)) {
            break;
        }
        pos += static_cast<uint64_t>(gap) + 1;
        k++;
        if (pos >= trials) {
            break;
        }
    }
    return flip ? trials - k : k;
}

}  // namespace mbqc

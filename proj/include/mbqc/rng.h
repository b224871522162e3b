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

#ifndef MBQC_RNG_H
#define MBQC_RNG_H

#include <cstdint>
#include <random>
#include <string_view>

namespace mbqc {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
uint64_t mix64(uint64_t x);

/// Child stream seed for (master, purpose, index).
///
/// The purpose tag is hashed with 64-bit FNV-1a, then
///     seed = mix64(mix64(master ^ fnv(purpose)) + 0x9E3779B97F4A7C15 * (index + 1)).
/// Streams with different tags or indices are independent for practical purposes, and adding
/// a new tag never changes the seeds produced for existing ones.
uint64_t derive_seed(uint64_t master, std::string_view purpose, uint64_t index);

inline Rng make_rng(uint64_t master, std::string_view purpose, uint64_t index) {
    return Rng(derive_seed(master, purpose, index));
}

/// Uniform double in [0, 1) built from the top 53 bits, so results do not depend on the
/// standard library's distribution implementation.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by rejection.
uint64_t uniform_below(Rng &rng, uint64_t bound);

/// Standard normal deviate (Box-Muller on uniform01).
double standard_normal(Rng &rng);

/// Binomial(trials, p) deviate: direct summation for small counts, normal-free inversion otherwise.
uint64_t binomial(Rng &rng, uint64_t trials, double p);

}  // namespace mbqc

#endif

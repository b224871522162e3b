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

#ifndef MBQC_ESTIMATE_H
#define MBQC_ESTIMATE_H

#include <cstdint>
#include <string>

#include "json.hpp"

namespace mbqc {

/// A statistical estimate with its standard error and sample counts.
struct Estimate {
    std::string method;
    double value = 0;
    double std_error = 0;
    uint64_t K = 0;  // outer samples (stabilizers, circuits, generators, ...)
    uint64_t M = 0;  // shots per outer sample

    double lower3() const {
        return value - 3 * std_error;
    }
    double upper3() const {
        return value + 3 * std_error;
    }
};

void to_json(nlohmann::json &j, const Estimate &e);
void from_json(const nlohmann::json &j, Estimate &e);

/// Mean and unbiased variance of a list of values.
struct MeanVar {
    double mean = 0;
    double var = 0;  // 0 for fewer than two values
};
MeanVar mean_var(const double *values, size_t count);

}  // namespace mbqc

#endif

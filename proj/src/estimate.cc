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

#include "mbqc/estimate.h"

namespace mbqc {

void to_json(nlohmann::json &j, const Estimate &e) {
    j = {{"method", e.method}, {"value", e.value}, {"std_error", e.std_error}, {"K", e.K}, {"M", e.M}};
}

void from_json(const nlohmann::json &j, Estimate &e) {
    e.method = j.value("method", std::string());
    e.value = j.at("value").get<double>();
    e.std_error = j.at("std_error").get<double>();
    e.K = j.value("K", uint64_t{0});
    e.M = j.value("M", uint64_t{0});
}

MeanVar mean_var(const double *values, size_t count) {
    MeanVar r;
    if (count == 0) {
        return r;
    }
    double s = 0;
    for (size_t i = 0; i < count; i++) {
        s += values[i];
    }
    r.mean = s / double(count);
    if (count > 1) {
        double ss = 0;
        for (size_t i = 0; i < count; i++) {
            ss += (values[i] - r.mean) * (values[i] - r.mean);
        }
        r.var = ss / double(count - 1);
    }
    return r;
}

}  // namespace mbqc

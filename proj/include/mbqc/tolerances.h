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

#ifndef MBQC_TOLERANCES_H
#define MBQC_TOLERANCES_H

#include <cstddef>

namespace mbqc {

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kMatrixTolerance = 1e-12;

/// Default cap on dense statevector simulation (2^20 amplitudes, 16 MiB).
inline constexpr size_t kMaxDenseQubits = 20;

/// Default cap on density-matrix simulation.
inline constexpr size_t kMaxDensityQubits = 10;

/// TVD estimation refuses beyond 2^20 outcomes.
inline constexpr size_t kMaxTvdQubits = 20;

}  // namespace mbqc

#endif

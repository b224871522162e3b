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

#ifndef MBQC_PRODUCT_OPERATOR_H
#define MBQC_PRODUCT_OPERATOR_H

#include <array>
#include <cstdint>
#include <vector>

#include "mbqc/lattice.h"

namespace mbqc {

/// Fast evaluation of a product operator's matrix elements.
///
/// A product of site involutions maps |x> to phase(x) |x ^ flip>. The phase is the signed product
/// of per-site factors, looked up eight sites at a time.
class ProductPhaseTable {
   public:
    explicit ProductPhaseTable(const StabilizerElement &op);

    uint64_t flip() const {
        return flip_;
    }
    cplx phase(uint64_t x) const {
        cplx p = sign_;
        for (size_t c = 0; c < tables_.size(); c++) {
            p *= tables_[c][(x >> (8 * c)) & 0xFF];
        }
        return p;
    }

   private:
    uint64_t flip_ = 0;
    double sign_ = 1;
    std::vector<std::array<cplx, 256>> tables_;
};

}  // namespace mbqc

#endif

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

#ifndef MBQC_LATTICE_H
#define MBQC_LATTICE_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mbqc/gates.h"
#include "mbqc/rng.h"
#include "mbqc/tolerances.h"

namespace mbqc {

struct Edge {
    size_t a;  // a < b
    size_t b;
    bool operator==(const Edge &) const = default;
};

/// An n x m square lattice. Site (r, c) has index r + c * n, so each column of n sites is a
/// contiguous block and the final column is the last block.
struct LatticeSpec {
    size_t n = 1;
    size_t m = 1;

    LatticeSpec() = default;
    LatticeSpec(size_t n, size_t m);

    size_t num_sites() const {
        return n * m;
    }
    size_t site(size_t row, size_t col) const {
        return row + col * n;
    }
    size_t row_of(size_t site) const {
        return site % n;
    }
    size_t col_of(size_t site) const {
        return site / n;
    }
    size_t num_edges() const {
        return n * (m - 1) + m * (n - 1);
    }
    /// Sites not in the final column.
    size_t num_bulk_sites() const {
        return n * (m - 1);
    }
    std::vector<size_t> neighbors(size_t site) const;
    size_t degree(size_t site) const;

    /// Edges sorted by (larger endpoint, smaller endpoint). This is the order in which a
    /// site-by-site streaming construction creates them.
    std::vector<Edge> edges() const;

    /// Edges in row-major order: horizontal then vertical bonds of row 0, row 1, ...
    std::vector<Edge> edges_row_major() const;

    bool operator==(const LatticeSpec &) const = default;
    std::string str() const;
};

void to_json(nlohmann::json &j, const LatticeSpec &lattice);
void from_json(const nlohmann::json &j, LatticeSpec &lattice);

/// Per-site rotation angles beta_k = k * pi/4, stored as k in {0, ..., 7}.
class AngleGrid {
   public:
    AngleGrid() = default;
    explicit AngleGrid(std::vector<uint8_t> k);

    static AngleGrid zeros(size_t num_sites);
    static AngleGrid random(size_t num_sites, Rng &rng);

    size_t size() const {
        return k_.size();
    }
    uint8_t operator[](size_t site) const {
        return k_[site];
    }
    double angle(size_t site) const;
    std::vector<double> angles() const;
    const std::vector<uint8_t> &values() const {
        return k_;
    }
    bool operator==(const AngleGrid &) const = default;

   private:
    std::vector<uint8_t> k_;
};

void to_json(nlohmann::json &j, const AngleGrid &beta);
void from_json(const nlohmann::json &j, AngleGrid &beta);

enum class SiteKind : uint8_t { Identity, ZOnly, XBeta, XBetaZ };

/// A single-site Hermitian involution.
///
/// XBeta is the rotated Pauli X(beta) = cos(beta) X + sin(beta) Y. The plain product X(beta) Z is
/// anti-Hermitian, so XBetaZ denotes the Hermitian -i X(beta) Z = X(beta - pi/2); the factor i
/// is carried by StabilizerElement::sign.
struct SiteOperator {
    SiteKind kind = SiteKind::Identity;
    double beta = 0;

    Mat2 matrix() const;
    bool flips() const {
        return kind == SiteKind::XBeta || kind == SiteKind::XBetaZ;
    }
    bool has_z() const {
        return kind == SiteKind::ZOnly || kind == SiteKind::XBetaZ;
    }
    /// Matrix entry <out|op|in> for the nonzero output of computational input bit `in`.
    cplx entry_for_input(int in) const;
};

/// A rotated-stabilizer group element: sign * (tensor product of site operators).
struct StabilizerElement {
    std::vector<SiteOperator> sites;
    std::vector<uint8_t> selector;
    int sign = 1;

    size_t num_sites() const {
        return sites.size();
    }
    /// Bit k set iff site k flips the computational basis (XBeta/XBetaZ). Requires <= 64 sites.
    uint64_t flip_mask() const;
    /// Bit k set iff site k carries a Z factor. Requires <= 64 sites.
    uint64_t z_mask() const;
    /// Full 2^N x 2^N matrix, row-major, index bit k = site k. For tests on small lattices.
    std::vector<cplx> dense_matrix() const;
};

StabilizerElement stabilizer_generator(const LatticeSpec &lattice, const AngleGrid &beta, size_t k);
StabilizerElement group_element(const LatticeSpec &lattice, const AngleGrid &beta, std::span<const uint8_t> selector);
StabilizerElement random_group_element(const LatticeSpec &lattice, const AngleGrid &beta, Rng &rng);

class StateVector;

/// Ideal cluster state prod CZ prod Z(beta_k) H |0...0>, with Z(beta) = exp(-i beta Z/2).
StateVector cluster_state(const LatticeSpec &lattice, const AngleGrid &beta, size_t max_qubits = kMaxDenseQubits);

/// Same with arbitrary real per-site angles.
StateVector cluster_state_with_angles(
    const LatticeSpec &lattice, std::span<const double> angles, size_t max_qubits = kMaxDenseQubits);

struct Circuit;

/// Gate-level preparation: H on every site, then either the Z(beta) layer followed by the CZ
/// layer (rotations_first) or the reverse. CZs are emitted in LatticeSpec::edges() order.
Circuit cluster_circuit(const LatticeSpec &lattice, const AngleGrid &beta, bool rotations_first = true);

}  // namespace mbqc

#endif

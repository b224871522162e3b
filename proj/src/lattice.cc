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

#include "mbqc/lattice.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mbqc/circuit.h"
#include "mbqc/product_operator.h"
#include "mbqc/state_vector.h"

namespace mbqc {

LatticeSpec::LatticeSpec(size_t n, size_t m) : n(n), m(m) {
    if (n == 0 || m == 0) {
        throw std::invalid_argument("lattice dimensions must be positive");
    }
}

std::vector<size_t> LatticeSpec::neighbors(size_t s) const {
    if (s >= num_sites()) {
        throw std::out_of_range("site " + std::to_string(s) + " outside " + str() + " lattice");
    }
    size_t r = row_of(s);
    size_t c = col_of(s);
    std::vector<size_t> out;
    if (c > 0) {
        out.push_back(site(r, c - 1));
    }
    if (r > 0) {
        out.push_back(site(r - 1, c));
    }
    if (r + 1 < n) {
        out.push_back(site(r + 1, c));
    }
    if (c + 1 < m) {
        out.push_back(site(r, c + 1));
    }
    return out;
}

size_t LatticeSpec::degree(size_t s) const {
    return neighbors(s).size();
}

std::vector<Edge> LatticeSpec::edges() const {
    std::vector<Edge> out;
    for (size_t s = 0; s < num_sites(); s++) {
        for (size_t t : neighbors(s)) {
            if (t < s) {
                out.push_back({t, s});
            }
        }
    }
    return out;
}

std::vector<Edge> LatticeSpec::edges_row_major() const {
    std::vector<Edge> out;
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c + 1 < m; c++) {
            out.push_back({site(r, c), site(r, c + 1)});
        }
        if (r + 1 < n) {
            for (size_t c = 0; c < m; c++) {
                out.push_back({site(r, c), site(r + 1, c)});
            }
        }
    }
    return out;
}

std::string LatticeSpec::str() const {
    return std::to_string(n) + "x" + std::to_string(m);
}

void to_json(nlohmann::json &j, const LatticeSpec &lattice) {
    j = {{"n", lattice.n}, {"m", lattice.m}};
}

void from_json(const nlohmann::json &j, LatticeSpec &lattice) {
    lattice = LatticeSpec(j.at("n").get<size_t>(), j.at("m").get<size_t>());
}

AngleGrid::AngleGrid(std::vector<uint8_t> k) : k_(std::move(k)) {
    for (size_t i = 0; i < k_.size(); i++) {
        if (k_[i] > 7) {
            throw std::invalid_argument("angle index " + std::to_string(k_[i]) + " at site " + std::to_string(i) + " is not in 0..7");
        }
    }
}

AngleGrid AngleGrid::zeros(size_t num_sites) {
    return AngleGrid(std::vector<uint8_t>(num_sites, 0));
}

AngleGrid AngleGrid::random(size_t num_sites, Rng &rng) {
    std::vector<uint8_t> k(num_sites);
    for (auto &v : k) {
        v = static_cast<uint8_t>(rng() >> 61);
    }
    return AngleGrid(std::move(k));
}

double AngleGrid::angle(size_t site) const {
    return k_.at(site) * (std::numbers::pi / 4);
}

std::vector<double> AngleGrid::angles() const {
    std::vector<double> out(k_.size());
    for (size_t i = 0; i < k_.size(); i++) {
        out[i] = angle(i);
    }
    return out;
}

void to_json(nlohmann::json &j, const AngleGrid &beta) {
    j = nlohmann::json::array();
    for (auto v : beta.values()) {
        j.push_back(static_cast<int>(v));
    }
}

void from_json(const nlohmann::json &j, AngleGrid &beta) {
    std::vector<uint8_t> k;
    for (const auto &v : j) {
        int x = v.get<int>();
        if (x < 0 || x > 7) {
            throw std::invalid_argument("angle index " + std::to_string(x) + " is not in 0..7");
        }
        k.push_back(static_cast<uint8_t>(x));
    }
    beta = AngleGrid(std::move(k));
}

Mat2 SiteOperator::matrix() const {
    switch (kind) {
        case SiteKind::Identity:
            return gate_matrix::identity();
        case SiteKind::ZOnly:
            return gate_matrix::pauli_z();
        case SiteKind::XBeta:
            return gate_matrix::rotated_x(beta);
        case SiteKind::XBetaZ:
            return gate_matrix::rotated_x(beta - std::numbers::pi / 2);
    }
    return {};
}

cplx SiteOperator::entry_for_input(int in) const {
    switch (kind) {
        case SiteKind::Identity:
            return 1;
        case SiteKind::ZOnly:
            return in ? -1 : 1;
        case SiteKind::XBeta:
            return std::polar(1.0, in ? -beta : beta);
        case SiteKind::XBetaZ: {
            double b = beta - std::numbers::pi / 2;
            return std::polar(1.0, in ? -b : b);
        }
    }
    return 0;
}

uint64_t StabilizerElement::flip_mask() const {
    if (sites.size() > 64) {
        throw std::invalid_argument("bit masks need at most 64 sites");
    }
    uint64_t f = 0;
    for (size_t k = 0; k < sites.size(); k++) {
        if (sites[k].flips()) {
            f |= uint64_t{1} << k;
        }
    }
    return f;
}

uint64_t StabilizerElement::z_mask() const {
    if (sites.size() > 64) {
        throw std::invalid_argument("bit masks need at most 64 sites");
    }
    uint64_t z = 0;
    for (size_t k = 0; k < sites.size(); k++) {
        if (sites[k].has_z()) {
            z |= uint64_t{1} << k;
        }
    }
    return z;
}

std::vector<cplx> StabilizerElement::dense_matrix() const {
    if (sites.size() > 12) {
        throw std::invalid_argument("dense operator matrices are limited to 12 sites");
    }
    ProductPhaseTable table(*this);
    size_t d = size_t{1} << sites.size();
    std::vector<cplx> out(d * d, 0);
    for (uint64_t x = 0; x < d; x++) {
        out[(x ^ table.flip()) * d + x] = table.phase(x);
    }
    return out;
}

ProductPhaseTable::ProductPhaseTable(const StabilizerElement &op) : sign_(op.sign) {
    size_t n = op.num_sites();
    if (n > 64) {
        throw std::invalid_argument("product operators are evaluated on at most 64 sites");
    }
    flip_ = op.flip_mask();
    size_t chunks = (n + 7) / 8;
    tables_.resize(chunks);
    for (size_t c = 0; c < chunks; c++) {
        for (size_t v = 0; v < 256; v++) {
            cplx p = 1;
            for (size_t b = 0; b < 8 && 8 * c + b < n; b++) {
                p *= op.sites[8 * c + b].entry_for_input((v >> b) & 1);
            }
            tables_[c][v] = p;
        }
    }
}

StabilizerElement stabilizer_generator(const LatticeSpec &lattice, const AngleGrid &beta, size_t k) {
    if (k >= lattice.num_sites()) {
        throw std::out_of_range("generator index " + std::to_string(k) + " outside " + lattice.str() + " lattice");
    }
    std::vector<uint8_t> selector(lattice.num_sites(), 0);
    selector[k] = 1;
    return group_element(lattice, beta, selector);
}

StabilizerElement group_element(const LatticeSpec &lattice, const AngleGrid &beta, std::span<const uint8_t> selector) {
    size_t n = lattice.num_sites();
    if (selector.size() != n) {
        throw std::invalid_argument(
            "selector has length " + std::to_string(selector.size()) + " but lattice has " + std::to_string(n) + " sites");
    }
    if (beta.size() != n) {
        throw std::invalid_argument("angle grid size does not match lattice");
    }
    StabilizerElement out;
    out.selector.assign(selector.begin(), selector.end());
    out.sites.resize(n);
    size_t internal_edges = 0;
    size_t xz_sites = 0;
    for (size_t k = 0; k < n; k++) {
        bool b = selector[k] != 0;
        out.selector[k] = b;
        int parity = 0;
        for (size_t l : lattice.neighbors(k)) {
            if (selector[l]) {
                parity ^= 1;
                if (b && l < k) {
                    internal_edges++;
                }
            }
        }
        SiteOperator &s = out.sites[k];
        s.beta = beta.angle(k);
        if (b) {
            s.kind = parity ? SiteKind::XBetaZ : SiteKind::XBeta;
            xz_sites += parity;
        } else {
            s.kind = parity ? SiteKind::ZOnly : SiteKind::Identity;
        }
    }
    // Commuting Z past X(beta) within the product gives (-1)^{internal edges}; each XBetaZ site
    // contributes a factor i, and their count is always even.
    size_t exponent = internal_edges + xz_sites / 2;
    out.sign = (exponent & 1) ? -1 : 1;
    return out;
}

StabilizerElement random_group_element(const LatticeSpec &lattice, const AngleGrid &beta, Rng &rng) {
    std::vector<uint8_t> selector(lattice.num_sites());
    uint64_t word = 0;
    for (size_t k = 0; k < selector.size(); k++) {
        if (k % 64 == 0) {
            word = rng();
        }
        selector[k] = (word >> (k % 64)) & 1;
    }
    return group_element(lattice, beta, selector);
}

StateVector cluster_state_with_angles(const LatticeSpec &lattice, std::span<const double> angles, size_t max_qubits) {
    size_t n = lattice.num_sites();
    if (n > max_qubits) {
        throw std::invalid_argument(
            lattice.str() + " lattice exceeds the dense simulation cap of " + std::to_string(max_qubits) + " qubits");
    }
    if (angles.size() != n) {
        throw std::invalid_argument("angle count does not match lattice");
    }
    // Amplitude of x: 2^{-n/2} prod_k e^{-i theta_k (1 - 2 x_k) / 2} * (-1)^{#edges inside x}.
    size_t d = size_t{1} << n;
    std::vector<cplx> amps(d);
    double norm = std::pow(0.5, n / 2.0);
    amps[0] = norm;
    for (size_t k = 0; k < n; k++) {
        amps[0] *= std::polar(1.0, -angles[k] / 2);
    }
    // Doubling: setting bit k multiplies by e^{i theta_k}.
    for (size_t k = 0; k < n; k++) {
        size_t half = size_t{1} << k;
        cplx f = std::polar(1.0, angles[k]);
        for (size_t i = 0; i < half; i++) {
            amps[i + half] = amps[i] * f;
        }
    }
    for (const auto &e : lattice.edges()) {
        size_t mask = (size_t{1} << e.a) | (size_t{1} << e.b);
        for (size_t i = 0; i < d; i++) {
            if ((i & mask) == mask) {
                amps[i] = -amps[i];
            }
        }
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector cluster_state(const LatticeSpec &lattice, const AngleGrid &beta, size_t max_qubits) {
    if (beta.size() != lattice.num_sites()) {
        throw std::invalid_argument("angle grid size does not match lattice");
    }
    auto angles = beta.angles();
    return cluster_state_with_angles(lattice, angles, max_qubits);
}

Circuit cluster_circuit(const LatticeSpec &lattice, const AngleGrid &beta, bool rotations_first) {
    size_t n = lattice.num_sites();
    if (beta.size() != n) {
        throw std::invalid_argument("angle grid size does not match lattice");
    }
    Circuit c(n);
    for (size_t k = 0; k < n; k++) {
        c.h(static_cast<uint32_t>(k));
    }
    auto rotations = [&]() {
        for (size_t k = 0; k < n; k++) {
            c.rz(static_cast<uint32_t>(k), beta.angle(k));
        }
    };
    if (rotations_first) {
        rotations();
    }
    for (const auto &e : lattice.edges()) {
        c.cz(static_cast<uint32_t>(e.a), static_cast<uint32_t>(e.b));
    }
    if (!rotations_first) {
        rotations();
    }
    return c;
}

}  // namespace mbqc

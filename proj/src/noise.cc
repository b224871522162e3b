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

#include "mbqc/noise.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "mbqc/state_vector.h"

namespace mbqc {

NoiseSpec NoiseSpec::none() {
    return {};
}

NoiseSpec NoiseSpec::depolarizing(double gamma) {
    NoiseSpec s;
    s.kind = NoiseKind::Depolarizing;
    s.gamma = gamma;
    return s;
}

NoiseSpec NoiseSpec::dephasing(double xi) {
    NoiseSpec s;
    s.kind = NoiseKind::Dephasing;
    s.xi = xi;
    return s;
}

NoiseSpec NoiseSpec::gaussian_z(double sigma, bool correlated, size_t resample_every) {
    NoiseSpec s;
    s.kind = NoiseKind::GaussianZ;
    s.sigma = sigma;
    s.correlated = correlated;
    s.resample_every = resample_every;
    s.after_prep = true;
    s.scope = NoiseScope::AllQubits;
    return s;
}

bool NoiseSpec::is_none() const {
    switch (kind) {
        case NoiseKind::None:
            return true;
        case NoiseKind::Depolarizing:
            return gamma == 0;
        case NoiseKind::Dephasing:
            return xi == 0;
        case NoiseKind::GaussianZ:
            return sigma == 0;
    }
    return true;
}

size_t NoiseSpec::shots_per_realization() const {
    return kind == NoiseKind::GaussianZ ? resample_every : 1;
}

std::array<double, 3> NoiseSpec::pauli_probabilities() const {
    switch (kind) {
        case NoiseKind::Depolarizing:
            return {gamma / 4, gamma / 4, gamma / 4};
        case NoiseKind::Dephasing:
            return {0, 0, xi / 2};
        default:
            return {0, 0, 0};
    }
}

std::vector<std::string> NoiseSpec::violations() const {
    std::vector<std::string> out;
    if (!(gamma >= 0 && gamma <= 1)) {
        out.push_back("noise.gamma must lie in [0, 1]");
    }
    if (!(xi >= 0 && xi <= 1)) {
        out.push_back("noise.xi must lie in [0, 1]");
    }
    if (!(sigma >= 0) || !std::isfinite(sigma)) {
        out.push_back("noise.sigma must be finite and >= 0");
    }
    if (resample_every < 1) {
        out.push_back("noise.resample_every must be >= 1");
    }
    return out;
}

void NoiseSpec::validate() const {
    auto v = violations();
    if (!v.empty()) {
        throw std::invalid_argument(v.front());
    }
}

std::string noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::None:
            return "none";
        case NoiseKind::Depolarizing:
            return "depolarizing";
        case NoiseKind::Dephasing:
            return "dephasing";
        case NoiseKind::GaussianZ:
            return "gaussian_z";
    }
    return "none";
}

void to_json(nlohmann::json &j, const NoiseSpec &s) {
    j = {{"kind", noise_kind_name(s.kind)}};
    switch (s.kind) {
        case NoiseKind::None:
            return;
        case NoiseKind::Depolarizing:
            j["gamma"] = s.gamma;
            break;
        case NoiseKind::Dephasing:
            j["xi"] = s.xi;
            break;
        case NoiseKind::GaussianZ:
            j["sigma"] = s.sigma;
            j["correlated"] = s.correlated;
            j["resample_every"] = s.resample_every;
            break;
    }
    j["after_prep"] = s.after_prep;
    j["after_entangler"] = s.after_entangler;
    j["scope"] = s.scope == NoiseScope::AllQubits ? "all_qubits" : "gate_qubits";
}

void from_json(const nlohmann::json &j, NoiseSpec &s) {
    std::string kind = j.value("kind", std::string("none"));
    if (kind == "none") {
        s = NoiseSpec::none();
    } else if (kind == "depolarizing") {
        s = NoiseSpec::depolarizing(j.at("gamma").get<double>());
    } else if (kind == "dephasing") {
        s = NoiseSpec::dephasing(j.at("xi").get<double>());
    } else if (kind == "gaussian_z") {
        s = NoiseSpec::gaussian_z(
            j.at("sigma").get<double>(), j.value("correlated", false), j.value("resample_every", size_t{50}));
    } else {
        throw std::invalid_argument("unknown noise kind: " + kind);
    }
    s.after_prep = j.value("after_prep", s.after_prep);
    s.after_entangler = j.value("after_entangler", s.after_entangler);
    if (j.contains("scope")) {
        std::string scope = j.at("scope").get<std::string>();
        if (scope == "all_qubits") {
            s.scope = NoiseScope::AllQubits;
        } else if (scope == "gate_qubits") {
            s.scope = NoiseScope::GateQubits;
        } else {
            throw std::invalid_argument("unknown noise scope: " + scope);
        }
    }
}

std::vector<NoiseSlot> noise_slots(const Circuit &circuit, const NoiseSpec &noise) {
    std::vector<NoiseSlot> out;
    if (noise.is_none()) {
        return out;
    }
    std::vector<uint32_t> all(circuit.num_qubits);
    for (uint32_t q = 0; q < all.size(); q++) {
        all[q] = q;
    }
    size_t prep_end = circuit.gates.size();
    for (size_t i = 0; i < circuit.gates.size(); i++) {
        if (circuit.gates[i].is_two_qubit()) {
            prep_end = i;
            break;
        }
    }
    if (noise.after_prep) {
        out.push_back({prep_end, all});
    }
    if (noise.after_entangler) {
        for (size_t i = 0; i < circuit.gates.size(); i++) {
            const Gate &g = circuit.gates[i];
            if (!g.is_two_qubit()) {
                continue;
            }
            if (noise.scope == NoiseScope::GateQubits) {
                out.push_back({i + 1, {g.q0, g.q1}});
            } else {
                out.push_back({i + 1, all});
            }
        }
    }
    return out;
}

Circuit inject(const Circuit &circuit, const NoiseSpec &noise, Rng &rng) {
    noise.validate();
    auto slots = noise_slots(circuit, noise);
    Circuit out(circuit.num_qubits);
    auto probs = noise.pauli_probabilities();
    auto emit = [&](const NoiseSlot &slot) {
        if (noise.kind == NoiseKind::GaussianZ) {
            double shared = noise.sigma * standard_normal(rng);
            for (auto q : slot.qubits) {
                out.rz(q, noise.correlated ? shared : noise.sigma * standard_normal(rng));
            }
            return;
        }
        for (auto q : slot.qubits) {
            double u = uniform01(rng);
            if (u < probs[0]) {
                out.x(q);
            } else if (u < probs[0] + probs[1]) {
                out.y(q);
            } else if (u < probs[0] + probs[1] + probs[2]) {
                out.z(q);
            }
        }
    };
    size_t next = 0;
    for (size_t i = 0; i <= circuit.gates.size(); i++) {
        while (next < slots.size() && slots[next].position == i) {
            emit(slots[next++]);
        }
        if (i < circuit.gates.size()) {
            out.append(circuit.gates[i]);
        }
    }
    return out;
}

std::vector<ChannelStep> inject_channels(const Circuit &circuit, const NoiseSpec &noise) {
    noise.validate();
    auto slots = noise_slots(circuit, noise);
    std::vector<ChannelStep> plan;
    auto emit = [&](const NoiseSlot &slot) {
        switch (noise.kind) {
            case NoiseKind::Depolarizing:
                for (auto q : slot.qubits) {
                    plan.push_back({ChannelStep::Type::Depolarize, {}, {q}, noise.gamma});
                }
                break;
            case NoiseKind::Dephasing:
                for (auto q : slot.qubits) {
                    plan.push_back({ChannelStep::Type::Dephase, {}, {q}, noise.xi});
                }
                break;
            case NoiseKind::GaussianZ:
                if (noise.correlated) {
                    plan.push_back({ChannelStep::Type::CollectiveDephase, {}, slot.qubits, noise.sigma});
                } else {
                    for (auto q : slot.qubits) {
                        plan.push_back({ChannelStep::Type::Dephase, {}, {q}, effective_xi(noise.sigma)});
                    }
                }
                break;
            case NoiseKind::None:
                break;
        }
    };
    size_t next = 0;
    for (size_t i = 0; i <= circuit.gates.size(); i++) {
        while (next < slots.size() && slots[next].position == i) {
            emit(slots[next++]);
        }
        if (i < circuit.gates.size()) {
            plan.push_back({ChannelStep::Type::Gate, circuit.gates[i], {}, 0});
        }
    }
    return plan;
}

void evolve(DensityMatrix &dm, const std::vector<ChannelStep> &plan) {
    for (const auto &step : plan) {
        switch (step.type) {
            case ChannelStep::Type::Gate:
                dm.apply(step.gate);
                break;
            case ChannelStep::Type::Depolarize:
                dm.depolarize(step.qubits[0], step.parameter);
                break;
            case ChannelStep::Type::Dephase:
                dm.dephase(step.qubits[0], step.parameter);
                break;
            case ChannelStep::Type::CollectiveDephase:
                dm.collective_dephase(step.qubits, step.parameter);
                break;
        }
    }
}

DensityMatrix simulate_density(const Circuit &circuit, const NoiseSpec &noise, size_t max_qubits) {
    DensityMatrix dm(circuit.num_qubits, max_qubits);
    evolve(dm, inject_channels(circuit, noise));
    return dm;
}

double effective_xi(double sigma) {
    if (!(sigma >= 0)) {
        throw std::domain_error("sigma must be >= 0");
    }
    return 1 - std::exp(-sigma * sigma / 2);
}

double effective_gamma(double sigma, double c) {
    if (!(sigma >= 0)) {
        throw std::domain_error("sigma must be >= 0");
    }
    return 1 - std::exp(-c * sigma * sigma);
}

double noise_eta(const NoiseSpec &noise) {
    switch (noise.kind) {
        case NoiseKind::None:
            return 0;
        case NoiseKind::Depolarizing:
            return 0.75 * noise.gamma;
        case NoiseKind::Dephasing:
            return noise.xi / 2;
        case NoiseKind::GaussianZ:
            return 0.75 * effective_gamma(noise.sigma);
    }
    return 0;
}

double dalzell_prediction(const LatticeSpec &lattice, double eta) {
    if (!(eta >= 0 && eta <= 1)) {
        throw std::domain_error("eta must lie in [0, 1]");
    }
    return std::exp(-2.0 * double(lattice.num_edges()) * eta);
}

double fit_gamma_constant(std::span<const double> sigmas, std::span<const double> fidelities, size_t num_entanglers) {
    if (sigmas.size() != fidelities.size() || sigmas.empty()) {
        throw std::invalid_argument("fit needs matching, non-empty sigma and fidelity lists");
    }
    auto sse = [&](double c) {
        double t = 0;
        for (size_t i = 0; i < sigmas.size(); i++) {
            double model = std::exp(-2.0 * double(num_entanglers) * 0.75 * effective_gamma(sigmas[i], c));
            t += (model - fidelities[i]) * (model - fidelities[i]);
        }
        return t;
    };
    double lo = 0;
    double hi = 5;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double a = hi - g * (hi - lo);
    double b = lo + g * (hi - lo);
    double fa = sse(a);
    double fb = sse(b);
    for (int it = 0; it < 200; it++) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = sse(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = sse(b);
        }
    }
    return (lo + hi) / 2;
}

std::vector<FrameSlot> cluster_frame_slots(const LatticeSpec &lattice, const NoiseSpec &noise) {
    if (!noise.is_pauli() && !noise.is_none()) {
        throw std::invalid_argument("frame slots need Pauli noise");
    }
    size_t n = lattice.num_sites();
    if (n > 64) {
        throw std::invalid_argument("frame masks support at most 64 sites");
    }
    auto edges = lattice.edges();
    std::vector<FrameSlot> out;
    if (noise.is_none()) {
        return out;
    }
    // After the first `done` CZ gates, an X error on q equals X_q times Z on every partner of q in
    // a later CZ; on the final state X_q acts as Z on all neighbors, so the net mask is the set of
    // partners in CZs already applied.
    auto slot = [&](uint32_t q, size_t done) {
        uint64_t mx = 0;
        for (size_t e = 0; e < done; e++) {
            if (edges[e].a == q) {
                mx |= uint64_t{1} << edges[e].b;
            } else if (edges[e].b == q) {
                mx |= uint64_t{1} << edges[e].a;
            }
        }
        out.push_back({q, mx, uint64_t{1} << q});
    };
    if (noise.after_prep) {
        for (uint32_t q = 0; q < n; q++) {
            slot(q, 0);
        }
    }
    if (noise.after_entangler) {
        for (size_t e = 0; e < edges.size(); e++) {
            if (noise.scope == NoiseScope::GateQubits) {
                slot(static_cast<uint32_t>(edges[e].a), e + 1);
                slot(static_cast<uint32_t>(edges[e].b), e + 1);
            } else {
                for (uint32_t q = 0; q < n; q++) {
                    slot(q, e + 1);
                }
            }
        }
    }
    return out;
}

std::vector<double> frame_mask_distribution(const LatticeSpec &lattice, const NoiseSpec &noise, size_t max_qubits) {
    size_t n = lattice.num_sites();
    if (n > max_qubits) {
        throw std::invalid_argument("mask distribution exceeds the dense cap");
    }
    auto slots = cluster_frame_slots(lattice, noise);
    auto p = noise.pauli_probabilities();
    double p_none = 1 - p[0] - p[1] - p[2];
    size_t d = size_t{1} << n;
    // Characteristic function: product over slots of sum_P p_P (-1)^{mask_P . y}.
    std::vector<double> chi(d, 1.0);
    for (const auto &s : slots) {
        uint64_t my = s.mask_x ^ s.mask_z;
        for (uint64_t y = 0; y < d; y++) {
            double sx = (std::popcount(s.mask_x & y) & 1) ? -1 : 1;
            double sy = (std::popcount(my & y) & 1) ? -1 : 1;
            double sz = (std::popcount(s.mask_z & y) & 1) ? -1 : 1;
            chi[y] *= p_none + p[0] * sx + p[1] * sy + p[2] * sz;
        }
    }
    walsh_hadamard(chi);
    for (auto &v : chi) {
        v /= double(d);
    }
    return chi;
}

std::vector<double> xor_convolve(const std::vector<double> &p, const std::vector<double> &d) {
    if (p.size() != d.size()) {
        throw std::invalid_argument("xor convolution of different sizes");
    }
    std::vector<double> a = p;
    std::vector<double> b = d;
    walsh_hadamard(a);
    walsh_hadamard(b);
    for (size_t i = 0; i < a.size(); i++) {
        a[i] *= b[i];
    }
    walsh_hadamard(a);
    for (auto &v : a) {
        v /= double(a.size());
    }
    return a;
}

}  // namespace mbqc

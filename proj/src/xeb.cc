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

#include "mbqc/xeb.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "mbqc/parallel.h"
#include "mbqc/state_vector.h"

namespace mbqc {

std::string xeb_variant_name(XebVariant v) {
    return v == XebVariant::Linear ? "linear" : "log";
}

std::string xeb_scope_name(XebScope s) {
    return s == XebScope::Physical ? "physical" : "logical";
}

namespace {

Estimate mean_estimate(const std::vector<double> &v, const std::string &method) {
    MeanVar mv = mean_var(v.data(), v.size());
    Estimate e;
    e.method = method;
    e.value = mv.mean;
    e.std_error = v.size() > 1 ? std::sqrt(mv.var / double(v.size())) : 0;
    e.K = 1;
    e.M = v.size();
    return e;
}

void check_samples(std::span<const uint64_t> samples, const std::vector<double> &exact) {
    if (samples.empty()) {
        throw std::invalid_argument("XEB needs at least one sample");
    }
    for (auto x : samples) {
        if (x >= exact.size()) {
            throw std::invalid_argument("sample outside the exact distribution");
        }
    }
}

double log_probability(double p) {
    if (p < kZeroProbability) {
        throw std::domain_error("sample has zero ideal probability; the log XEB is undefined");
    }
    return std::log(p);
}

}  // namespace

Estimate linear_xeb(std::span<const uint64_t> samples, const std::vector<double> &exact) {
    check_samples(samples, exact);
    double d = double(exact.size());
    std::vector<double> v;
    v.reserve(samples.size());
    for (auto x : samples) {
        v.push_back(d * exact[x] - 1);
    }
    return mean_estimate(v, "linear-xeb");
}

Estimate log_xeb(std::span<const uint64_t> samples, const std::vector<double> &exact) {
    check_samples(samples, exact);
    std::vector<double> v;
    v.reserve(samples.size());
    for (auto x : samples) {
        v.push_back(-log_probability(exact[x]));
    }
    return mean_estimate(v, "log-xeb");
}

std::vector<double> logical_conditional(const LatticeSpec &lattice, uint64_t x_b, const std::vector<double> &full) {
    size_t bulk = lattice.num_bulk_sites();
    size_t n = lattice.n;
    if (full.size() != (size_t{1} << lattice.num_sites())) {
        throw std::invalid_argument("distribution size does not match the lattice");
    }
    if (bulk < 64 && x_b >= (uint64_t{1} << bulk)) {
        throw std::invalid_argument("bulk outcome has more bits than the bulk");
    }
    double scale = std::ldexp(1.0, static_cast<int>(bulk));
    std::vector<double> out(size_t{1} << n);
    double marginal = 0;
    for (uint64_t xf = 0; xf < out.size(); xf++) {
        double p = full[x_b | (xf << bulk)];
        marginal += p;
        out[xf] = scale * p;
    }
    if (std::abs(marginal * scale - 1) > 1e-10) {
        throw std::invalid_argument("bulk marginal is not uniform; the input is not an ideal cluster distribution");
    }
    return out;
}

Circuit extract_logical_circuit(const LatticeSpec &lattice, const AngleGrid &beta, uint64_t x_b) {
    size_t n = lattice.n;
    size_t bulk = lattice.num_bulk_sites();
    if (beta.size() != lattice.num_sites()) {
        throw std::invalid_argument("angle grid size does not match lattice");
    }
    if (bulk < 64 && x_b >= (uint64_t{1} << bulk)) {
        throw std::invalid_argument("bulk outcome has more bits than the bulk");
    }
    Circuit c(n);
    for (uint32_t r = 0; r < n; r++) {
        c.h(r);
    }
    for (size_t col = 0; col < lattice.m; col++) {
        for (uint32_t r = 0; r < n; r++) {
            c.rz(r, beta.angle(lattice.site(r, col)));
        }
        if (col + 1 < lattice.m) {
            for (uint32_t r = 0; r < n; r++) {
                if ((x_b >> lattice.site(r, col)) & 1) {
                    c.z(r);
                }
            }
        }
        for (uint32_t r = 0; r + 1 < n; r++) {
            c.cz(r, r + 1);
        }
        for (uint32_t r = 0; r < n; r++) {
            c.h(r);
        }
    }
    return c;
}

XebRecord make_xeb_record(const LatticeSpec &lattice, const AngleGrid &beta, std::vector<uint64_t> samples, bool with_logical) {
    XebRecord rec;
    rec.beta = beta;
    auto full = hadamard_basis_distribution(cluster_state(lattice, beta));
    rec.physical_probability.reserve(samples.size());
    for (auto x : samples) {
        rec.physical_probability.push_back(full.at(x));
    }
    if (with_logical) {
        size_t bulk = lattice.num_bulk_sites();
        uint64_t bulk_mask = (uint64_t{1} << bulk) - 1;
        std::map<uint64_t, std::vector<double>> cache;
        for (auto x : samples) {
            uint64_t xb = x & bulk_mask;
            auto it = cache.find(xb);
            if (it == cache.end()) {
                auto circuit = extract_logical_circuit(lattice, beta, xb);
                it = cache.emplace(xb, apply_circuit(StateVector(lattice.n), circuit).probabilities()).first;
            }
            rec.logical_probability.push_back(it->second[x >> bulk]);
        }
    }
    rec.samples = std::move(samples);
    return rec;
}

std::vector<XebRecord> collect_xeb_records(
    const PreparationFactory &factory, const LatticeSpec &lattice, uint64_t K, uint64_t M, uint64_t seed, size_t threads,
    bool with_logical) {
    if (K < 1 || M < 1) {
        throw std::invalid_argument("K and M must be at least 1");
    }
    std::vector<XebRecord> out(K);
    parallel_for(K, threads, [&](size_t i) {
        Rng rng = make_rng(seed, "xeb", i);
        AngleGrid beta = AngleGrid::random(lattice.num_sites(), rng);
        auto prep = factory(beta);
        std::vector<uint64_t> samples;
        samples.reserve(M);
        prep->sample_hadamard(M, rng, samples);
        out[i] = make_xeb_record(lattice, beta, std::move(samples), with_logical);
    });
    return out;
}

Estimate average_xeb(const std::vector<XebRecord> &records, const LatticeSpec &lattice, XebVariant variant, XebScope scope) {
    if (records.empty()) {
        throw std::invalid_argument("XEB average over an empty ensemble");
    }
    bool logical = scope == XebScope::Logical;
    double dim = std::ldexp(1.0, static_cast<int>(logical ? lattice.n : lattice.num_sites()));
    size_t bulk = lattice.num_bulk_sites();
    uint64_t bulk_mask = (uint64_t{1} << bulk) - 1;
    auto value = [&](double p) {
        return variant == XebVariant::Linear ? dim * p - 1 : -log_probability(p);
    };

    size_t K = records.size();
    std::vector<double> circuit_value(K);
    std::vector<double> within(K, 0);  // sample variance of the per-sample values / shots
    uint64_t total_shots = 0;
    for (size_t i = 0; i < K; i++) {
        const auto &rec = records[i];
        const auto &probs = logical ? rec.logical_probability : rec.physical_probability;
        if (probs.size() != rec.samples.size() || rec.samples.empty()) {
            throw std::invalid_argument("XEB record is missing " + xeb_scope_name(scope) + " probabilities");
        }
        total_shots += rec.samples.size();
        if (!logical) {
            std::vector<double> v(probs.size());
            for (size_t j = 0; j < v.size(); j++) {
                v[j] = value(probs[j]);
            }
            MeanVar mv = mean_var(v.data(), v.size());
            circuit_value[i] = mv.mean;
            within[i] = mv.var / double(v.size());
        } else {
            std::map<uint64_t, std::pair<double, size_t>> groups;
            for (size_t j = 0; j < probs.size(); j++) {
                auto &g = groups[rec.samples[j] & bulk_mask];
                g.first += value(probs[j]);
                g.second++;
            }
            double t = 0;
            for (const auto &[xb, g] : groups) {
                t += g.first / double(g.second);
            }
            circuit_value[i] = t / double(groups.size());
        }
    }
    MeanVar across = mean_var(circuit_value.data(), K);
    Estimate e;
    e.method = xeb_variant_name(variant) + "-xeb-" + xeb_scope_name(scope);
    e.value = across.mean;
    e.K = K;
    e.M = total_shots / K;
    double k = double(K);
    if (!logical) {
        double mean_within = 0;
        for (double w : within) {
            mean_within += w / k;
        }
        // (1/K) E[var_x / M] + (1/K) var_beta, with var_beta net of the shot-noise contribution.
        double var_beta = K > 1 ? std::max(0.0, across.var - mean_within) : 0.0;
        e.std_error = std::sqrt(mean_within / k + var_beta / k);
    } else {
        e.std_error = K > 1 ? std::sqrt(across.var / k) : 0.0;
    }
    return e;
}

double IdealXebValues::linear_asymptote() const {
    return 2 / (1 + std::ldexp(1.0, -static_cast<int>(n))) - 1;
}

double IdealXebValues::log_self_asymptote() const {
    return double(n * m) * std::numbers::ln2 - 1 + kEulerGamma;
}

double IdealXebValues::log_uniform_asymptote() const {
    return double(n * m) * std::numbers::ln2 + kEulerGamma;
}

Estimate IdealXebValues::self(XebVariant variant, XebScope scope) const {
    if (variant == XebVariant::Linear) {
        return linear_self;
    }
    return scope == XebScope::Physical ? log_self_physical : log_self_logical;
}

Estimate IdealXebValues::uniform(XebVariant variant, XebScope scope) const {
    if (variant == XebVariant::Linear) {
        Estimate zero;
        zero.method = "linear-uniform";
        return zero;
    }
    return scope == XebScope::Physical ? log_uniform_physical : log_uniform_logical;
}

void to_json(nlohmann::json &j, const IdealXebValues &v) {
    j = {
        {"n", v.n},
        {"m", v.m},
        {"K_mc", v.K_mc},
        {"seed", v.seed},
        {"linear_self", v.linear_self},
        {"log_self_physical", v.log_self_physical},
        {"log_self_logical", v.log_self_logical},
        {"log_uniform_physical", v.log_uniform_physical},
        {"log_uniform_logical", v.log_uniform_logical},
        {"zero_support_physical", v.zero_support_physical},
        {"zero_support_logical", v.zero_support_logical},
        {"logical_pairs", v.logical_pairs},
        {"linear_asymptote", v.linear_asymptote()},
        {"log_self_asymptote", v.log_self_asymptote()},
        {"log_uniform_asymptote", v.log_uniform_asymptote()},
    };
}

void from_json(const nlohmann::json &j, IdealXebValues &v) {
    v.n = j.at("n").get<size_t>();
    v.m = j.at("m").get<size_t>();
    v.K_mc = j.at("K_mc").get<uint64_t>();
    v.seed = j.at("seed").get<uint64_t>();
    v.linear_self = j.at("linear_self").get<Estimate>();
    v.log_self_physical = j.at("log_self_physical").get<Estimate>();
    v.log_self_logical = j.at("log_self_logical").get<Estimate>();
    v.log_uniform_physical = j.at("log_uniform_physical").get<Estimate>();
    v.log_uniform_logical = j.at("log_uniform_logical").get<Estimate>();
    v.zero_support_physical = j.at("zero_support_physical").get<uint64_t>();
    v.zero_support_logical = j.at("zero_support_logical").get<uint64_t>();
    v.logical_pairs = j.at("logical_pairs").get<uint64_t>();
}

IdealXebValues ideal_xeb_values(size_t n, size_t m, uint64_t K_mc, uint64_t seed, size_t threads) {
    LatticeSpec lattice(n, m);
    if (K_mc < 2) {
        throw std::invalid_argument("ideal XEB Monte Carlo needs K_mc >= 2");
    }
    if (n > 20) {
        throw std::invalid_argument("logical circuits are limited to 20 qubits");
    }
    size_t bulk = lattice.num_bulk_sites();
    if (bulk > 63) {
        throw std::invalid_argument("bulk outcomes are limited to 63 bits");
    }
    // Enumerate every x_b when there are few, otherwise draw one uniformly per circuit.
    bool enumerate = bulk <= 6;
    double shift = double(bulk) * std::numbers::ln2;
    double dim = std::ldexp(1.0, static_cast<int>(n));

    struct PerCircuit {
        double linear = 0;
        double log_self = 0;
        double log_uniform_sum = 0;
        uint64_t full_support = 0;
        uint64_t pairs = 0;
    };
    std::vector<PerCircuit> per(K_mc);
    parallel_for(K_mc, threads, [&](size_t i) {
        Rng rng = make_rng(seed, "ideal-xeb", i);
        AngleGrid beta = AngleGrid::random(lattice.num_sites(), rng);
        std::vector<uint64_t> bulks;
        if (enumerate) {
            for (uint64_t xb = 0; xb < (uint64_t{1} << bulk); xb++) {
                bulks.push_back(xb);
            }
        } else {
            bulks.push_back(bulk == 0 ? 0 : (rng() & ((uint64_t{1} << bulk) - 1)));
        }
        PerCircuit &pc = per[i];
        for (auto xb : bulks) {
            auto p = apply_circuit(StateVector(n), extract_logical_circuit(lattice, beta, xb)).probabilities();
            double sq = 0;
            double ent = 0;
            double logsum = 0;
            bool zero = false;
            for (double v : p) {
                sq += v * v;
                if (v < kZeroProbability) {
                    zero = true;
                } else {
                    ent -= v * std::log(v);
                    logsum -= std::log(v);
                }
            }
            pc.linear += dim * sq - 1;
            pc.log_self += ent;
            pc.pairs++;
            if (!zero) {
                pc.log_uniform_sum += logsum / dim;
                pc.full_support++;
            }
        }
        pc.linear /= double(bulks.size());
        pc.log_self /= double(bulks.size());
    });

    IdealXebValues out;
    out.n = n;
    out.m = m;
    out.K_mc = K_mc;
    out.seed = seed;
    std::vector<double> lin(K_mc);
    std::vector<double> self(K_mc);
    std::vector<double> uniform;
    for (size_t i = 0; i < K_mc; i++) {
        lin[i] = per[i].linear;
        self[i] = per[i].log_self;
        out.logical_pairs += per[i].pairs;
        out.zero_support_logical += per[i].pairs - per[i].full_support;
        if (per[i].full_support == per[i].pairs) {
            uniform.push_back(per[i].log_uniform_sum / double(per[i].pairs));
        } else {
            out.zero_support_physical++;
        }
    }
    auto est = [&](const std::vector<double> &v, const std::string &method, double offset) {
        Estimate e;
        e.method = method;
        e.K = v.size();
        e.M = 1;
        if (v.empty()) {
            e.value = std::numeric_limits<double>::infinity();
            return e;
        }
        MeanVar mv = mean_var(v.data(), v.size());
        e.value = mv.mean + offset;
        e.std_error = std::sqrt(mv.var / double(v.size()));
        return e;
    };
    out.linear_self = est(lin, "ideal-linear-self", 0);
    out.log_self_logical = est(self, "ideal-log-self-logical", 0);
    out.log_self_physical = est(self, "ideal-log-self-physical", shift);
    out.log_uniform_logical = est(uniform, "ideal-log-uniform-logical", 0);
    out.log_uniform_physical = est(uniform, "ideal-log-uniform-physical", shift);
    return out;
}

IdealXebValues cached_ideal_xeb_values(
    const std::string &cache_dir, size_t n, size_t m, uint64_t K_mc, uint64_t seed, size_t threads) {
    namespace fs = std::filesystem;
    fs::path path = fs::path(cache_dir) / ("ideal_xeb_n" + std::to_string(n) + "_m" + std::to_string(m) + "_K" +
                                           std::to_string(K_mc) + "_s" + std::to_string(seed) + ".json");
    if (fs::exists(path)) {
        std::ifstream in(path);
        auto j = nlohmann::json::parse(in);
        return j.get<IdealXebValues>();
    }
    auto v = ideal_xeb_values(n, m, K_mc, seed, threads);
    fs::create_directories(cache_dir);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << nlohmann::json(v).dump(2) << '\n';
    }
    fs::rename(tmp, path);
    return v;
}

XebFidelity fidelity_from_xeb(
    const Estimate &measured, const IdealXebValues &ideal, XebVariant variant, XebScope scope, const LatticeSpec &lattice) {
    Estimate self = ideal.self(variant, scope);
    Estimate uni = ideal.uniform(variant, scope);
    if (!std::isfinite(self.value) || !std::isfinite(uni.value)) {
        throw std::domain_error("ideal XEB reference values are not finite");
    }
    double den = self.value - uni.value;
    if (variant == XebVariant::Linear ? !(den > 0) : !(std::abs(den) > 1e-12)) {
        throw std::domain_error("degenerate XEB normalization: ideal self value does not separate from uniform");
    }
    double num = measured.value - uni.value;
    double eps = num / den;
    // Propagate measured, self and uniform errors (independent Monte Carlo runs).
    double d_meas = measured.std_error / den;
    double d_self = num * self.std_error / (den * den);
    double d_uni = uni.std_error * (self.value - measured.value) / (den * den);
    double eps_se = std::sqrt(d_meas * d_meas + d_self * d_self + d_uni * d_uni);
    double dim = std::ldexp(1.0, static_cast<int>(scope == XebScope::Physical ? lattice.num_sites() : lattice.n));

    XebFidelity out;
    out.epsilon.method = "xeb-epsilon-" + xeb_variant_name(variant) + "-" + xeb_scope_name(scope);
    out.epsilon.value = eps;
    out.epsilon.std_error = eps_se;
    out.epsilon.K = measured.K;
    out.epsilon.M = measured.M;
    out.fidelity = out.epsilon;
    out.fidelity.method = "xeb-fidelity-" + xeb_variant_name(variant) + "-" + xeb_scope_name(scope);
    out.fidelity.value = eps + (1 - eps) / dim;
    out.fidelity.std_error = eps_se * (1 - 1 / dim);
    return out;
}

}  // namespace mbqc

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

#include "mbqc/orchestrator.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "mbqc/density_matrix.h"
#include "mbqc/native_compiler.h"
#include "mbqc/parallel.h"
#include "mbqc/sample_io.h"
#include "mbqc/state_vector.h"
#include "mbqc/verification.h"
#include "mbqc/xeb.h"

namespace mbqc {

namespace {

using nlohmann::json;

bool is_compiled(const std::string &prep) {
    return prep.starts_with("compiled-");
}

json config_echo(const RunConfig &cfg) {
    json j = cfg;
    // Output locations and the thread count do not affect results.
    j.erase("threads");
    j.erase("out");
    j.erase("csv");
    return j;
}

json optional_json(const std::optional<double> &v) {
    return v ? json(*v) : json(nullptr);
}

/// Mean exact fidelity over `count` random circuits, or the beta-independent exact value.
std::optional<Estimate> average_oracle(
    const LatticeSpec &lattice, const NoiseSpec &noise, const std::string &prep, uint64_t count, uint64_t seed,
    size_t threads) {
    if (noise.is_none()) {
        return Estimate{"oracle", 1, 0, 1, 0};
    }
    if (!is_compiled(prep) && noise.is_pauli() && lattice.num_sites() <= kMaxDenseQubits) {
        return Estimate{"oracle", frame_mask_distribution(lattice, noise)[0], 0, 1, 0};
    }
    if (lattice.num_sites() > kMaxDensityQubits) {
        return std::nullopt;
    }
    std::vector<double> f(count);
    parallel_for(count, threads, [&](size_t i) {
        Rng rng = make_rng(seed, "oracle", i);
        f[i] = *oracle_fidelity(lattice, AngleGrid::random(lattice.num_sites(), rng), noise, prep);
    });
    auto mv = mean_var(f.data(), f.size());
    return Estimate{"oracle", mv.mean, std::sqrt(mv.var / double(count)), count, 0};
}

IdealXebValues ideal_values(const RunConfig &cfg, const LatticeSpec &lattice) {
    if (cfg.cache_dir.empty()) {
        return ideal_xeb_values(lattice.n, lattice.m, cfg.K_mc, cfg.seed, cfg.threads);
    }
    return cached_ideal_xeb_values(cfg.cache_dir, lattice.n, lattice.m, cfg.K_mc, cfg.seed, cfg.threads);
}

/// XEB estimates and derived fidelities for every variant and scope.
json xeb_report(const std::vector<XebRecord> &records, const IdealXebValues &ideal, const LatticeSpec &lattice) {
    json out = json::object();
    for (auto variant : {XebVariant::Linear, XebVariant::Log}) {
        for (auto scope : {XebScope::Physical, XebScope::Logical}) {
            std::string key = xeb_variant_name(variant) + "_" + xeb_scope_name(scope);
            try {
                Estimate f = average_xeb(records, lattice, variant, scope);
                auto fid = fidelity_from_xeb(f, ideal, variant, scope, lattice);
                out[key] = {{"xeb", f}, {"epsilon", fid.epsilon}, {"fidelity", fid.fidelity}};
            } catch (const std::domain_error &e) {
                out[key] = {{"error", e.what()}};
            }
        }
    }
    return out;
}

std::vector<double> ideal_distribution(const LatticeSpec &lattice, const AngleGrid &beta) {
    return hadamard_basis_distribution(cluster_state(lattice, beta));
}

std::vector<uint64_t> draw_samples(const RunConfig &cfg, const AngleGrid &beta) {
    auto prep = make_factory(cfg.lattice, cfg.noise, cfg.prep)(beta);
    return sample_preparation(*prep, cfg.shots, cfg.seed, cfg.threads, shot_block_size(cfg.noise));
}

void store_samples(const std::string &path, const SampleBatch &batch) {
    if (path.ends_with(".bin")) {
        std::string tmp = path + ".tmp";
        save_batch(tmp, batch);
        std::filesystem::rename(tmp, path);
    } else {
        write_samples_resumable(path, batch);
    }
}

json run_sample(const RunConfig &cfg, CsvTable &csv) {
    AngleGrid beta = cfg.resolved_beta();
    SampleBatch batch{cfg.lattice, beta, cfg.noise, cfg.seed, 0, draw_samples(cfg, beta)};
    json r = {{"beta", beta}, {"shots", batch.shots()}};
    std::map<std::string, uint64_t> counts;
    for (size_t i = 0; i < batch.shots(); i++) {
        counts[batch.outcome_string(i)]++;
    }
    csv.columns = {"outcome", "count"};
    for (const auto &[x, c] : counts) {
        csv.add({x, c});
    }
    if (cfg.samples.empty()) {
        r["counts"] = counts;
    } else {
        store_samples(cfg.samples, batch);
        r["samples"] = cfg.samples;
    }
    return r;
}

json run_sample_recycled(const RunConfig &cfg, CsvTable &csv) {
    AngleGrid beta = cfg.resolved_beta();
    size_t R = cfg.resolved_register_size();
    RecyclingStats stats;
    SampleBatch batch = sample_recycled(cfg.lattice, beta, R, cfg.shots, cfg.noise, cfg.seed, {cfg.threads}, &stats);
    json r = {
        {"beta", beta},
        {"shots", batch.shots()},
        {"register_size", R},
        {"peak_live_qubits", stats.peak_live_qubits},
        {"qubit_reuses", stats.qubit_reuses},
        {"slot_of_site", stats.slot_of_site}};
    if (cfg.noise.is_none() && cfg.lattice.num_sites() <= 12) {
        Rng rng = make_rng(cfg.seed, "bootstrap", 0);
        r["tvd_to_exact"] = empirical_tvd(batch, exact_streaming_distribution(cfg.lattice, beta, R), cfg.bootstrap, rng);
    }
    csv.columns = {"site", "slot"};
    for (size_t s = 0; s < stats.slot_of_site.size(); s++) {
        csv.add({s, stats.slot_of_site[s]});
    }
    if (!cfg.samples.empty()) {
        store_samples(cfg.samples, batch);
        r["samples"] = cfg.samples;
    }
    return r;
}

json run_dfe(const RunConfig &cfg) {
    AngleGrid beta = cfg.resolved_beta();
    auto prep = make_factory(cfg.lattice, cfg.noise, cfg.prep)(beta);
    Estimate f = dfe_single(*prep, cfg.lattice, beta, cfg.K, cfg.M, cfg.seed, cfg.threads);
    json r = {{"beta", beta}, {"fidelity", f}, {"oracle_fidelity", optional_json(oracle_fidelity(cfg.lattice, beta, cfg.noise, cfg.prep))}};
    if (cfg.e1 > 0) {
        auto b = measurement_error_bounds(f.value, MeasurementErrorModel(cfg.e1, cfg.lattice.num_sites()));
        r["measurement_error"] = {
            {"e1", cfg.e1},
            {"e_M", b.e_m},
            {"lower", b.lower},
            {"upper", b.upper},
            {"benign_corrected", optional_json(b.benign_corrected)}};
    }
    return r;
}

json run_dfe_avg(const RunConfig &cfg) {
    auto factory = make_factory(cfg.lattice, cfg.noise, cfg.prep);
    Estimate f = dfe_average(factory, cfg.lattice, cfg.K, cfg.M, cfg.seed, cfg.threads);
    auto oracle = average_oracle(cfg.lattice, cfg.noise, cfg.prep, std::min<uint64_t>(cfg.K, 100), cfg.seed, cfg.threads);
    return {
        {"fidelity", f},
        {"oracle_fidelity", oracle ? json(*oracle) : json(nullptr)},
        {"white_noise_prediction", dalzell_prediction(cfg.lattice, noise_eta(cfg.noise))}};
}

json run_witness(const RunConfig &cfg) {
    AngleGrid beta = cfg.resolved_beta();
    auto prep = make_factory(cfg.lattice, cfg.noise, cfg.prep)(beta);
    Estimate w = witness(*prep, cfg.lattice, beta, cfg.M, cfg.seed);
    auto oracle = oracle_fidelity(cfg.lattice, beta, cfg.noise, cfg.prep);
    json r = {
        {"beta", beta},
        {"witness", w},
        {"oracle_fidelity", optional_json(oracle)},
        {"tvd_bound_from_witness", w.value <= 1 ? json(std::sqrt(std::max(0.0, 1 - w.value))) : json(nullptr)}};
    return r;
}

json run_tvd(const RunConfig &cfg) {
    AngleGrid beta = cfg.resolved_beta();
    SampleBatch batch{cfg.lattice, beta, cfg.noise, cfg.seed, 0, draw_samples(cfg, beta)};
    auto ideal = ideal_distribution(cfg.lattice, beta);
    Rng rng = make_rng(cfg.seed, "bootstrap", 0);
    json r = {{"beta", beta}, {"tvd", empirical_tvd(batch, ideal, cfg.bootstrap, rng)}};
    if (auto noisy = oracle_distribution(cfg.lattice, beta, cfg.noise, cfg.prep)) {
        r["exact_tvd"] = total_variation(*noisy, ideal);
    }
    auto f = oracle_fidelity(cfg.lattice, beta, cfg.noise, cfg.prep);
    r["oracle_fidelity"] = optional_json(f);
    r["root_infidelity"] = f ? json(std::sqrt(std::max(0.0, 1 - *f))) : json(nullptr);
    return r;
}

json run_xeb(const RunConfig &cfg) {
    auto factory = make_factory(cfg.lattice, cfg.noise, cfg.prep);
    auto records = collect_xeb_records(factory, cfg.lattice, cfg.K, cfg.M, cfg.seed, cfg.threads);
    auto ideal = ideal_values(cfg, cfg.lattice);
    return {{"ideal", ideal}, {"estimates", xeb_report(records, ideal, cfg.lattice)}};
}

json run_ideal_xeb(const RunConfig &cfg, CsvTable &csv) {
    auto v = ideal_values(cfg, cfg.lattice);
    csv.columns = {"n", "m", "K_mc", "quantity", "value", "std_error"};
    auto row = [&](const std::string &name, const Estimate &e) {
        csv.add({v.n, v.m, v.K_mc, name, e.value, e.std_error});
    };
    row("linear_self", v.linear_self);
    row("log_self_physical", v.log_self_physical);
    row("log_self_logical", v.log_self_logical);
    row("log_uniform_physical", v.log_uniform_physical);
    row("log_uniform_logical", v.log_uniform_logical);
    return {{"ideal", v}};
}

json run_noise_sweep(const RunConfig &cfg, CsvTable &csv) {
    const LatticeSpec &L = cfg.lattice;
    size_t N = L.num_sites();
    auto sigmas = cfg.resolved_sigmas();
    std::vector<AngleGrid> betas;
    for (uint64_t i = 0; i < cfg.K; i++) {
        Rng rng = make_rng(cfg.seed, "sweep-beta", i);
        betas.push_back(AngleGrid::random(N, rng));
    }
    std::vector<std::vector<double>> ideal(betas.size());
    std::vector<StateVector> ideal_states;
    for (const auto &b : betas) {
        ideal_states.push_back(cluster_state(L, b));
    }
    for (size_t i = 0; i < betas.size(); i++) {
        ideal[i] = hadamard_basis_distribution(ideal_states[i]);
    }
    bool compiled = is_compiled(cfg.prep);
    csv.columns = {"noise", "sigma", "fidelity", "fidelity_se", "root_infidelity", "tvd", "tvd_se", "gap",
                   "tvd_sampled", "tvd_sampled_se"};
    json points = json::array();
    for (bool correlated : {false, true}) {
        for (size_t si = 0; si < sigmas.size(); si++) {
            double sigma = sigmas[si];
            NoiseSpec noise = NoiseSpec::gaussian_z(sigma, correlated, cfg.noise.resample_every);
            std::vector<double> fid(betas.size()), root(betas.size()), tvd(betas.size());
            parallel_for(betas.size(), cfg.threads, [&](size_t i) {
                Circuit c = compiled ? compile(L, betas[i]).state_circuit() : cluster_circuit(L, betas[i], true);
                DensityMatrix rho = simulate_density(c, noise);
                fid[i] = std::clamp(rho.fidelity(ideal_states[i]), 0.0, 1.0);
                root[i] = std::sqrt(1 - fid[i]);
                tvd[i] = total_variation(rho.hadamard_basis_distribution(), ideal[i]);
            });
            auto f = mean_var(fid.data(), fid.size());
            auto rt = mean_var(root.data(), root.size());
            auto t = mean_var(tvd.data(), tvd.size());
            double K = double(betas.size());

            // Finite-shot TVD of the first circuit, the quantity an experiment would report.
            Circuit c0 = compiled ? compile(L, betas[0]).state_circuit() : cluster_circuit(L, betas[0], true);
            TrajectoryPreparation prep(c0, noise);
            uint64_t stream = derive_seed(cfg.seed, correlated ? "sweep-global" : "sweep-local", si);
            SampleBatch batch{L, betas[0], noise, stream, 0, sample_preparation(prep, cfg.shots, stream, cfg.threads, shot_block_size(noise))};
            Rng rng = make_rng(stream, "bootstrap", 0);
            Estimate sampled = empirical_tvd(batch, ideal[0], cfg.bootstrap, rng);

            std::string label = correlated ? "global" : "local";
            json p = {
                {"noise", label},
                {"sigma", sigma},
                {"fidelity", Estimate{"exact", f.mean, std::sqrt(f.var / K), betas.size(), 0}},
                {"root_infidelity", Estimate{"exact", rt.mean, std::sqrt(rt.var / K), betas.size(), 0}},
                {"tvd", Estimate{"exact", t.mean, std::sqrt(t.var / K), betas.size(), 0}},
                {"tvd_sampled", sampled}};
            points.push_back(p);
            csv.add({label, sigma, f.mean, std::sqrt(f.var / K), rt.mean, t.mean, std::sqrt(t.var / K), rt.mean - t.mean,
                     sampled.value, sampled.std_error});
        }
    }
    return {{"circuit", compiled ? "compiled" : "cz"}, {"circuits", betas.size()}, {"points", points}};
}

json run_dalzell(const RunConfig &cfg, CsvTable &csv) {
    json rows = json::array();
    csv.columns = {"n", "m", "edges", "eta", "prediction", "dfe", "dfe_se", "oracle", "xeb_linear_fidelity",
                   "xeb_linear_fidelity_se", "xeb_log_fidelity", "xeb_log_fidelity_se"};
    double eta = noise_eta(cfg.noise);
    for (size_t m : cfg.resolved_m_values()) {
        LatticeSpec L(cfg.lattice.n, m);
        uint64_t seed = derive_seed(cfg.seed, "dalzell", m);
        auto factory = make_factory(L, cfg.noise, cfg.prep);
        Estimate dfe = dfe_average(factory, L, cfg.K, cfg.M, seed, cfg.threads);
        auto records = collect_xeb_records(factory, L, cfg.K, cfg.M, seed, cfg.threads);
        RunConfig sub = cfg;
        sub.lattice = L;
        auto ideal = ideal_values(sub, L);
        json xeb = xeb_report(records, ideal, L);
        auto oracle = average_oracle(L, cfg.noise, cfg.prep, std::min<uint64_t>(cfg.K, 100), seed, cfg.threads);
        double pred = dalzell_prediction(L, eta);
        rows.push_back({
            {"n", L.n},
            {"m", m},
            {"edges", L.num_edges()},
            {"prediction", pred},
            {"dfe", dfe},
            {"oracle_fidelity", oracle ? json(*oracle) : json(nullptr)},
            {"xeb", xeb}});
        auto pick = [&](const char *key, const char *field) -> json {
            const auto &x = xeb.at(key);
            return x.contains("fidelity") ? x.at("fidelity").at(field) : json(nullptr);
        };
        csv.add({L.n, m, L.num_edges(), eta, pred, dfe.value, dfe.std_error, oracle ? json(oracle->value) : json(nullptr),
                 pick("linear_physical", "value"), pick("linear_physical", "std_error"), pick("log_physical", "value"),
                 pick("log_physical", "std_error")});
    }
    return {{"eta", eta}, {"rows", rows}};
}

json run_threshold(const RunConfig &cfg) {
    auto t = stockmeyer_threshold(cfg.nu, cfg.gamma_ac, cfg.rel_err);
    return {{"tvd_threshold", t.tvd_threshold}, {"infidelity_threshold", t.infidelity_threshold}};
}

json run_compile(const RunConfig &cfg) {
    AngleGrid beta = cfg.resolved_beta();
    CompiledProgram p = compile(cfg.lattice, beta);
    auto rep = verify_equivalence(p, cfg.lattice, beta);
    auto ids = native_identity_residuals();
    return {
        {"beta", beta},
        {"program", compiled_to_json(p)},
        {"ms_count", p.circuit.count(GateKind::MS)},
        {"rxy_count", p.circuit.count(GateKind::RXY)},
        {"equivalence",
         {{"passed", rep.passed},
          {"state_deviation", rep.state_deviation},
          {"distribution_deviation", rep.distribution_deviation},
          {"recovered_phase", {rep.recovered_phase.real(), rep.recovered_phase.imag()}},
          {"message", rep.message}}},
        {"identities",
         {{"cz_from_ms", ids.cz_from_ms},
          {"z_from_xy", ids.z_from_xy},
          {"phase_shift_pi", ids.phase_shift_pi},
          {"hadamard_from_xy", ids.hadamard_from_xy},
          {"ms_commute", ids.ms_commute}}}};
}

json run_oracle_check(const RunConfig &cfg) {
    const LatticeSpec &L = cfg.lattice;
    auto factory = make_factory(L, cfg.noise, cfg.prep);
    Estimate dfe = dfe_average(factory, L, cfg.K, cfg.M, cfg.seed, cfg.threads);
    auto records = collect_xeb_records(factory, L, cfg.K, cfg.M, cfg.seed, cfg.threads);
    auto ideal = ideal_values(cfg, L);
    json xeb = xeb_report(records, ideal, L);
    auto oracle = average_oracle(L, cfg.noise, cfg.prep, std::min<uint64_t>(cfg.K, 100), cfg.seed, cfg.threads);
    json r = {{"dfe", dfe}, {"xeb", xeb}, {"oracle_fidelity", oracle ? json(*oracle) : json(nullptr)}};
    if (oracle) {
        auto within = [&](double value, double se) {
            return std::abs(value - oracle->value) <= 3 * std::hypot(se, oracle->std_error);
        };
        json agree = {{"dfe", within(dfe.value, dfe.std_error)}};
        for (auto &[key, v] : xeb.items()) {
            if (v.contains("fidelity")) {
                agree["xeb_" + key] = within(v["fidelity"]["value"].get<double>(), v["fidelity"]["std_error"].get<double>());
            }
        }
        r["agrees_with_oracle_3sigma"] = agree;
    }
    return r;
}

}  // namespace

PreparationFactory make_factory(const LatticeSpec &lattice, const NoiseSpec &noise, const std::string &prep) {
    if (prep == "frame") {
        return cluster_preparation_factory(lattice, noise, PrepMode::Frame);
    }
    if (prep == "trajectory") {
        return cluster_preparation_factory(lattice, noise, PrepMode::Trajectory);
    }
    if (prep == "density") {
        return cluster_preparation_factory(lattice, noise, PrepMode::Density);
    }
    if (prep == "compiled-trajectory") {
        return compiled_preparation_factory(lattice, noise, CompiledMode::Trajectory);
    }
    if (prep == "compiled-density") {
        return compiled_preparation_factory(lattice, noise, CompiledMode::Density);
    }
    throw std::invalid_argument("unknown preparation mode: " + prep);
}

std::optional<double> oracle_fidelity(
    const LatticeSpec &lattice, const AngleGrid &beta, const NoiseSpec &noise, const std::string &prep) {
    size_t N = lattice.num_sites();
    if (noise.is_none()) {
        return 1.0;
    }
    if (!is_compiled(prep) && noise.is_pauli() && N <= kMaxDenseQubits) {
        return frame_mask_distribution(lattice, noise)[0];
    }
    if (N > kMaxDensityQubits) {
        return std::nullopt;
    }
    DensityMatrix rho = is_compiled(prep) ? simulate_density(compile(lattice, beta).state_circuit(), noise)
                                          : cluster_density(lattice, beta, noise);
    return rho.fidelity(cluster_state(lattice, beta));
}

std::optional<std::vector<double>> oracle_distribution(
    const LatticeSpec &lattice, const AngleGrid &beta, const NoiseSpec &noise, const std::string &prep) {
    size_t N = lattice.num_sites();
    if (N > kMaxDenseQubits) {
        return std::nullopt;
    }
    auto ideal = ideal_distribution(lattice, beta);
    if (noise.is_none()) {
        return ideal;
    }
    if (!is_compiled(prep) && noise.is_pauli()) {
        return xor_convolve(ideal, frame_mask_distribution(lattice, noise));
    }
    if (N > kMaxDensityQubits) {
        return std::nullopt;
    }
    DensityMatrix rho = is_compiled(prep) ? simulate_density(compile(lattice, beta).state_circuit(), noise)
                                          : cluster_density(lattice, beta, noise);
    return rho.hadamard_basis_distribution();
}

void CsvTable::add(std::vector<json> values) {
    std::vector<std::string> row;
    for (const auto &v : values) {
        if (v.is_string()) {
            std::string s = v.get<std::string>();
            if (s.find_first_of(",\"\n") != std::string::npos) {
                std::string q = "\"";
                for (char c : s) {
                    q += c == '"' ? std::string("\"\"") : std::string(1, c);
                }
                s = q + "\"";
            }
            row.push_back(s);
        } else if (v.is_null()) {
            row.emplace_back();
        } else {
            row.push_back(v.dump());
        }
    }
    rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream &out) const {
    out << "schema_version";
    for (const auto &c : columns) {
        out << ',' << c;
    }
    out << '\n';
    for (const auto &row : rows) {
        out << kCsvSchemaVersion;
        for (const auto &v : row) {
            out << ',' << v;
        }
        out << '\n';
    }
}

uint64_t write_samples_resumable(const std::string &path, const SampleBatch &batch) {
    size_t N = batch.lattice.num_sites();
    auto record = [&](uint64_t x) {
        std::ostringstream s;
        write_jsonl_record(s, x, N);
        return s.str();
    };
    std::string header = batch.header_json().dump() + "\n";
    uint64_t present = 0;
    bool keep = false;
    size_t prefix = jsonl_complete_prefix(path);
    if (prefix > 0) {
        std::ifstream in(path, std::ios::binary);
        std::string content(prefix, '\0');
        in.read(content.data(), static_cast<std::streamsize>(prefix));
        keep = content.compare(0, header.size(), header) == 0;
        size_t pos = keep ? header.size() : prefix;
        while (keep && pos < prefix) {
            if (present >= batch.shots()) {
                keep = false;
                break;
            }
            std::string want = record(batch.outcomes[present]);
            if (content.compare(pos, want.size(), want) != 0) {
                keep = false;
                break;
            }
            pos += want.size();
            present++;
        }
    }
    std::ofstream out;
    if (keep) {
        std::filesystem::resize_file(path, prefix);
        out.open(path, std::ios::binary | std::ios::app);
    } else {
        present = 0;
        out.open(path, std::ios::binary | std::ios::trunc);
        out << header;
    }
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    for (uint64_t i = present; i < batch.shots(); i++) {
        out << record(batch.outcomes[i]);
    }
    out.flush();
    if (!out) {
        throw std::runtime_error("write to " + path + " failed");
    }
    return present;
}

json error_json(const std::exception &e) {
    json err = {{"message", e.what()}};
    if (auto *c = dynamic_cast<const ConfigError *>(&e)) {
        err["type"] = "config";
        err["violations"] = c->violations();
    } else if (dynamic_cast<const std::invalid_argument *>(&e) || dynamic_cast<const std::domain_error *>(&e)) {
        err["type"] = "invalid_argument";
    } else {
        err["type"] = "runtime";
    }
    return {{"error", err}};
}

json run(const RunConfig &cfg) {
    cfg.validate();
    CsvTable csv;
    json body;
    const std::string &c = cfg.command;
    if (c == "sample") {
        body = run_sample(cfg, csv);
    } else if (c == "sample-recycled") {
        body = run_sample_recycled(cfg, csv);
    } else if (c == "dfe") {
        body = run_dfe(cfg);
    } else if (c == "dfe-avg") {
        body = run_dfe_avg(cfg);
    } else if (c == "witness") {
        body = run_witness(cfg);
    } else if (c == "tvd") {
        body = run_tvd(cfg);
    } else if (c == "xeb") {
        body = run_xeb(cfg);
    } else if (c == "ideal-xeb") {
        body = run_ideal_xeb(cfg, csv);
    } else if (c == "noise-sweep") {
        body = run_noise_sweep(cfg, csv);
    } else if (c == "dalzell") {
        body = run_dalzell(cfg, csv);
    } else if (c == "threshold") {
        body = run_threshold(cfg);
    } else if (c == "compile") {
        body = run_compile(cfg);
    } else if (c == "oracle-check") {
        body = run_oracle_check(cfg);
    }
    json result = {{"schema_version", kResultSchemaVersion}, {"command", c}, {"config", config_echo(cfg)}, {"result", body}};
    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + cfg.out + " for writing");
        }
        out << result.dump(2) << '\n';
    }
    if (!cfg.csv.empty()) {
        std::ofstream out(cfg.csv, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + cfg.csv + " for writing");
        }
        csv.write(out);
    }
    return result;
}

}  // namespace mbqc

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

#include "mbqc/sample_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace mbqc {

namespace {

constexpr char kMagic[8] = {'M', 'B', 'Q', 'C', 'S', 'B', '0', '1'};

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

SampleBatch batch_from_header(const nlohmann::json &h) {
    if (h.value("type", std::string()) != "header" || h.value("format", std::string()) != "mbqc-samples") {
        throw std::invalid_argument("missing sample batch header record");
    }
    if (h.value("version", 0) != 1) {
        throw std::invalid_argument("unsupported sample batch version");
    }
    SampleBatch b;
    b.lattice = h.at("lattice").get<LatticeSpec>();
    b.beta = h.at("beta").get<AngleGrid>();
    b.noise = h.at("noise").get<NoiseSpec>();
    b.seed = h.at("seed").get<uint64_t>();
    b.register_size = h.value("register_size", size_t{0});
    if (b.beta.size() != b.lattice.num_sites()) {
        throw std::invalid_argument("header angle grid does not match its lattice");
    }
    return b;
}

void write_jsonl_header(std::ostream &out, const SampleBatch &batch) {
    out << batch.header_json().dump() << '\n';
}

void write_jsonl_record(std::ostream &out, uint64_t outcome, size_t num_sites) {
    out << "{\"x\":\"" << outcome_to_string(outcome, num_sites) << "\"}\n";
}

void write_jsonl(std::ostream &out, const SampleBatch &batch) {
    write_jsonl_header(out, batch);
    for (auto x : batch.outcomes) {
        write_jsonl_record(out, x, batch.lattice.num_sites());
    }
    out.flush();
}

SampleBatch read_jsonl(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || in.eof()) {
        throw std::invalid_argument("sample file has no complete header record");
    }
    SampleBatch b = batch_from_header(nlohmann::json::parse(line));
    size_t n = b.lattice.num_sites();
    while (std::getline(in, line)) {
        if (in.eof()) {
            break;  // unterminated final line: an interrupted write
        }
        if (line.empty()) {
            continue;
        }
        auto rec = nlohmann::json::parse(line);
        b.outcomes.push_back(outcome_from_string(rec.at("x").get<std::string>(), n));
    }
    return b;
}

size_t jsonl_complete_prefix(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return 0;
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto pos = content.rfind('\n');
    return pos == std::string::npos ? 0 : pos + 1;
}

void write_binary(std::ostream &out, const SampleBatch &batch) {
    std::string header = batch.header_json().dump();
    out.write(kMagic, 8);
    uint64_t len = header.size();
    for (int i = 0; i < 8; i++) {
        out.put(static_cast<char>((len >> (8 * i)) & 0xFF));
    }
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    size_t row = (batch.lattice.num_sites() + 7) / 8;
    for (auto x : batch.outcomes) {
        for (size_t i = 0; i < row; i++) {
            out.put(static_cast<char>((x >> (8 * i)) & 0xFF));
        }
    }
    out.flush();
}

SampleBatch read_binary(std::istream &in) {
    char magic[8];
    if (!in.read(magic, 8) || !std::equal(magic, magic + 8, kMagic)) {
        throw std::invalid_argument("not a packed sample batch");
    }
    uint64_t len = 0;
    for (int i = 0; i < 8; i++) {
        int c = in.get();
        if (c == EOF) {
            throw std::invalid_argument("truncated packed sample header");
        }
        len |= uint64_t(static_cast<unsigned char>(c)) << (8 * i);
    }
    std::string header(len, '\0');
    if (!in.read(header.data(), static_cast<std::streamsize>(len))) {
        throw std::invalid_argument("truncated packed sample header");
    }
    SampleBatch b = batch_from_header(nlohmann::json::parse(header));
    size_t row = (b.lattice.num_sites() + 7) / 8;
    std::vector<unsigned char> buf(row);
    while (in.read(reinterpret_cast<char *>(buf.data()), static_cast<std::streamsize>(row))) {
        uint64_t x = 0;
        for (size_t i = 0; i < row; i++) {
            x |= uint64_t(buf[i]) << (8 * i);
        }
        b.outcomes.push_back(x);
    }
    return b;
}

void save_batch(const std::string &path, const SampleBatch &batch) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    if (ends_with(path, ".bin")) {
        write_binary(out, batch);
    } else {
        write_jsonl(out, batch);
    }
}

SampleBatch load_batch(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return ends_with(path, ".bin") ? read_binary(in) : read_jsonl(in);
}

}  // namespace mbqc

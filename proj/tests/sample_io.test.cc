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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mbqc/sample_io.h"
#include "mbqc/sampling.h"

using namespace mbqc;

namespace {

SampleBatch make_batch(size_t n, size_t m, uint64_t shots) {
    LatticeSpec L(n, m);
    Rng rng = make_rng(1, "t", n * 100 + m);
    return sample_full(L, AngleGrid::random(L.num_sites(), rng), shots, NoiseSpec::depolarizing(0.05), 5);
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / ("mbqc_test_" + name)).string();
}

}  // namespace

TEST(SampleIo, JsonLinesRoundTrip) {
    auto batch = make_batch(2, 3, 300);
    std::stringstream s;
    write_jsonl(s, batch);
    std::string first;
    std::getline(s, first);
    auto header = nlohmann::json::parse(first);
    EXPECT_EQ(header["type"], "header");
    EXPECT_EQ(header["format"], "mbqc-samples");
    EXPECT_EQ(header["shots"], 300);
    s.seekg(0);
    EXPECT_EQ(read_jsonl(s), batch);
}

TEST(SampleIo, RecordsUseOutcomeStrings) {
    auto batch = make_batch(2, 2, 3);
    std::stringstream s;
    write_jsonl(s, batch);
    std::string line;
    std::getline(s, line);
    std::getline(s, line);
    EXPECT_EQ(line, "{\"x\":\"" + batch.outcome_string(0) + "\"}");
}

TEST(SampleIo, UnterminatedFinalLineIsIgnored) {
    auto batch = make_batch(2, 2, 50);
    std::stringstream s;
    write_jsonl(s, batch);
    std::string text = s.str();
    std::stringstream cut(text.substr(0, text.size() - 4));
    auto back = read_jsonl(cut);
    EXPECT_EQ(back.shots(), 49u);
    EXPECT_TRUE(std::equal(back.outcomes.begin(), back.outcomes.end(), batch.outcomes.begin()));
}

TEST(SampleIo, MalformedRecordsAndHeadersAreErrors) {
    auto batch = make_batch(2, 2, 5);
    std::stringstream s;
    write_jsonl(s, batch);
    std::string text = s.str();
    std::stringstream bad(text + "{\"x\":\"01\"}\n");
    EXPECT_ANY_THROW(read_jsonl(bad));
    std::stringstream no_header("{\"x\":\"0101\"}\n");
    EXPECT_ANY_THROW(read_jsonl(no_header));
    std::stringstream empty("");
    EXPECT_ANY_THROW(read_jsonl(empty));
}

TEST(SampleIo, BinaryRoundTripAcrossByteBoundaries) {
    for (auto [n, m] : std::vector<std::pair<size_t, size_t>>{{1, 1}, {2, 4}, {3, 3}, {4, 4}}) {
        auto batch = make_batch(n, m, 257);
        std::stringstream s;
        write_binary(s, batch);
        std::string bytes = s.str();
        EXPECT_EQ(bytes.substr(0, 8), "MBQCSB01");
        s.seekg(0);
        EXPECT_EQ(read_binary(s), batch);
    }
}

TEST(SampleIo, SaveAndLoadChooseFormatByExtension) {
    auto batch = make_batch(3, 3, 100);
    for (std::string ext : {".jsonl", ".bin"}) {
        std::string path = temp_path("roundtrip" + ext);
        save_batch(path, batch);
        EXPECT_EQ(load_batch(path), batch);
        std::filesystem::remove(path);
    }
}

TEST(SampleIo, CompletePrefixStopsAtLastNewline) {
    std::string path = temp_path("prefix.jsonl");
    {
        std::ofstream out(path, std::ios::binary);
        out << "abc\ndef\ngh";
    }
    EXPECT_EQ(jsonl_complete_prefix(path), 8u);
    std::filesystem::remove(path);
    EXPECT_EQ(jsonl_complete_prefix(path), 0u);
}

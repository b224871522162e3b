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

#ifndef MBQC_SAMPLE_IO_H
#define MBQC_SAMPLE_IO_H

#include <iosfwd>
#include <string>

#include "mbqc/sampling.h"

namespace mbqc {

/// JSON-lines: a header record with the batch metadata, then one {"x":"0110..."} record per shot.
void write_jsonl_header(std::ostream &out, const SampleBatch &batch);
void write_jsonl_record(std::ostream &out, uint64_t outcome, size_t num_sites);
void write_jsonl(std::ostream &out, const SampleBatch &batch);

/// Reads a JSON-lines batch. A final line without a terminating newline is treated as an
/// interrupted write and ignored; malformed complete lines are errors.
SampleBatch read_jsonl(std::istream &in);

/// Byte length of the complete-line prefix of a JSON-lines file (0 if it does not exist).
size_t jsonl_complete_prefix(const std::string &path);

/// Packed binary: "MBQCSB01", little-endian u64 header length, header JSON, then one
/// ceil(N/8)-byte little-endian row per shot.
void write_binary(std::ostream &out, const SampleBatch &batch);
SampleBatch read_binary(std::istream &in);

/// Chooses the format from the extension (".bin" is binary, anything else JSON-lines).
void save_batch(const std::string &path, const SampleBatch &batch);
SampleBatch load_batch(const std::string &path);

SampleBatch batch_from_header(const nlohmann::json &header);

}  // namespace mbqc

#endif

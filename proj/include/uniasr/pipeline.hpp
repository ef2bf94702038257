// include/uniasr/pipeline.hpp
//
// Copyright 2026 The uniasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNIASR_PIPELINE_HPP_
#define UNIASR_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uniasr/converter.hpp"
#include "uniasr/metrics.hpp"
#include "uniasr/prompts.hpp"
#include "uniasr/synth.hpp"

namespace uniasr {

enum class EmissionSource {
  // Read each record's emission_path as an LEM1 file.
  kFiles,
  // Synthesize emissions from each record's roman_ref.
  kSynth,
};

struct RunConfig {
  std::string manifest_path;
  std::string vocab_path;
  // Rule tables are read from <data_dir>/tables.
  std::string data_dir;
  PromptStrategy strategy = PromptStrategy::kZeroShot;
  int shots_n = 5;
  int beam_size = 100;
  // Run seed; every record derives its own streams from it, so worker
  // scheduling cannot change any sampled value.
  std::uint64_t seed = 0;
  ConverterConfig converter;
  EmissionSource emission_source = EmissionSource::kSynth;
  // Synth mode only. noise.seed is ignored: per-record seeds come from
  // the run seed and the record id.
  NoiseSpec noise;
  // Empty paths skip the corresponding file.
  std::string report_path;
  std::string report_format = "tsv";
  std::string audit_path;

  void validate() const;
};

// One manifest record's terminal state. status is one of ok,
// format_error, backend_error, filtered, error.
struct AuditEntry {
  std::string record_id;
  std::string lang;
  std::string status;
  // Filter reason or failure description; empty on ok.
  std::string detail;
  // Decoded Romanized text; empty when decoding was never reached.
  std::string roman;
  std::optional<std::string> hypothesis;
  std::optional<double> cer;
  std::optional<double> wer;
  std::vector<std::string> shot_ids;
  int turns_used = 0;
  int attempts = 0;
};

std::string serialize_audit_entry(const AuditEntry& entry);

struct RunResult {
  EvalReport report;
  // Manifest order, one entry per record.
  std::vector<AuditEntry> audit;
};

// Full two-phase run: emissions -> beam decode -> prompt -> convert ->
// score. Decoding runs data-parallel over records, conversion respects
// the converter's in-flight bound, aggregation is single-threaded.
// Per-record failures land in the audit log; only configuration and
// input-file problems throw. With a deterministic backend the result is
// byte-identical across runs, including the written report and audit
// files.
RunResult run_pipeline(const RunConfig& cfg);

// As above with injected backends, for hermetic tests.
RunResult run_pipeline(const RunConfig& cfg, const BackendFactory& factory);

// Renders the report in cfg.report_format ("tsv", "md" or "json").
std::string render_report(const EvalReport& report,
                          const std::string& format);

class Romanizer;

// Few-shot candidate pools keyed by language code. A record
// contributes when it passes the corpus filter and a Romanized form is
// available: its roman_ref, or else the romanized normalized reference.
// Records without either stay out silently.
std::map<std::string, std::vector<FewShotExample>> build_shot_pools(
    const std::vector<UtteranceRecord>& records, const Romanizer& romanizer);

}  // namespace uniasr

#endif  // UNIASR_PIPELINE_HPP_

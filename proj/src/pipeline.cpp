// src/pipeline.cpp
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

#include "uniasr/pipeline.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "uniasr/corpus.hpp"
#include "uniasr/ctc.hpp"
#include "uniasr/error.hpp"
#include "uniasr/roman_text.hpp"
#include "uniasr/romanizer.hpp"
#include "uniasr/unicode.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

namespace {

std::string format_audit_rate(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

struct RecordState {
  std::string normalized_ref;
  // Terminal early statuses; empty while the record is still in flight.
  std::string status;
  std::string detail;
  std::string roman;
  std::vector<std::string> shot_ids;
};

// Runs fn(i) for i in [0, n) on up to a hardware-sized worker pool.
// fn must confine itself to index i's data.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min(n, hw == 0 ? std::size_t{4} : hw);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (std::thread& worker : pool) worker.join();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void RunConfig::validate() const {
  if (manifest_path.empty()) throw ConfigError("manifest_path is required");
  if (vocab_path.empty()) throw ConfigError("vocab_path is required");
  if (data_dir.empty()) throw ConfigError("data_dir is required");
  if (shots_n < 1) throw ConfigError("shots_n must be at least 1");
  if (beam_size < 1) throw ConfigError("beam_size must be at least 1");
  if (report_format != "tsv" && report_format != "md" &&
      report_format != "json") {
    throw ConfigError("report_format must be tsv, md or json, got \"" +
                      report_format + "\"");
  }
  converter.validate();
  if (emission_source == EmissionSource::kSynth) {
    NoiseSpec derived = noise;
    derived.seed = 0;
    derived.validate();
  }
}

std::string serialize_audit_entry(const AuditEntry& entry) {
  nlohmann::ordered_json doc;
  doc["id"] = entry.record_id;
  doc["lang"] = entry.lang;
  doc["status"] = entry.status;
  doc["detail"] = entry.detail;
  doc["roman"] = entry.roman;
  if (entry.hypothesis) {
    doc["hypothesis"] = *entry.hypothesis;
  } else {
    doc["hypothesis"] = nullptr;
  }
  if (entry.cer) {
    doc["cer"] = format_audit_rate(*entry.cer);
  } else {
    doc["cer"] = nullptr;
  }
  if (entry.wer) {
    doc["wer"] = format_audit_rate(*entry.wer);
  } else {
    doc["wer"] = nullptr;
  }
  doc["shots"] = entry.shot_ids;
  doc["turns_used"] = entry.turns_used;
  doc["attempts"] = entry.attempts;
  return doc.dump();
}

std::string render_report(const EvalReport& report,
                          const std::string& format) {
  if (format == "tsv") return render_report_tsv(report);
  if (format == "md") return render_report_markdown(report);
  if (format == "json") return render_report_json(report);
  throw ConfigError("report_format must be tsv, md or json, got \"" +
                    format + "\"");
}

RunResult run_pipeline(const RunConfig& cfg, const BackendFactory& factory) {
  cfg.validate();
  const std::vector<UtteranceRecord> records = load_manifest(cfg.manifest_path);
  const Vocabulary vocab = Vocabulary::load(cfg.vocab_path);
  const Romanizer romanizer(cfg.data_dir);
  const bool shot_based = cfg.strategy == PromptStrategy::kFewShot ||
                          cfg.strategy == PromptStrategy::kFewShotCot;

  std::vector<RecordState> states(records.size());

  // Phase 1, data-parallel: normalize, filter, emissions, beam decode.
  parallel_for(records.size(), [&](std::size_t i) {
    const UtteranceRecord& record = records[i];
    RecordState& state = states[i];
    try {
      state.normalized_ref = normalize_text(record.ref_text);
      const FilterDecision decision = filter_sample(state.normalized_ref);
      if (!decision.accepted) {
        state.status = "filtered";
        state.detail = decision.reason;
        return;
      }
      EmissionMatrix em;
      if (cfg.emission_source == EmissionSource::kFiles) {
        if (!record.emission_path) {
          throw EmissionError("record has no emission_path");
        }
        em = read_emissions(*record.emission_path, vocab);
      } else {
        if (!record.roman_ref) {
          throw ConfigError("synth emissions need a roman_ref");
        }
        NoiseSpec spec = cfg.noise;
        spec.seed = derive_seed(cfg.seed, record.id + "/synth");
        em = synthesize_emissions(make_roman_text(*record.roman_ref), vocab,
                                  spec);
      }
      state.roman = beam_decode(em, vocab, cfg.beam_size).text.text;
    } catch (const std::exception& e) {
      state.status = "error";
      state.detail = e.what();
    }
  });

  std::map<std::string, std::vector<FewShotExample>> pools;
  if (shot_based) pools = build_shot_pools(records, romanizer);

  // Prompt rendering; failures here are per-record data problems.
  std::vector<ConversionRequest> requests;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!states[i].status.empty()) continue;
    const UtteranceRecord& record = records[i];
    RecordState& state = states[i];
    try {
      const LanguageInfo& info = lookup_language(record.lang);
      std::vector<FewShotExample> shots;
      if (shot_based) {
        shots = sample_shots(pools[record.lang],
                             static_cast<std::size_t>(cfg.shots_n),
                             derive_seed(cfg.seed, record.id + "/shots"),
                             record.id);
        for (const FewShotExample& shot : shots) {
          state.shot_ids.push_back(shot.source_id);
        }
      }
      requests.push_back(
          {record.id, render_prompt(cfg.strategy, info.name,
                                    make_roman_text(state.roman), shots)});
    } catch (const std::exception& e) {
      state.status = "error";
      state.detail = e.what();
      state.shot_ids.clear();
    }
  }

  const std::map<std::string, ConversionOutcome> outcomes =
      convert_batch(requests, cfg.converter, factory);

  // Scoring and audit assembly, manifest order throughout.
  RunResult result;
  std::vector<ScoredRecord> rows;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const UtteranceRecord& record = records[i];
    RecordState& state = states[i];
    AuditEntry entry;
    entry.record_id = record.id;
    entry.lang = record.lang;
    entry.roman = state.roman;
    entry.shot_ids = state.shot_ids;
    if (!state.status.empty()) {
      entry.status = state.status;
      entry.detail = state.detail;
      result.audit.push_back(std::move(entry));
      continue;
    }
    const ConversionOutcome& outcome = outcomes.at(record.id);
    entry.status = std::string(status_name(outcome.status));
    entry.turns_used = outcome.turns_used;
    entry.attempts = outcome.attempts;
    entry.hypothesis = outcome.extracted;
    if (outcome.status != ConversionStatus::kOk) entry.detail = outcome.raw_response;
    try {
      // Hypotheses get the same text normalization the references got
      // at ingest, so casing and compatibility forms do not count as
      // errors.
      UtteranceRecord normalized = record;
      normalized.ref_text = state.normalized_ref;
      ConversionOutcome scored_outcome = outcome;
      if (scored_outcome.extracted) {
        scored_outcome.extracted = normalize_text(*scored_outcome.extracted);
      }
      const ScoredRecord row = score_record(normalized, scored_outcome);
      entry.cer = row.cer;
      entry.wer = row.wer;
      rows.push_back(row);
    } catch (const std::exception& e) {
      entry.status = "error";
      entry.detail = e.what();
    }
    result.audit.push_back(std::move(entry));
  }

  if (!rows.empty()) {
    result.report = aggregate_report(rows);
  }

  if (!cfg.report_path.empty()) {
    write_text_file(cfg.report_path,
                    render_report(result.report, cfg.report_format));
  }
  if (!cfg.audit_path.empty()) {
    std::string lines;
    for (const AuditEntry& entry : result.audit) {
      lines += serialize_audit_entry(entry);
      lines += '\n';
    }
    write_text_file(cfg.audit_path, lines);
  }
  return result;
}

RunResult run_pipeline(const RunConfig& cfg) {
  return run_pipeline(cfg,
                      [&cfg] { return make_backend(cfg.converter); });
}

std::map<std::string, std::vector<FewShotExample>> build_shot_pools(
    const std::vector<UtteranceRecord>& records, const Romanizer& romanizer) {
  std::map<std::string, std::vector<FewShotExample>> pools;
  for (const UtteranceRecord& record : records) {
    const std::string normalized = normalize_text(record.ref_text);
    if (!filter_sample(normalized).accepted) continue;
    try {
      RomanText roman;
      if (record.roman_ref) {
        roman = make_roman_text(*record.roman_ref);
      } else {
        roman = romanizer.romanize(normalized, record.lang).text;
      }
      pools[record.lang].push_back({std::move(roman), normalized, record.id});
    } catch (const Error&) {
      // Records without a usable Romanized form stay out of the pool.
    }
  }
  return pools;
}

}  // namespace uniasr

// tools/uniasr_main.cpp
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

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "uniasr/converter.hpp"
#include "uniasr/corpus.hpp"
#include "uniasr/ctc.hpp"
#include "uniasr/error.hpp"
#include "uniasr/metrics.hpp"
#include "uniasr/pipeline.hpp"
#include "uniasr/prompts.hpp"
#include "uniasr/roman_text.hpp"
#include "uniasr/romanizer.hpp"
#include "uniasr/synth.hpp"
#include "uniasr/unicode.hpp"
#include "uniasr/util.hpp"

namespace {

using namespace uniasr;

// Options shared by every subcommand that talks to a backend.
struct ConverterFlags {
  std::string config_path;
  std::string backend = "mock_identity";
  std::string endpoint;
  std::string model_name;
  std::string table_path;
  int max_inflight = 4;
  int retries = 2;
  int backoff_base_ms = 100;

  void attach(CLI::App* cmd) {
    cmd->add_option("--converter-config", config_path,
                    "Converter config JSON; overrides the flags below");
    cmd->add_option("--backend", backend,
                    "Backend: http, mock_identity or mock_table")
        ->capture_default_str();
    cmd->add_option("--endpoint", endpoint, "Chat endpoint URL (http)");
    cmd->add_option("--model", model_name, "Model name (http)");
    cmd->add_option("--table", table_path, "Mapping JSON (mock_table)");
    cmd->add_option("--max-inflight", max_inflight,
                    "Concurrent requests cap")
        ->capture_default_str();
    cmd->add_option("--retries", retries, "Transport retries")
        ->capture_default_str();
    cmd->add_option("--backoff-base-ms", backoff_base_ms,
                    "Initial retry backoff in milliseconds")
        ->capture_default_str();
  }

  ConverterConfig build() const {
    if (!config_path.empty()) {
      return ConverterConfig::from_json_file(config_path);
    }
    ConverterConfig cfg;
    cfg.backend = parse_backend_kind(backend);
    cfg.endpoint = endpoint;
    cfg.model_name = model_name;
    cfg.table_path = table_path;
    cfg.max_inflight = max_inflight;
    cfg.retries = retries;
    cfg.backoff_base = std::chrono::milliseconds(backoff_base_ms);
    cfg.validate();
    return cfg;
  }
};

// Pool options for few-shot strategies.
struct ShotFlags {
  std::string manifest_path;
  int shots_n = 5;
  std::uint64_t seed = 0;
  std::string exclude_id;

  void attach(CLI::App* cmd) {
    cmd->add_option("--manifest", manifest_path,
                    "Manifest supplying few-shot examples");
    cmd->add_option("--shots", shots_n, "Few-shot example count")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
    cmd->add_option("--exclude-id", exclude_id,
                    "Record id to keep out of the pool");
  }

  std::vector<FewShotExample> sample_for(PromptStrategy strategy,
                                         const std::string& lang,
                                         const std::string& data_dir) const {
    if (strategy != PromptStrategy::kFewShot &&
        strategy != PromptStrategy::kFewShotCot) {
      return {};
    }
    if (manifest_path.empty()) {
      throw ConfigError("few-shot strategies need --manifest for examples");
    }
    const Romanizer romanizer(data_dir);
    auto pools = build_shot_pools(load_manifest(manifest_path), romanizer);
    const auto it = pools.find(lang);
    if (it == pools.end()) {
      throw ConfigError("manifest has no usable examples for language \"" +
                        lang + "\"");
    }
    return sample_shots(it->second, static_cast<std::size_t>(shots_n), seed,
                        exclude_id);
  }
};

std::string outcome_to_json(const ConversionOutcome& outcome) {
  nlohmann::ordered_json doc;
  doc["record_id"] = outcome.record_id;
  doc["status"] = std::string(status_name(outcome.status));
  if (outcome.extracted) {
    doc["extracted"] = *outcome.extracted;
  } else {
    doc["extracted"] = nullptr;
  }
  doc["raw_response"] = outcome.raw_response;
  doc["turns_used"] = outcome.turns_used;
  doc["attempts"] = outcome.attempts;
  return doc.dump();
}

void emit_report(const EvalReport& report, const std::string& format,
                 const std::string& path) {
  const std::string rendered = render_report(report, format);
  if (path.empty()) {
    std::cout << rendered;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << rendered;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-phase multilingual speech recognition: CTC beam decoding into a "
      "universal Romanized alphabet, then prompt-driven conversion into "
      "language-specific text."};
  app.require_subcommand(1);

  std::string data_dir = "data";
  app.add_option("--data-dir", data_dir,
                 "Directory with vocab.txt and tables/")
      ->capture_default_str();

  // decode ----------------------------------------------------------
  auto* decode_cmd =
      app.add_subcommand("decode", "Decode an emission file to Romanized text");
  std::string decode_emissions;
  std::string decode_vocab;
  int decode_beam = 100;
  bool decode_score = false;
  decode_cmd->add_option("emissions", decode_emissions, "LEM1 emission file")
      ->required();
  decode_cmd->add_option("--vocab", decode_vocab,
                         "Vocabulary file (default <data-dir>/vocab.txt)");
  decode_cmd->add_option("--beam-size", decode_beam, "Beam width")
      ->capture_default_str();
  decode_cmd->add_flag("--show-score", decode_score,
                       "Also print the log score");
  decode_cmd->callback([&] {
    const std::string vocab_path =
        decode_vocab.empty() ? data_dir + "/vocab.txt" : decode_vocab;
    const Vocabulary vocab = Vocabulary::load(vocab_path);
    const EmissionMatrix em = read_emissions(decode_emissions, vocab);
    const DecodeResult result =
        beam_decode(em, vocab, static_cast<int32_t>(decode_beam));
    std::cout << result.text.text << "\n";
    if (decode_score) {
      std::cerr << "log_score=" << result.log_score
                << " frames=" << result.n_frames << "\n";
    }
  });

  // romanize --------------------------------------------------------
  auto* romanize_cmd = app.add_subcommand(
      "romanize", "Transliterate text into the universal Romanized alphabet");
  std::string romanize_lang;
  std::string romanize_text;
  bool strict_romanize = false;
  romanize_cmd->add_option("--lang", romanize_lang, "Language code")
      ->required();
  romanize_cmd->add_option("text", romanize_text, "Input text")->required();
  romanize_cmd->add_flag("--strict-romanize", strict_romanize,
                         "Fail instead of dropping unmapped characters");
  romanize_cmd->callback([&] {
    const Romanizer romanizer(data_dir);
    const RomanizeResult result = romanizer.romanize(
        normalize_text(romanize_text), romanize_lang, strict_romanize);
    if (!result.drops.empty()) {
      std::cerr << "warning: dropped " << result.drops.size()
                << " unmapped character(s)\n";
    }
    std::cout << result.text.text << "\n";
  });

  // prompt ----------------------------------------------------------
  auto* prompt_cmd =
      app.add_subcommand("prompt", "Render a conversion prompt and print it");
  std::string prompt_strategy = "zero_shot";
  std::string prompt_lang;
  std::string prompt_roman;
  ShotFlags prompt_shots;
  prompt_cmd->add_option("--strategy", prompt_strategy, "Prompting strategy")
      ->capture_default_str();
  prompt_cmd->add_option("--lang", prompt_lang, "Language code")->required();
  prompt_cmd->add_option("roman", prompt_roman, "Romanized text")->required();
  prompt_shots.attach(prompt_cmd);
  prompt_cmd->callback([&] {
    const PromptStrategy strategy = parse_strategy(prompt_strategy);
    const LanguageInfo& info = lookup_language(prompt_lang);
    const RenderedPrompt rendered = render_prompt(
        strategy, info.name, make_roman_text(prompt_roman),
        prompt_shots.sample_for(strategy, prompt_lang, data_dir));
    for (std::size_t i = 0; i < rendered.turns.size(); ++i) {
      if (i > 0) std::cout << "---\n";
      std::cout << rendered.turns[i] << "\n";
    }
  });

  // convert ---------------------------------------------------------
  auto* convert_cmd = app.add_subcommand(
      "convert", "Convert Romanized text into language-specific text");
  std::string convert_strategy = "zero_shot";
  std::string convert_lang;
  std::string convert_roman;
  ShotFlags convert_shots;
  ConverterFlags convert_backend;
  convert_cmd->add_option("--strategy", convert_strategy, "Prompting strategy")
      ->capture_default_str();
  convert_cmd->add_option("--lang", convert_lang, "Language code")->required();
  convert_cmd->add_option("roman", convert_roman, "Romanized text")
      ->required();
  convert_shots.attach(convert_cmd);
  convert_backend.attach(convert_cmd);
  convert_cmd->callback([&] {
    const PromptStrategy strategy = parse_strategy(convert_strategy);
    const LanguageInfo& info = lookup_language(convert_lang);
    const RenderedPrompt rendered = render_prompt(
        strategy, info.name, make_roman_text(convert_roman),
        convert_shots.sample_for(strategy, convert_lang, data_dir));
    const ConverterConfig cfg = convert_backend.build();
    const std::unique_ptr<ChatBackend> backend = make_backend(cfg);
    const ConversionOutcome outcome =
        convert("cli", rendered, *backend, cfg);
    std::cout << outcome_to_json(outcome) << "\n";
  });

  // run -------------------------------------------------------------
  auto* run_cmd =
      app.add_subcommand("run", "Run the full pipeline over a manifest");
  RunConfig run_cfg;
  ConverterFlags run_backend;
  std::string run_emission_source = "synth";
  run_cmd->add_option("--manifest", run_cfg.manifest_path, "Manifest JSONL")
      ->required();
  run_cmd->add_option("--vocab", run_cfg.vocab_path,
                      "Vocabulary file (default <data-dir>/vocab.txt)");
  std::string run_strategy = "zero_shot";
  run_cmd->add_option("--strategy", run_strategy, "Prompting strategy")
      ->capture_default_str();
  run_cmd->add_option("--shots", run_cfg.shots_n, "Few-shot example count")
      ->capture_default_str();
  run_cmd->add_option("--beam-size", run_cfg.beam_size, "Beam width")
      ->capture_default_str();
  run_cmd->add_option("--seed", run_cfg.seed, "Run seed")
      ->capture_default_str();
  run_cmd
      ->add_option("--emission-source", run_emission_source,
                   "files (per-record emission_path) or synth (roman_ref)")
      ->capture_default_str();
  run_cmd
      ->add_option("--substitution-rate", run_cfg.noise.substitution_rate,
                   "Synth: per-character substitution probability")
      ->capture_default_str();
  run_cmd
      ->add_option("--deletion-rate", run_cfg.noise.deletion_rate,
                   "Synth: per-character deletion probability")
      ->capture_default_str();
  run_cmd
      ->add_option("--blank-bleed", run_cfg.noise.blank_bleed,
                   "Synth: probability mass bled to blank per frame")
      ->capture_default_str();
  run_cmd
      ->add_option("--frames-per-char", run_cfg.noise.frames_per_char,
                   "Synth: frames per character")
      ->capture_default_str();
  run_cmd->add_option("--report", run_cfg.report_path,
                      "Report file (default stdout)");
  run_cmd
      ->add_option("--report-format", run_cfg.report_format,
                   "tsv, md or json")
      ->capture_default_str();
  run_cmd->add_option("--audit", run_cfg.audit_path, "Audit JSONL file");
  run_backend.attach(run_cmd);
  run_cmd->callback([&] {
    run_cfg.data_dir = data_dir;
    if (run_cfg.vocab_path.empty()) {
      run_cfg.vocab_path = data_dir + "/vocab.txt";
    }
    run_cfg.strategy = parse_strategy(run_strategy);
    if (run_emission_source == "files") {
      run_cfg.emission_source = EmissionSource::kFiles;
    } else if (run_emission_source == "synth") {
      run_cfg.emission_source = EmissionSource::kSynth;
    } else {
      throw ConfigError("--emission-source must be files or synth");
    }
    run_cfg.converter = run_backend.build();
    const RunResult result = run_pipeline(run_cfg);
    if (run_cfg.report_path.empty()) {
      std::cout << render_report(result.report, run_cfg.report_format);
    }
    std::size_t failures = 0;
    for (const AuditEntry& entry : result.audit) {
      if (entry.status != "ok" && entry.status != "filtered") ++failures;
    }
    std::cerr << "records=" << result.audit.size()
              << " scored=" << result.report.n_records
              << " failures=" << failures << "\n";
  });

  // eval ------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand(
      "eval", "Score a hypothesis file against a manifest");
  std::string eval_manifest;
  std::string eval_hyp;
  std::string eval_format = "tsv";
  std::string eval_report_path;
  eval_cmd->add_option("--manifest", eval_manifest, "Manifest JSONL")
      ->required();
  eval_cmd
      ->add_option("--hyp", eval_hyp,
                   "Hypotheses, one 'id<TAB>text' line per record")
      ->required();
  eval_cmd->add_option("--report-format", eval_format, "tsv, md or json")
      ->capture_default_str();
  eval_cmd->add_option("--report", eval_report_path,
                       "Report file (default stdout)");
  eval_cmd->callback([&] {
    const std::vector<UtteranceRecord> records = load_manifest(eval_manifest);
    std::map<std::string, std::string> hyps;
    std::istringstream in(read_file(eval_hyp));
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) {
        throw MetricsError("hypothesis line " + std::to_string(line_number) +
                           ": expected id<TAB>text");
      }
      if (!hyps.emplace(line.substr(0, tab), line.substr(tab + 1)).second) {
        throw MetricsError("hypothesis line " + std::to_string(line_number) +
                           ": duplicate id");
      }
    }
    std::vector<ScoredRecord> rows;
    for (const UtteranceRecord& record : records) {
      const auto it = hyps.find(record.id);
      if (it == hyps.end()) {
        throw MetricsError("no hypothesis for record \"" + record.id + "\"");
      }
      ConversionOutcome outcome;
      outcome.record_id = record.id;
      outcome.status = ConversionStatus::kOk;
      outcome.extracted = normalize_text(it->second);
      outcome.turns_used = 1;
      outcome.attempts = 1;
      UtteranceRecord normalized = record;
      normalized.ref_text = normalize_text(record.ref_text);
      rows.push_back(score_record(normalized, outcome));
      hyps.erase(it);
    }
    if (!hyps.empty()) {
      throw MetricsError("hypothesis file has " +
                         std::to_string(hyps.size()) +
                         " id(s) not present in the manifest");
    }
    emit_report(aggregate_report(rows), eval_format, eval_report_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const uniasr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

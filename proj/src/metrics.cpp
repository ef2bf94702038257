// src/metrics.cpp
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

#include "uniasr/metrics.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "uniasr/error.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

namespace {

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    const std::size_t begin = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > begin) tokens.emplace_back(text.substr(begin, i - begin));
  }
  return tokens;
}

std::string format_rate(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

std::string format_optional_rate(const std::optional<double>& value) {
  return value ? format_rate(*value) : std::string("-");
}

}  // namespace

double cer(std::string_view ref, std::string_view hyp) {
  const std::u32string r = decode_utf8(collapse_whitespace(ref));
  if (r.empty()) throw MetricsError("cer: empty reference");
  const std::u32string h = decode_utf8(collapse_whitespace(hyp));
  return static_cast<double>(edit_distance(r, h)) /
         static_cast<double>(r.size());
}

double wer(std::string_view ref, std::string_view hyp) {
  const std::vector<std::string> r = split_tokens(ref);
  if (r.empty()) throw MetricsError("wer: empty reference");
  const std::vector<std::string> h = split_tokens(hyp);
  return static_cast<double>(edit_distance(r, h)) /
         static_cast<double>(r.size());
}

double per(const std::vector<std::string>& ref_phones,
           const std::vector<std::string>& hyp_phones) {
  if (ref_phones.empty()) throw MetricsError("per: empty reference");
  return static_cast<double>(edit_distance(ref_phones, hyp_phones)) /
         static_cast<double>(ref_phones.size());
}

double repetition_rate(const std::vector<ConversionOutcome>& outcomes) {
  if (outcomes.empty()) {
    throw MetricsError("repetition_rate: no outcomes");
  }
  std::size_t format_errors = 0;
  for (const ConversionOutcome& outcome : outcomes) {
    if (outcome.status == ConversionStatus::kFormatError) ++format_errors;
  }
  return static_cast<double>(format_errors) /
         static_cast<double>(outcomes.size());
}

double relative_error_reduction(double baseline, double ours) {
  if (baseline <= 0.0) {
    throw MetricsError("relative_error_reduction: baseline must be positive");
  }
  return (baseline - ours) / baseline;
}

ScoredRecord score_record(const UtteranceRecord& record,
                          const ConversionOutcome& outcome) {
  if (record.id != outcome.record_id) {
    throw MetricsError("score_record: outcome for \"" + outcome.record_id +
                       "\" scored against record \"" + record.id + "\"");
  }
  const std::string hyp = outcome.status == ConversionStatus::kOk
                              ? *outcome.extracted
                              : std::string();
  ScoredRecord scored;
  scored.record_id = record.id;
  scored.lang = record.lang;
  scored.status = outcome.status;
  scored.cer = cer(record.ref_text, hyp);
  scored.wer = wer(record.ref_text, hyp);
  return scored;
}

EvalReport aggregate_report(const std::vector<ScoredRecord>& rows) {
  if (rows.empty()) throw MetricsError("aggregate_report: no rows");

  struct Sums {
    double cer = 0.0;
    double wer = 0.0;
    double per = 0.0;
    std::size_t per_count = 0;
    std::size_t n_records = 0;
    std::size_t n_format_errors = 0;
  };
  std::map<std::string, Sums> by_lang;
  std::size_t total_format_errors = 0;
  for (const ScoredRecord& row : rows) {
    lookup_language(row.lang);
    Sums& sums = by_lang[row.lang];
    sums.cer += row.cer;
    sums.wer += row.wer;
    if (row.per) {
      sums.per += *row.per;
      ++sums.per_count;
    }
    ++sums.n_records;
    if (row.status == ConversionStatus::kFormatError) {
      ++sums.n_format_errors;
      ++total_format_errors;
    }
  }

  EvalReport report;
  report.n_records = rows.size();
  report.repetition_rate = static_cast<double>(total_format_errors) /
                           static_cast<double>(rows.size());
  for (const auto& [lang, sums] : by_lang) {
    LanguageReport entry;
    const double n = static_cast<double>(sums.n_records);
    entry.cer = sums.cer / n;
    entry.wer = sums.wer / n;
    if (sums.per_count > 0) {
      entry.per = sums.per / static_cast<double>(sums.per_count);
    }
    entry.n_records = sums.n_records;
    entry.n_format_errors = sums.n_format_errors;
    report.aggregate_cer += entry.cer;
    report.aggregate_wer += entry.wer;
    report.per_language.emplace(lang, entry);
  }
  const double langs = static_cast<double>(report.per_language.size());
  report.aggregate_cer /= langs;
  report.aggregate_wer /= langs;
  return report;
}

std::string render_report_tsv(const EvalReport& report) {
  std::string out;
  out += "#n_records\t" + std::to_string(report.n_records) + "\n";
  out += "#repetition_rate\t" + format_rate(report.repetition_rate) + "\n";
  out += "#macro_cer\t" + format_rate(report.aggregate_cer) + "\n";
  out += "#macro_wer\t" + format_rate(report.aggregate_wer) + "\n";
  out += "language\tcer\twer\tper\tn_records\tn_format_errors\n";
  for (const auto& [lang, entry] : report.per_language) {
    out += lang;
    out += '\t';
    out += format_rate(entry.cer);
    out += '\t';
    out += format_rate(entry.wer);
    out += '\t';
    out += format_optional_rate(entry.per);
    out += '\t';
    out += std::to_string(entry.n_records);
    out += '\t';
    out += std::to_string(entry.n_format_errors);
    out += '\n';
  }
  return out;
}

std::string render_report_markdown(const EvalReport& report) {
  std::string out;
  out += "| language | cer | wer | per | records | format errors |\n";
  out += "|----------|----:|----:|----:|--------:|--------------:|\n";
  for (const auto& [lang, entry] : report.per_language) {
    out += "| " + lang + " | " + format_rate(entry.cer) + " | " +
           format_rate(entry.wer) + " | " + format_optional_rate(entry.per) +
           " | " + std::to_string(entry.n_records) + " | " +
           std::to_string(entry.n_format_errors) + " |\n";
  }
  out += "| **macro** | " + format_rate(report.aggregate_cer) + " | " +
         format_rate(report.aggregate_wer) + " | - | " +
         std::to_string(report.n_records) + " | - |\n";
  out += "\nrepetition rate: " + format_rate(report.repetition_rate) +
         " over " + std::to_string(report.n_records) + " records\n";
  return out;
}

std::string render_report_json(const EvalReport& report) {
  nlohmann::ordered_json doc;
  doc["n_records"] = report.n_records;
  doc["repetition_rate"] = format_rate(report.repetition_rate);
  doc["aggregate"] = {{"cer", format_rate(report.aggregate_cer)},
                      {"wer", format_rate(report.aggregate_wer)}};
  nlohmann::ordered_json langs = nlohmann::ordered_json::object();
  for (const auto& [lang, entry] : report.per_language) {
    nlohmann::ordered_json row;
    row["cer"] = format_rate(entry.cer);
    row["wer"] = format_rate(entry.wer);
    if (entry.per) {
      row["per"] = format_rate(*entry.per);
    } else {
      row["per"] = nullptr;
    }
    row["n_records"] = entry.n_records;
    row["n_format_errors"] = entry.n_format_errors;
    langs[lang] = std::move(row);
  }
  doc["per_language"] = std::move(langs);
  return doc.dump(2) + "\n";
}

}  // namespace uniasr

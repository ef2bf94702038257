// include/uniasr/metrics.hpp
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

#ifndef UNIASR_METRICS_HPP_
#define UNIASR_METRICS_HPP_

#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uniasr/converter.hpp"
#include "uniasr/corpus.hpp"

namespace uniasr {

// Levenshtein distance with unit costs, two-row dynamic program. Works
// on any random-access sequence with == on elements.
template <typename Seq>
std::size_t edit_distance(const Seq& a, const Seq& b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> prev(n + 1);
  std::vector<std::size_t> curr(n + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, subst});
    }
    std::swap(prev, curr);
  }
  return prev[n];
}

// Character error rate over codepoints. Whitespace runs collapse to a
// single space symbol in both arguments, so spacing errors count but
// run length and outer whitespace do not. Throws MetricsError when the
// reference collapses to nothing.
double cer(std::string_view ref, std::string_view hyp);

// Word error rate over ASCII-whitespace-delimited tokens. Throws
// MetricsError when the reference has no tokens.
double wer(std::string_view ref, std::string_view hyp);

// Phone error rate over caller-tokenized phone sequences. Throws
// MetricsError when the reference is empty.
double per(const std::vector<std::string>& ref_phones,
           const std::vector<std::string>& hyp_phones);

// Fraction of outcomes whose status is format_error. Throws
// MetricsError on an empty list.
double repetition_rate(const std::vector<ConversionOutcome>& outcomes);

// (baseline - ours) / baseline. Throws MetricsError when baseline <= 0.
double relative_error_reduction(double baseline, double ours);

struct ScoredRecord {
  std::string record_id;
  std::string lang;
  ConversionStatus status = ConversionStatus::kBackendError;
  double cer = 0.0;
  double wer = 0.0;
  // The text pipeline carries no phone inventory; standalone phone
  // scoring fills this.
  std::optional<double> per;
};

// Scores one conversion against its reference. Failed conversions score
// against the empty hypothesis rather than being dropped, so aggregate
// error cannot improve by failing. Throws MetricsError when the outcome
// belongs to a different record.
ScoredRecord score_record(const UtteranceRecord& record,
                          const ConversionOutcome& outcome);

struct LanguageReport {
  double cer = 0.0;
  double wer = 0.0;
  // Mean over rows carrying a value; absent when none do.
  std::optional<double> per;
  std::size_t n_records = 0;
  std::size_t n_format_errors = 0;
};

struct EvalReport {
  // Keyed by language code; iteration order is the report order.
  std::map<std::string, LanguageReport> per_language;
  // Unweighted means across languages, so small languages carry the
  // same weight as large ones.
  double aggregate_cer = 0.0;
  double aggregate_wer = 0.0;
  // format_error fraction over all records.
  double repetition_rate = 0.0;
  std::size_t n_records = 0;
};

// Per-language means plus macro averages. Throws MetricsError on an
// empty row set and UnknownLanguageError on a code outside the
// registry.
EvalReport aggregate_report(const std::vector<ScoredRecord>& rows);

// Deterministic renderings: languages sorted by code, rates printed
// with four decimals, byte-identical for identical reports.
std::string render_report_tsv(const EvalReport& report);
std::string render_report_markdown(const EvalReport& report);
std::string render_report_json(const EvalReport& report);

}  // namespace uniasr

#endif  // UNIASR_METRICS_HPP_

// tests/test_metrics.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles/edit_distance_oracle.hpp"
#include "uniasr/error.hpp"
#include "uniasr/metrics.hpp"
#include "uniasr/util.hpp"

using namespace uniasr;
using uniasr::testing::reference_edit_distance;

namespace {

std::u32string random_seq(Rng* rng, std::size_t max_len,
                          std::size_t alphabet) {
  std::u32string s;
  const std::size_t len = rng->next_below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    s.push_back(U'a' + static_cast<char32_t>(rng->next_below(alphabet)));
  }
  return s;
}

ConversionOutcome make_outcome(std::string id, ConversionStatus status,
                               std::string extracted = {}) {
  ConversionOutcome outcome;
  outcome.record_id = std::move(id);
  outcome.status = status;
  outcome.turns_used = 1;
  outcome.attempts = 1;
  if (status == ConversionStatus::kOk) {
    outcome.raw_response = "```" + extracted + "```";
    outcome.extracted = std::move(extracted);
  } else {
    outcome.raw_response = "failed";
  }
  return outcome;
}

ScoredRecord make_row(std::string id, std::string lang, double cer_value,
                      double wer_value,
                      ConversionStatus status = ConversionStatus::kOk) {
  ScoredRecord row;
  row.record_id = std::move(id);
  row.lang = std::move(lang);
  row.status = status;
  row.cer = cer_value;
  row.wer = wer_value;
  return row;
}

}  // namespace

TEST_CASE("edit_distance handles the textbook cases") {
  const std::u32string kitten = U"kitten";
  const std::u32string sitting = U"sitting";
  CHECK(edit_distance(kitten, sitting) == 3);
  CHECK(edit_distance(sitting, kitten) == 3);
  CHECK(edit_distance(std::u32string(U"abc"), std::u32string(U"abc")) == 0);
  CHECK(edit_distance(std::u32string(), std::u32string(U"abc")) == 3);
  CHECK(edit_distance(std::u32string(U"abc"), std::u32string()) == 3);
  const std::vector<std::string> ab = {"the", "cat", "sat"};
  const std::vector<std::string> cd = {"the", "cat"};
  CHECK(edit_distance(ab, cd) == 1);
}

TEST_CASE("edit_distance matches the quadratic oracle on random pairs") {
  Rng rng(1701);
  for (int i = 0; i < 500; ++i) {
    const std::u32string a = random_seq(&rng, 30, 4);
    const std::u32string b = random_seq(&rng, 30, 4);
    CHECK(edit_distance(a, b) == reference_edit_distance(a, b));
  }
}

TEST_CASE("edit_distance is a metric") {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const std::u32string a = random_seq(&rng, 12, 3);
    const std::u32string b = random_seq(&rng, 12, 3);
    const std::u32string c = random_seq(&rng, 12, 3);
    CHECK(edit_distance(a, a) == 0);
    CHECK(edit_distance(a, b) == edit_distance(b, a));
    CHECK(edit_distance(a, c) <=
          edit_distance(a, b) + edit_distance(b, c));
    if (a != b) CHECK(edit_distance(a, b) > 0);
  }
}

TEST_CASE("cer divides codepoint edits by reference length") {
  CHECK(cer("abc", "abc") == 0.0);
  CHECK(cer("sitting", "kitten") == doctest::Approx(3.0 / 7.0));
  CHECK(cer("ab", "abcd") == doctest::Approx(1.0));
  // A collapsed space is one symbol.
  CHECK(cer("a b", "ab") == doctest::Approx(1.0 / 3.0));
  // Codepoints, not bytes.
  CHECK(cer("привет", "привет") == 0.0);
  CHECK(cer("привет", "привед") == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS_AS(cer("", "abc"), MetricsError);
  CHECK_THROWS_AS(cer("   ", "abc"), MetricsError);
}

TEST_CASE("cer and wer ignore whitespace run length and outer space") {
  CHECK(cer("  a   b\t c ", "a b c") == 0.0);
  CHECK(wer("  a   b\t c ", "a b c") == 0.0);
  CHECK(cer("a \n b", " a\tb ") == 0.0);
  CHECK(wer("the   cat\tsat", "the cat sat") == 0.0);
}

TEST_CASE("wer divides token edits by reference token count") {
  CHECK(wer("a b c", "a b c") == 0.0);
  CHECK(wer("the cat sat", "the cat") == doctest::Approx(1.0 / 3.0));
  CHECK(wer("a b", "x y") == doctest::Approx(1.0));
  CHECK(wer("один", "") == doctest::Approx(1.0));
  CHECK_THROWS_AS(wer("", "a"), MetricsError);
  CHECK_THROWS_AS(wer(" \t ", "a"), MetricsError);
}

TEST_CASE("per divides phone edits by reference phone count") {
  const std::vector<std::string> kat = {"k", "a", "t"};
  const std::vector<std::string> kit = {"k", "i", "t"};
  CHECK(per(kat, kat) == 0.0);
  CHECK(per(kat, kit) == doctest::Approx(1.0 / 3.0));
  CHECK(per({"k", "a"}, {}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(per({}, kat), MetricsError);
}

TEST_CASE("repetition_rate counts format errors over all outcomes") {
  std::vector<ConversionOutcome> ten;
  for (int i = 0; i < 10; ++i) {
    ten.push_back(make_outcome("r" + std::to_string(i),
                               ConversionStatus::kOk, "x"));
  }
  CHECK(repetition_rate(ten) == 0.0);

  std::vector<ConversionOutcome> thousand;
  for (int i = 0; i < 1000; ++i) {
    thousand.push_back(make_outcome(
        "r" + std::to_string(i),
        i < 2 ? ConversionStatus::kFormatError : ConversionStatus::kOk,
        "x"));
  }
  CHECK(repetition_rate(thousand) == doctest::Approx(0.002));

  std::vector<ConversionOutcome> hundred;
  for (int i = 0; i < 100; ++i) {
    hundred.push_back(make_outcome(
        "r" + std::to_string(i),
        i < 12 ? ConversionStatus::kFormatError : ConversionStatus::kOk,
        "x"));
  }
  CHECK(repetition_rate(hundred) == doctest::Approx(0.12));

  // backend_error is not a format error.
  std::vector<ConversionOutcome> mixed;
  mixed.push_back(make_outcome("a", ConversionStatus::kBackendError));
  mixed.push_back(make_outcome("b", ConversionStatus::kFormatError));
  CHECK(repetition_rate(mixed) == doctest::Approx(0.5));

  CHECK_THROWS_AS(repetition_rate({}), MetricsError);
}

TEST_CASE("relative_error_reduction follows its definition") {
  CHECK(relative_error_reduction(23.9, 14.8) == doctest::Approx(0.381).epsilon(0.003));
  CHECK(relative_error_reduction(42.9, 33.2) == doctest::Approx(0.226).epsilon(0.005));
  CHECK(relative_error_reduction(0.37, 0.37) == 0.0);
  CHECK(relative_error_reduction(5.0, 0.0) == 1.0);
  CHECK(relative_error_reduction(1.0, 2.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(relative_error_reduction(0.0, 1.0), MetricsError);
  CHECK_THROWS_AS(relative_error_reduction(-1.0, 0.5), MetricsError);
}

TEST_CASE("score_record scores hypotheses and failure fallbacks") {
  UtteranceRecord record;
  record.id = "r1";
  record.lang = "ru";
  record.ref_text = "привет мир";

  SUBCASE("exact hypothesis") {
    const ScoredRecord scored = score_record(
        record, make_outcome("r1", ConversionStatus::kOk, "привет мир"));
    CHECK(scored.record_id == "r1");
    CHECK(scored.lang == "ru");
    CHECK(scored.status == ConversionStatus::kOk);
    CHECK(scored.cer == 0.0);
    CHECK(scored.wer == 0.0);
    CHECK_FALSE(scored.per.has_value());
  }
  SUBCASE("partial hypothesis") {
    const ScoredRecord scored = score_record(
        record, make_outcome("r1", ConversionStatus::kOk, "привет"));
    CHECK(scored.cer == doctest::Approx(4.0 / 10.0));
    CHECK(scored.wer == doctest::Approx(0.5));
  }
  SUBCASE("format_error scores the empty hypothesis") {
    const ScoredRecord scored = score_record(
        record, make_outcome("r1", ConversionStatus::kFormatError));
    CHECK(scored.status == ConversionStatus::kFormatError);
    CHECK(scored.cer == doctest::Approx(1.0));
    CHECK(scored.wer == doctest::Approx(1.0));
  }
  SUBCASE("backend_error scores the empty hypothesis") {
    const ScoredRecord scored = score_record(
        record, make_outcome("r1", ConversionStatus::kBackendError));
    CHECK(scored.cer == doctest::Approx(1.0));
  }
  SUBCASE("mismatched ids are rejected") {
    CHECK_THROWS_AS(
        score_record(record, make_outcome("r2", ConversionStatus::kOk, "x")),
        MetricsError);
  }
}

TEST_CASE("aggregate_report macro-averages per-language means") {
  std::vector<ScoredRecord> rows;
  rows.push_back(make_row("a1", "ru", 0.1, 0.2));
  rows.push_back(make_row("a2", "ru", 0.1, 0.2));
  rows.push_back(make_row("b1", "el", 0.3, 0.6));
  const EvalReport report = aggregate_report(rows);
  CHECK(report.n_records == 3);
  CHECK(report.per_language.at("ru").cer == doctest::Approx(0.1));
  CHECK(report.per_language.at("el").cer == doctest::Approx(0.3));
  CHECK(report.aggregate_cer == doctest::Approx(0.2));
  CHECK(report.aggregate_wer == doctest::Approx(0.4));
  CHECK(report.repetition_rate == 0.0);
  CHECK(report.per_language.at("ru").n_records == 2);
  CHECK(report.per_language.at("el").n_records == 1);
}

TEST_CASE("aggregate_report weighs languages equally, not records") {
  // Nine easy ru rows and one hard el row: micro average would be 0.1,
  // macro must be 0.5.
  std::vector<ScoredRecord> rows;
  for (int i = 0; i < 9; ++i) {
    rows.push_back(make_row("r" + std::to_string(i), "ru", 0.0, 0.0));
  }
  rows.push_back(make_row("e0", "el", 1.0, 1.0));
  const EvalReport report = aggregate_report(rows);
  CHECK(report.aggregate_cer == doctest::Approx(0.5));
  CHECK(report.aggregate_wer == doctest::Approx(0.5));
}

TEST_CASE("aggregate_report tracks format errors per language") {
  std::vector<ScoredRecord> rows;
  rows.push_back(make_row("a", "ru", 1.0, 1.0, ConversionStatus::kFormatError));
  rows.push_back(make_row("b", "ru", 0.0, 0.0));
  rows.push_back(make_row("c", "el", 0.0, 0.0));
  rows.push_back(make_row("d", "el", 1.0, 1.0, ConversionStatus::kBackendError));
  const EvalReport report = aggregate_report(rows);
  CHECK(report.per_language.at("ru").n_format_errors == 1);
  CHECK(report.per_language.at("el").n_format_errors == 0);
  CHECK(report.repetition_rate == doctest::Approx(0.25));
}

TEST_CASE("aggregate_report averages per only where present") {
  std::vector<ScoredRecord> rows;
  ScoredRecord with_per = make_row("a", "ru", 0.1, 0.1);
  with_per.per = 0.3;
  rows.push_back(with_per);
  rows.push_back(make_row("b", "ru", 0.1, 0.1));
  rows.push_back(make_row("c", "el", 0.1, 0.1));
  const EvalReport report = aggregate_report(rows);
  CHECK(report.per_language.at("ru").per == doctest::Approx(0.3));
  CHECK_FALSE(report.per_language.at("el").per.has_value());
}

TEST_CASE("aggregate_report rejects empty input and unknown languages") {
  CHECK_THROWS_AS(aggregate_report({}), MetricsError);
  std::vector<ScoredRecord> rows;
  rows.push_back(make_row("a", "zz", 0.1, 0.1));
  CHECK_THROWS_AS(aggregate_report(rows), UnknownLanguageError);
}

TEST_CASE("report renderings are deterministic and complete") {
  std::vector<ScoredRecord> rows;
  rows.push_back(make_row("a1", "ru", 0.1, 0.2));
  rows.push_back(make_row("a2", "ru", 0.1, 0.2, ConversionStatus::kFormatError));
  rows.push_back(make_row("b1", "el", 0.3, 0.6));
  const EvalReport report = aggregate_report(rows);

  const std::string tsv = render_report_tsv(report);
  CHECK(tsv ==
        "#n_records\t3\n"
        "#repetition_rate\t0.3333\n"
        "#macro_cer\t0.2000\n"
        "#macro_wer\t0.4000\n"
        "language\tcer\twer\tper\tn_records\tn_format_errors\n"
        "el\t0.3000\t0.6000\t-\t1\t0\n"
        "ru\t0.1000\t0.2000\t-\t2\t1\n");
  CHECK(render_report_tsv(report) == tsv);

  const std::string md = render_report_markdown(report);
  CHECK(md.find("| el | 0.3000 | 0.6000 | - | 1 | 0 |") != std::string::npos);
  CHECK(md.find("| ru | 0.1000 | 0.2000 | - | 2 | 1 |") != std::string::npos);
  CHECK(md.find("| **macro** | 0.2000 | 0.4000 | - | 3 | - |") !=
        std::string::npos);
  CHECK(md.find("repetition rate: 0.3333 over 3 records") !=
        std::string::npos);

  const std::string js = render_report_json(report);
  CHECK(render_report_json(report) == js);
  const nlohmann::json parsed = nlohmann::json::parse(js);
  CHECK(parsed.at("n_records") == 3);
  CHECK(parsed.at("repetition_rate") == "0.3333");
  CHECK(parsed.at("aggregate").at("cer") == "0.2000");
  CHECK(parsed.at("per_language").at("ru").at("n_format_errors") == 1);
  CHECK(parsed.at("per_language").at("el").at("per").is_null());
}

// include/uniasr/corpus.hpp
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

#ifndef UNIASR_CORPUS_HPP_
#define UNIASR_CORPUS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uniasr {

// One utterance of a manifest: reference text plus optional Romanized
// reference and optional path to a precomputed emission matrix.
struct UtteranceRecord {
  std::string id;
  std::string lang;
  std::string ref_text;
  std::optional<std::string> roman_ref;
  std::optional<std::string> emission_path;

  bool operator==(const UtteranceRecord&) const = default;
};

struct LanguageInfo {
  std::string code;
  std::string name;
  bool seen = false;
};

// Exact-match lookup in the compiled-in registry. Throws
// UnknownLanguageError for codes outside the registry; manifests cannot
// introduce new languages.
const LanguageInfo& lookup_language(std::string_view code);

// All registry entries, seen then unseen, each group in registry order.
const std::vector<LanguageInfo>& all_languages();

struct FilterDecision {
  bool accepted = false;
  // "parenthesis" or "digit" when rejected, empty when accepted.
  std::string reason;
};

// Decides whether a normalized reference sentence enters the corpus.
// Rejects text containing any parenthesis (ASCII or fullwidth) or any
// codepoint of Unicode general category Nd.
FilterDecision filter_sample(std::string_view normalized_text);

// Parses one manifest line. Required keys: id, lang, ref_text. Optional:
// roman_ref, emission_path. Anything else is an error; messages carry
// line_number for diagnostics.
UtteranceRecord parse_manifest_line(std::string_view line,
                                    std::size_t line_number);

// Reads a JSONL manifest in file order. Throws ManifestError on
// malformed lines, duplicate ids, or unknown language codes.
std::vector<UtteranceRecord> load_manifest(const std::string& path);

std::string serialize_manifest_line(const UtteranceRecord& record);

// Writes records one JSON object per line. load(write(load(x)))
// reproduces load(x) exactly.
void write_manifest(const std::vector<UtteranceRecord>& records,
                    const std::string& path);

}  // namespace uniasr

#endif  // UNIASR_CORPUS_HPP_

// src/corpus.cpp
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

#include "uniasr/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "uniasr/error.hpp"
#include "uniasr/unicode.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_line(std::size_t line_number, const std::string& what) {
  throw ManifestError("manifest line " + std::to_string(line_number) + ": " +
                      what);
}

std::string require_string(const ordered_json& object, const char* key,
                           std::size_t line_number) {
  const auto it = object.find(key);
  if (it == object.end()) {
    fail_line(line_number, std::string("missing required key \"") + key +
                               "\"");
  }
  if (!it->is_string()) {
    fail_line(line_number, std::string("key \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const ordered_json& object,
                                           const char* key,
                                           std::size_t line_number) {
  const auto it = object.find(key);
  if (it == object.end()) return std::nullopt;
  if (!it->is_string()) {
    fail_line(line_number, std::string("key \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

FilterDecision filter_sample(std::string_view normalized_text) {
  for (char32_t cp : decode_utf8(normalized_text)) {
    if (cp == U'(' || cp == U')' || cp == U'（' || cp == U'）') {
      return {false, "parenthesis"};
    }
    if (is_decimal_digit(cp)) {
      return {false, "digit"};
    }
  }
  return {true, ""};
}

UtteranceRecord parse_manifest_line(std::string_view line,
                                    std::size_t line_number) {
  ordered_json object;
  try {
    object = ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    fail_line(line_number, std::string("invalid JSON: ") + e.what());
  }
  if (!object.is_object()) {
    fail_line(line_number, "record must be a JSON object");
  }
  for (const auto& item : object.items()) {
    const std::string& key = item.key();
    if (key != "id" && key != "lang" && key != "ref_text" &&
        key != "roman_ref" && key != "emission_path") {
      fail_line(line_number, "unknown key \"" + key + "\"");
    }
  }
  UtteranceRecord record;
  record.id = require_string(object, "id", line_number);
  record.lang = require_string(object, "lang", line_number);
  record.ref_text = require_string(object, "ref_text", line_number);
  record.roman_ref = optional_string(object, "roman_ref", line_number);
  record.emission_path = optional_string(object, "emission_path", line_number);
  if (record.id.empty()) fail_line(line_number, "id must be non-empty");
  try {
    lookup_language(record.lang);
  } catch (const UnknownLanguageError& e) {
    fail_line(line_number, e.what());
  }
  return record;
}

std::vector<UtteranceRecord> load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot open manifest: " + path);
  std::vector<UtteranceRecord> records;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    UtteranceRecord record = parse_manifest_line(line, line_number);
    if (!seen_ids.insert(record.id).second) {
      fail_line(line_number, "duplicate id \"" + record.id + "\"");
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string serialize_manifest_line(const UtteranceRecord& record) {
  ordered_json object;
  object["id"] = record.id;
  object["lang"] = record.lang;
  object["ref_text"] = record.ref_text;
  if (record.roman_ref) object["roman_ref"] = *record.roman_ref;
  if (record.emission_path) object["emission_path"] = *record.emission_path;
  return object.dump();
}

void write_manifest(const std::vector<UtteranceRecord>& records,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open manifest for writing: " + path);
  for (const UtteranceRecord& record : records) {
    out << serialize_manifest_line(record) << '\n';
  }
  if (!out) throw IoError("failed writing manifest: " + path);
}

}  // namespace uniasr

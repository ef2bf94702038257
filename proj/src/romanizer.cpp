// src/romanizer.cpp
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

#include "uniasr/romanizer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "uniasr/error.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

namespace {

constexpr char32_t kHangulBase = 0xAC00;
constexpr char32_t kHangulEnd = 0xD7A3;
constexpr char32_t kJamoLeadBase = 0x1100;
constexpr char32_t kJamoVowelBase = 0x1161;
constexpr char32_t kJamoTailBase = 0x11A7;
constexpr int kVowelCount = 21;
constexpr int kTailCount = 28;

// Whitespace that survives NFKC normalization.
bool is_space_like(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || cp == 0x85 || cp == 0x1680 ||
         cp == 0x2028 || cp == 0x2029;
}

std::string describe_codepoint(char32_t cp) {
  std::string utf8;
  append_utf8(&utf8, cp);
  std::ostringstream out;
  out << "'" << utf8 << "' (U+" << std::uppercase << std::hex
      << static_cast<std::uint32_t>(cp) << ")";
  return out.str();
}

}  // namespace

std::u32string decompose_hangul(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < kHangulBase || cp > kHangulEnd) {
      out.push_back(cp);
      continue;
    }
    const int index = static_cast<int>(cp - kHangulBase);
    const int lead = index / (kVowelCount * kTailCount);
    const int vowel = (index / kTailCount) % kVowelCount;
    const int tail = index % kTailCount;
    out.push_back(kJamoLeadBase + lead);
    out.push_back(kJamoVowelBase + vowel);
    if (tail > 0) out.push_back(kJamoTailBase + tail);
  }
  return out;
}

ScriptRuleTable ScriptRuleTable::from_rules(
    std::string name, std::vector<TransliterationRule> rules) {
  ScriptRuleTable table;
  table.name_ = std::move(name);
  for (TransliterationRule& rule : rules) {
    if (rule.source.empty()) {
      throw RuleTableError("table " + table.name_ + ": empty rule source");
    }
    for (unsigned char c : rule.target) {
      if (!is_universal_char(c)) {
        throw RuleTableError("table " + table.name_ + ": rule for " +
                             describe_codepoint(rule.source[0]) +
                             " has target outside the universal alphabet");
      }
    }
    if (!table.by_source_.emplace(rule.source, rule.target).second) {
      throw RuleTableError("table " + table.name_ + ": duplicate source " +
                           describe_codepoint(rule.source[0]));
    }
    table.max_source_len_ = std::max(table.max_source_len_,
                                     rule.source.size());
    table.rules_.push_back(std::move(rule));
  }
  // Longest source first; equal lengths keep file order.
  std::stable_sort(table.rules_.begin(), table.rules_.end(),
                   [](const TransliterationRule& a,
                      const TransliterationRule& b) {
                     return a.source.size() > b.source.size();
                   });
  return table;
}

ScriptRuleTable ScriptRuleTable::load(const std::string& path,
                                      std::string name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuleTableError("cannot open rule table: " + path);
  std::vector<TransliterationRule> rules;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw RuleTableError(path + ":" + std::to_string(line_number) +
                           ": expected source<TAB>target");
    }
    TransliterationRule rule;
    rule.source = decode_utf8(std::string_view(line).substr(0, tab));
    rule.target = line.substr(tab + 1);
    if (rule.source.empty()) {
      throw RuleTableError(path + ":" + std::to_string(line_number) +
                           ": empty rule source");
    }
    rules.push_back(std::move(rule));
  }
  try {
    return from_rules(std::move(name), std::move(rules));
  } catch (const RuleTableError& e) {
    throw RuleTableError(path + ": " + e.what());
  }
}

std::size_t ScriptRuleTable::match(const std::u32string& text,
                                   std::size_t pos,
                                   const std::string** target) const {
  const std::size_t remaining = text.size() - pos;
  const std::size_t longest = std::min(max_source_len_, remaining);
  for (std::size_t len = longest; len >= 1; --len) {
    const auto it = by_source_.find(text.substr(pos, len));
    if (it != by_source_.end()) {
      *target = &it->second;
      return len;
    }
  }
  return 0;
}

Romanizer::Romanizer(const std::string& data_dir) {
  const std::string tables_dir = data_dir + "/tables";
  const std::string map_path = tables_dir + "/scripts.map";
  std::ifstream in(map_path, std::ios::binary);
  if (!in) throw RuleTableError("cannot open script map: " + map_path);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw RuleTableError(map_path + ":" + std::to_string(line_number) +
                           ": expected lang<TAB>table");
    }
    const std::string lang = line.substr(0, tab);
    const std::string table_name = line.substr(tab + 1);
    if (!lang_to_table_.emplace(lang, table_name).second) {
      throw RuleTableError(map_path + ":" + std::to_string(line_number) +
                           ": duplicate language " + lang);
    }
    if (!tables_.contains(table_name)) {
      tables_.emplace(table_name,
                      ScriptRuleTable::load(
                          tables_dir + "/" + table_name + ".rules",
                          table_name));
    }
  }
  fallback_table_ = "latin";
  if (!tables_.contains(fallback_table_)) {
    tables_.emplace(fallback_table_,
                    ScriptRuleTable::load(
                        tables_dir + "/" + fallback_table_ + ".rules",
                        fallback_table_));
  }
}

bool Romanizer::has_table_for(std::string_view lang) const {
  return lang_to_table_.contains(std::string(lang));
}

const ScriptRuleTable& Romanizer::table(std::string_view name) const {
  const auto it = tables_.find(std::string(name));
  if (it == tables_.end()) {
    throw RuleTableError("no such rule table: " + std::string(name));
  }
  return it->second;
}

RomanizeResult Romanizer::romanize(std::string_view normalized_text,
                                   std::string_view lang,
                                   bool strict) const {
  const auto map_it = lang_to_table_.find(std::string(lang));
  const bool mapped = map_it != lang_to_table_.end();
  const ScriptRuleTable& rules =
      mapped ? tables_.at(map_it->second) : tables_.at(fallback_table_);

  const std::u32string text =
      decompose_hangul(decode_utf8(normalized_text));
  std::string out;
  out.reserve(normalized_text.size());
  std::vector<DroppedChar> drops;

  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::string* target = nullptr;
    const std::size_t matched = rules.match(text, pos, &target);
    if (matched > 0) {
      out += *target;
      pos += matched;
      continue;
    }
    const char32_t cp = text[pos];
    ++pos;
    if (is_universal_char(cp)) {
      out.push_back(static_cast<char>(cp));
      continue;
    }
    if (is_space_like(cp)) {
      out.push_back(' ');
      continue;
    }
    if (!mapped && cp > 0x7F) {
      throw UnsupportedScriptError(
          "no rule table for language \"" + std::string(lang) +
          "\" and text contains " + describe_codepoint(cp));
    }
    if (strict) {
      throw DroppedCharError("cannot map " + describe_codepoint(cp) +
                             " at position " + std::to_string(pos - 1) +
                             " with table " + rules.name());
    }
    drops.push_back(DroppedChar{cp, pos - 1});
  }
  return RomanizeResult{make_roman_text(out), std::move(drops)};
}

}  // namespace uniasr

// include/uniasr/romanizer.hpp
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

#ifndef UNIASR_ROMANIZER_HPP_
#define UNIASR_ROMANIZER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uniasr/roman_text.hpp"

namespace uniasr {

// One transliteration rule: a codepoint sequence and its Latin value.
// Targets may be empty (silent letters).
struct TransliterationRule {
  std::u32string source;
  std::string target;
};

// An ordered rule set for one script. Rules are sorted longest-source
// first at load time; matching is greedy left to right.
class ScriptRuleTable {
 public:
  // Parses "source<TAB>target" lines; "#" starts a comment. Throws
  // RuleTableError on empty sources, duplicate sources, or targets
  // outside the universal alphabet.
  static ScriptRuleTable load(const std::string& path, std::string name);

  static ScriptRuleTable from_rules(std::string name,
                                    std::vector<TransliterationRule> rules);

  const std::string& name() const { return name_; }
  const std::vector<TransliterationRule>& rules() const { return rules_; }

  // Longest match starting at text[pos]; returns matched source length
  // in codepoints (0 when nothing matches) and sets *target.
  std::size_t match(const std::u32string& text, std::size_t pos,
                    const std::string** target) const;

 private:
  std::string name_;
  std::vector<TransliterationRule> rules_;
  std::unordered_map<std::u32string, std::string> by_source_;
  std::size_t max_source_len_ = 0;
};

// One input character the engine could not map. Reported per romanize
// call; strict mode turns any drop into DroppedCharError.
struct DroppedChar {
  char32_t codepoint;
  std::size_t position;  // codepoint index in the (decomposed) input
};

struct RomanizeResult {
  RomanText text;
  std::vector<DroppedChar> drops;
};

class Romanizer {
 public:
  // Loads every table named by <data_dir>/tables/scripts.map plus the
  // tables themselves from <data_dir>/tables/<name>.rules.
  explicit Romanizer(const std::string& data_dir);

  // Transliterates normalized text into the universal alphabet. Greedy
  // longest-match over the table selected for lang; Hangul syllables are
  // decomposed to conjoining jamo first; a-z, space and apostrophe pass
  // through. Unmapped characters are dropped with diagnostics, or raise
  // DroppedCharError when strict is true. Languages without a table
  // entry fall back to Latin pass-through, where any non-Latin unmapped
  // character raises UnsupportedScriptError.
  RomanizeResult romanize(std::string_view normalized_text,
                          std::string_view lang, bool strict = false) const;

  bool has_table_for(std::string_view lang) const;
  const ScriptRuleTable& table(std::string_view name) const;

 private:
  std::unordered_map<std::string, ScriptRuleTable> tables_;
  std::unordered_map<std::string, std::string> lang_to_table_;
  std::string fallback_table_;
};

// Decomposes precomposed Hangul syllables (U+AC00..U+D7A3) into
// conjoining jamo; every other codepoint passes through unchanged.
std::u32string decompose_hangul(std::u32string_view text);

}  // namespace uniasr

#endif  // UNIASR_ROMANIZER_HPP_

// src/vocabulary.cpp
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

#include <fstream>
#include <unordered_set>
#include <utility>

#include "uniasr/ctc.hpp"
#include "uniasr/error.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

namespace {

constexpr const char* kBlankToken = "<b>";
constexpr const char* kSeparatorToken = "|";

}  // namespace

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  if (tokens.empty() || tokens[0] != kBlankToken) {
    throw VocabularyError("token 0 must be the blank token \"<b>\"");
  }
  Vocabulary vocab;
  std::unordered_set<std::string> unique;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    if (!unique.insert(token).second) {
      throw VocabularyError("duplicate token \"" + token + "\"");
    }
    if (token == kSeparatorToken) {
      vocab.separator_index_ = static_cast<int32_t>(i);
      continue;
    }
    if (i == 0) continue;
    const std::u32string chars = decode_utf8(token);
    if (chars.size() != 1 || !is_universal_char(chars[0])) {
      throw VocabularyError(
          "token \"" + token +
          "\" is not a single universal-alphabet character");
    }
  }
  if (vocab.separator_index_ < 0) {
    throw VocabularyError("separator token \"|\" missing");
  }
  vocab.tokens_ = std::move(tokens);
  return vocab;
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VocabularyError("cannot open vocabulary: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    tokens.push_back(line);
  }
  try {
    return from_tokens(std::move(tokens));
  } catch (const VocabularyError& e) {
    throw VocabularyError(path + ": " + e.what());
  }
}

Vocabulary Vocabulary::universal() {
  std::vector<std::string> tokens = {kBlankToken, kSeparatorToken};
  for (char c = 'a'; c <= 'z'; ++c) tokens.emplace_back(1, c);
  tokens.emplace_back("'");
  return from_tokens(std::move(tokens));
}

const std::string& Vocabulary::token(int32_t index) const {
  if (index < 0 || index >= size()) {
    throw VocabularyError("token index " + std::to_string(index) +
                          " out of range for vocabulary of size " +
                          std::to_string(size()));
  }
  return tokens_[static_cast<std::size_t>(index)];
}

int32_t Vocabulary::index_for_char(char32_t c) const {
  if (c == U' ') return separator_index_;
  std::string needle;
  append_utf8(&needle, c);
  for (std::size_t i = 1; i < tokens_.size(); ++i) {
    if (static_cast<int32_t>(i) != separator_index_ && tokens_[i] == needle) {
      return static_cast<int32_t>(i);
    }
  }
  throw VocabularyError("no token for character \"" + needle + "\"");
}

char Vocabulary::output_char(int32_t index) const {
  const std::string& tok = token(index);
  if (index == kBlankIndex) {
    throw VocabularyError("blank token has no output character");
  }
  if (index == separator_index_) return ' ';
  return tok[0];
}

}  // namespace uniasr

// src/roman_text.cpp
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

#include "uniasr/roman_text.hpp"

#include "uniasr/error.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

RomanText make_roman_text(std::string_view raw) {
  std::string text = collapse_whitespace(raw);
  for (unsigned char c : text) {
    if (!is_universal_char(c)) {
      std::string shown;
      append_utf8(&shown, c < 0x80 ? c : 0xFFFD);
      throw RomanTextError("character '" + shown +
                           "' outside the universal alphabet in \"" + text +
                           "\"");
    }
  }
  return RomanText{std::move(text)};
}

bool is_valid_roman_text(std::string_view text) {
  if (!text.empty() && (text.front() == ' ' || text.back() == ' ')) {
    return false;
  }
  bool prev_space = false;
  for (unsigned char c : text) {
    if (!is_universal_char(c)) return false;
    const bool space = c == ' ';
    if (space && prev_space) return false;
    prev_space = space;
  }
  return true;
}

}  // namespace uniasr

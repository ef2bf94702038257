// include/uniasr/roman_text.hpp
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

#ifndef UNIASR_ROMAN_TEXT_HPP_
#define UNIASR_ROMAN_TEXT_HPP_

#include <string>
#include <string_view>

namespace uniasr {

// The universal alphabet shared by every stage of the pipeline:
// lowercase ASCII letters, space, apostrophe.
inline bool is_universal_char(char32_t cp) {
  return (cp >= U'a' && cp <= U'z') || cp == U' ' || cp == U'\'';
}

// Text closed over the universal alphabet, with no leading/trailing
// space and no space runs. Construct via make_roman_text.
struct RomanText {
  std::string text;

  bool operator==(const RomanText&) const = default;
};

// Collapses whitespace then enforces the alphabet closure. Throws
// RomanTextError if any remaining character falls outside the alphabet.
RomanText make_roman_text(std::string_view raw);

// True iff text already satisfies every RomanText invariant.
bool is_valid_roman_text(std::string_view text);

}  // namespace uniasr

#endif  // UNIASR_ROMAN_TEXT_HPP_

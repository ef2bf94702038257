// src/unicode.cpp
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

#include "uniasr/unicode.hpp"

#include <unicode/errorcode.h>
#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <stdexcept>

namespace uniasr {

namespace {

const icu::Normalizer2& nfkc() {
  icu::ErrorCode status;
  const icu::Normalizer2* inst = icu::Normalizer2::getNFKCInstance(status);
  if (status.isFailure() || inst == nullptr) {
    throw std::runtime_error("ICU NFKC normalizer unavailable");
  }
  return *inst;
}

}  // namespace

std::string normalize_text(std::string_view raw) {
  // fromUTF8 substitutes malformed sequences with U+FFFD, which keeps the
  // function total over arbitrary bytes.
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  icu::ErrorCode status;
  icu::UnicodeString normalized = nfkc().normalize(text, status);
  if (status.isFailure()) {
    throw std::runtime_error("NFKC normalization failed");
  }
  normalized.toLower(icu::Locale::getRoot());
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool is_decimal_digit(char32_t cp) {
  return u_charType(static_cast<UChar32>(cp)) == U_DECIMAL_DIGIT_NUMBER;
}

}  // namespace uniasr

// include/uniasr/unicode.hpp
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

#ifndef UNIASR_UNICODE_HPP_
#define UNIASR_UNICODE_HPP_

#include <string>
#include <string_view>

namespace uniasr {

// NFKC-normalizes then lowercases with the root locale. Total: invalid
// byte sequences are replaced with U+FFFD before normalization, so no
// input raises. Idempotent: normalize_text(normalize_text(s)) ==
// normalize_text(s).
std::string normalize_text(std::string_view raw);

// True iff the codepoint has general category Nd.
bool is_decimal_digit(char32_t cp);

}  // namespace uniasr

#endif  // UNIASR_UNICODE_HPP_

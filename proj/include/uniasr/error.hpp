// include/uniasr/error.hpp
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

#ifndef UNIASR_ERROR_HPP_
#define UNIASR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace uniasr {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Manifest parsing: malformed line, duplicate id, unknown language code.
class ManifestError : public Error {
 public:
  using Error::Error;
};

class UnknownLanguageError : public Error {
 public:
  using Error::Error;
};

// Rule table loading and validation.
class RuleTableError : public Error {
 public:
  using Error::Error;
};

// No rule table covers the language's script and the text is non-Latin.
class UnsupportedScriptError : public Error {
 public:
  using Error::Error;
};

// Strict-mode romanization: an unmapped character would have been dropped.
class DroppedCharError : public Error {
 public:
  using Error::Error;
};

// Text that violates the universal-alphabet closure of Romanized output.
class RomanTextError : public Error {
 public:
  using Error::Error;
};

class VocabularyError : public Error {
 public:
  using Error::Error;
};

// LEM1 emission file problems: bad magic, truncation, dimension mismatch,
// non-normalized rows, NaN/Inf.
class EmissionError : public Error {
 public:
  using Error::Error;
};

class PromptError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MetricsError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace uniasr

#endif  // UNIASR_ERROR_HPP_

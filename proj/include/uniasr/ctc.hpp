// include/uniasr/ctc.hpp
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

#ifndef UNIASR_CTC_HPP_
#define UNIASR_CTC_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "uniasr/roman_text.hpp"

namespace uniasr {

// Frame posteriors as natural-log probabilities, one row per frame.
using LogProbMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// The decoder's token inventory. Index 0 is always the CTC blank; the
// separator token renders as a space on output; every other token is a
// single character of the universal alphabet.
class Vocabulary {
 public:
  static constexpr int32_t kBlankIndex = 0;

  // One token per line; line 0 must be "<b>", the separator is "|".
  static Vocabulary load(const std::string& path);

  // The standard 29-token inventory: blank, separator, a-z, apostrophe.
  static Vocabulary universal();

  static Vocabulary from_tokens(std::vector<std::string> tokens);

  int32_t size() const { return static_cast<int32_t>(tokens_.size()); }
  const std::string& token(int32_t index) const;
  int32_t separator_index() const { return separator_index_; }

  // Maps an output character back to its token index; space maps to the
  // separator. Throws VocabularyError for characters with no token.
  int32_t index_for_char(char32_t c) const;

  // The output character for a non-blank token (separator becomes ' ').
  char output_char(int32_t index) const;

  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  int32_t separator_index_ = -1;
};

struct EmissionMatrix {
  LogProbMatrix logp;

  int32_t frames() const { return static_cast<int32_t>(logp.rows()); }
  int32_t vocab_size() const { return static_cast<int32_t>(logp.cols()); }
};

// Throws EmissionError unless every row exponentiates and sums to 1
// within 1e-3, entries are finite, and (when vocab is given) the width
// matches the vocabulary.
void validate_emissions(const EmissionMatrix& em,
                        const Vocabulary* vocab = nullptr);

// LEM1 container: magic "LEM1", u32 frame count, u32 vocab size, then
// frames*vocab float32 natural-log probabilities, row-major, all fields
// little-endian.
EmissionMatrix read_emissions(const std::string& path,
                              const Vocabulary& vocab);
void write_emissions(const std::string& path, const EmissionMatrix& em);

// CTC labeling collapse: merge adjacent repeats, delete blanks, then
// render tokens (separator as space). The result is raw; it may carry
// leading/trailing/double spaces from separator runs.
std::string collapse(const std::vector<int32_t>& path,
                     const Vocabulary& vocab);

struct DecodeResult {
  RomanText text;
  double log_score = 0.0;
  int32_t n_frames = 0;

  bool operator==(const DecodeResult&) const = default;
};

// Best-path decoding: per-frame argmax (lowest index wins ties), then
// collapse. log_score is the sum of the winning per-frame log-probs.
DecodeResult greedy_decode(const EmissionMatrix& em, const Vocabulary& vocab);

// Lexicon-free prefix beam search maximizing the total probability mass
// of all alignment paths that collapse to the labeling. Identical
// prefixes merge by log-sum-exp; the beam keeps the top beam_size
// prefixes by total score with lexicographic tie-breaking, which makes
// the result deterministic and the winning score non-decreasing in
// beam_size. No lexicon or language model takes part in scoring.
DecodeResult beam_decode(const EmissionMatrix& em, const Vocabulary& vocab,
                         int32_t beam_size = 100);

}  // namespace uniasr

#endif  // UNIASR_CTC_HPP_
